#include "acms/nomizu_checks.hpp"

#include "acms/errors.hpp"

#include <cmath>

namespace acms {

std::array<double, 9> verify_connection_table(const CircleBundle& bundle, const NomizuConnection& conn) {
    std::array<double, 9> r{};
    const int d = bundle.dim();
    auto e = [d](int i) { return Eigen::VectorXd::Unit(d, i); };
    const Eigen::VectorXd x0 = e(0);
    r[0] = conn.lambda(x0, x0).norm();
    for (int p = 0; p < bundle.num_roots(); ++p) {
        const int g = bundle.frame()[bundle.x_index(p)].class_index;
        const double c = bundle.c_gamma(g);
        const double a = bundle.a_gamma(g);
        const Eigen::VectorXd f = e(bundle.x_index(p));
        const Eigen::VectorXd phi = e(bundle.y_index(p));
        const std::array<double, 9> v{
            0.0,
            (conn.lambda(x0, f) - (c - a / 2) * phi).norm(),
            (conn.lambda(f, x0) + (a / 2) * phi).norm(),
            (conn.lambda(x0, phi) - (-c + a / 2) * f).norm(),
            (conn.lambda(phi, x0) - (a / 2) * f).norm(),
            (conn.lambda(f, phi) - (a / 2) * x0).norm(),
            (conn.lambda(phi, f) + (a / 2) * x0).norm(),
            conn.lambda(f, f).norm(),
            conn.lambda(phi, phi).norm(),
        };
        for (int k = 1; k < 9; ++k) r[k] = std::max(r[k], v[k]);
    }
    return r;
}

std::array<double, 9> verify_connection_table(const CircleBundle& bundle) {
    return verify_connection_table(bundle, NomizuConnection(bundle.total_space()));
}

double reeb_u_residual(const CircleBundle& bundle, const NomizuConnection& conn) {
    const int d = bundle.dim();
    double worst = 0.0;
    for (int p = 0; p < bundle.num_roots(); ++p) {
        const int g = bundle.frame()[bundle.x_index(p)].class_index;
        const Eigen::VectorXd u = conn.u(Eigen::VectorXd::Unit(d, 0), Eigen::VectorXd::Unit(d, bundle.x_index(p)));
        const Eigen::VectorXd expect =
            0.5 * (bundle.c_gamma(g) - bundle.a_gamma(g)) * Eigen::VectorXd::Unit(d, bundle.y_index(p));
        worst = std::max(worst, (u - expect).norm());
    }
    return worst;
}

ONeillResiduals oneill_check(const NomizuConnection& total, const NomizuConnection& base) {
    const int d = total.dim();
    if (base.dim() != d - 1) throw DomainError("base and total spaces have incompatible dimensions");
    ONeillResiduals out;
    auto e = [d](int i) { return Eigen::VectorXd::Unit(d, i); };
    const Eigen::VectorXd xi = e(0);

    // O'Neill tensor A_E F = V nabla_{HE} HF + H nabla_{HE} VF, with V the projector onto xi.
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);
    h(0, 0) = 0.0;
    const Eigen::MatrixXd v = Eigen::MatrixXd::Identity(d, d) - h;
    InvariantTensor a(d, {Slot::Tangent, Slot::Tangent}, ValueKind::Tangent);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            a.at({i, j}) = v * total.lambda(h * e(i), h * e(j)) + h * total.lambda(h * e(i), v * e(j));
    const InvariantTensor da = TensorCalculus(total).cov_deriv(a);
    // g(nabla_X Y, xi) for horizontal X, Y.
    auto ax = [&](int x, int y) { return total.l(x, y, 0); };

    std::vector<Eigen::MatrixXd> rt(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rt[i * d + j] = total.curvature_op(e(i), e(j));
    const int m = d - 1;
    std::vector<Eigen::MatrixXd> rb(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rb[i * m + j] = base.curvature_op(Eigen::VectorXd::Unit(m, i), Eigen::VectorXd::Unit(m, j));

    for (int x = 1; x < d; ++x)
        for (int y = 1; y < d; ++y) {
            const Eigen::MatrixXd& r = rt[x * d + y];
            const Eigen::VectorXd lx = total.lambda(e(x), xi);
            const Eigen::VectorXd ly = total.lambda(e(y), xi);
            for (int z = 1; z < d; ++z) {
                for (int w = 1; w < d; ++w) {
                    const double rhs = rb[(x - 1) * m + (y - 1)](w - 1, z - 1) + 2 * ax(x, y) * ax(z, w) -
                                       ax(y, z) * ax(x, w) - ax(z, x) * ax(y, w);
                    out.horizontal = std::max(out.horizontal, std::abs(r(w, z) - rhs));
                }
                // Frame fields have constant connection coefficients, so Z(g(nabla_X Y, xi)) = 0.
                const double frame_form =
                    total.lambda(e(z), e(x)).dot(ly) - total.lambda(e(z), e(y)).dot(lx);
                const double tensor_form = -da.at({z, x, y})(0);
                out.mixed = std::max({out.mixed, std::abs(r(0, z) - frame_form), std::abs(r(0, z) - tensor_form)});
            }
            const double lhs = rt[x * d + 0](0, y);
            const double rhs = -da.at({0, x, y})(0) - a.at({x, 0}).dot(a.at({y, 0}));
            out.vertical = std::max(out.vertical, std::abs(lhs - rhs));
            const double printed = -total.lambda(xi, total.lambda(e(x), e(y)))(0) +
                                   total.lambda(xi, e(x)).dot(ly) - total.lambda(xi, e(y)).dot(lx);
            out.vertical_as_printed = std::max(out.vertical_as_printed, std::abs(lhs - printed));
        }
    return out;
}

double killing_residual(const NomizuConnection& conn) {
    const int d = conn.dim();
    // g(L(e_a, X0), e_b) + g(e_a, L(e_b, X0))
    Eigen::MatrixXd m(d, d);
    for (int a = 0; a < d; ++a) m.col(a) = conn.lambda(Eigen::VectorXd::Unit(d, a), Eigen::VectorXd::Unit(d, 0));
    return (m + m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace acms
