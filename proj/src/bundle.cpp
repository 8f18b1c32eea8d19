#include "acms/bundle.hpp"

#include "acms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace acms {

std::string FrameVector::label() const {
    switch (kind) {
        case Kind::Reeb: return "X0";
        case Kind::X: return "X'(" + root.label() + ")";
        case Kind::Y: return "Y'(" + root.label() + ")";
    }
    return "?";
}

AlgebraElement auto_x0(const FlagStructure& flag) {
    const CartanVector h = flag.h_rho();
    const AlgebraElement v = flag.model().i_cartan(h);
    const double nrm = std::sqrt(flag.model().b_form(v, v));
    if (!(nrm > 1e-12)) throw DegenerateError("h_rho vanishes; cannot choose X_0 automatically");
    return -v / nrm;
}

CircleBundle build_bundle(const FlagStructure& flag, const BundleOptions& options) {
    const CompactLieModel& model = flag.model();
    const InvariantForm& b = model.form();
    const int n = model.n();
    CircleBundle out(flag);

    AlgebraElement x0 = options.x0 ? *options.x0 : auto_x0(flag);
    if (x0.rows() != n || x0.cols() != n) throw DomainError("X_0 has the wrong matrix size");
    if (x0.cwiseAbs().maxCoeff() <= 1e-12) throw DegenerateError("X_0 is the zero vector");
    if (!model.in_algebra(x0, 1e-9) || !flag.z().contains(x0, 1e-9)) throw DomainError("X_0 is not in z");

    if (!options.ztilde.empty()) {
        for (const AlgebraElement& v : options.ztilde)
            if (!flag.z().contains(v, 1e-9)) throw DomainError("z~ spanning vector is not in z");
        out.ztilde_ = Subspace::span(b, n, options.ztilde);
        if (out.ztilde_.dim() != flag.z().dim() - 1)
            throw DomainError("z~ must have codimension one in z");
        const AlgebraElement corrected = x0 - out.ztilde_.project(x0);
        if ((corrected - x0).cwiseAbs().maxCoeff() > 1e-9)
            out.warnings_.push_back("X_0 was not orthogonal to z~ and has been corrected");
        x0 = corrected;
        if (x0.cwiseAbs().maxCoeff() <= 1e-12) throw DegenerateError("X_0 lies in z~");
    }
    x0 /= std::sqrt(b(x0, x0));
    out.x0_ = x0;
    out.y0_ = model.cartan_part(x0);  // -i X_0 = diag(Im X_0)

    const Subspace line = Subspace::span(b, n, {x0});
    if (options.ztilde.empty()) out.ztilde_ = line.complement_in(flag.z());
    out.ktilde_ = line.complement_in(flag.k());

    out.frame_.push_back(FrameVector{FrameVector::Kind::Reeb, -1, Root{}, x0});
    std::vector<AlgebraElement> total_frame{x0};
    std::vector<AlgebraElement> base_frame;
    const auto& mv = flag.m_vectors();
    for (const MVector& v : mv) {
        const AlgebraElement w = v.value / std::sqrt(flag.kappa(v.class_index));
        out.frame_.push_back(
            FrameVector{v.is_y ? FrameVector::Kind::Y : FrameVector::Kind::X, v.class_index, v.root, w});
        total_frame.push_back(w);
        base_frame.push_back(w);
    }
    for (int g = 0; g < flag.num_classes(); ++g) out.c_.push_back(flag.gamma_value(g, out.y0_));

    const int d = static_cast<int>(out.frame_.size());
    out.theta_ = Eigen::MatrixXd::Zero(d, d);
    for (int p = 0; p < out.num_roots(); ++p) {
        const int e = flag.epsilon(mv[2 * p].class_index);
        out.theta_(out.y_index(p), out.x_index(p)) = e;
        out.theta_(out.x_index(p), out.y_index(p)) = -e;
    }
    out.total_ = ReductiveSpace(b, out.ktilde_, total_frame);
    out.base_ = ReductiveSpace(b, flag.k(), base_frame);
    if (out.total_.reductive_residual() > 1e-8) throw DegenerateError("k~ + m~ is not reductive");
    return out;
}

Eigen::MatrixXd CircleBundle::contact_projector() const {
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(dim(), dim());
    p(0, 0) = 0.0;
    return p;
}

double AcmsResiduals::max() const {
    return std::max({theta_squared, compatibility, eta_xi, theta_xi, eta_theta, isotropy_invariance});
}

AcmsResiduals acms_axioms_check(const CircleBundle& bundle) {
    AcmsResiduals r;
    const int d = bundle.dim();
    const Eigen::MatrixXd& t = bundle.theta();
    const Eigen::VectorXd xi = bundle.xi();
    const Eigen::VectorXd eta = bundle.eta();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    r.theta_squared = (t * t + id - xi * eta.transpose()).cwiseAbs().maxCoeff();
    r.compatibility = (t.transpose() * t - id + eta * eta.transpose()).cwiseAbs().maxCoeff();
    r.eta_xi = std::abs(eta.dot(xi) - 1.0);
    r.theta_xi = (t * xi).cwiseAbs().maxCoeff();
    r.eta_theta = (eta.transpose() * t).cwiseAbs().maxCoeff();
    for (const AlgebraElement& k : bundle.ktilde().basis()) {
        const Eigen::MatrixXd m = bundle.total_space().ad_on_horizontal(k);
        r.isotropy_invariance = std::max(r.isotropy_invariance, (m + m.transpose()).cwiseAbs().maxCoeff());
        r.isotropy_invariance = std::max(r.isotropy_invariance, (m * t - t * m).cwiseAbs().maxCoeff());
    }
    return r;
}

double sigma_form(const CircleBundle& bundle, const AlgebraElement& u, const AlgebraElement& v) {
    return -bundle.flag().model().b_form(bundle.x0(), bracket(u, v));
}

double sigma_j_invariance(const CircleBundle& bundle) {
    const FlagStructure& f = bundle.flag();
    double worst = 0.0;
    for (const MVector& u : f.m_vectors())
        for (const MVector& v : f.m_vectors()) {
            const double lhs = sigma_form(bundle, f.apply_j(u.value), f.apply_j(v.value));
            worst = std::max(worst, std::abs(lhs - sigma_form(bundle, u.value, v.value)));
        }
    return worst;
}

CSasakiTest c_sasaki_test(const CircleBundle& bundle, double tol) {
    CSasakiTest out;
    const FlagStructure& f = bundle.flag();
    const KahlerVectorResult kv = kahler_vector(f, tol);
    if (!kv.ok) return out;
    const CartanVector neg = -bundle.y0();
    const double c = f.model().pairing(neg, kv.h) / f.model().pairing(kv.h, kv.h);
    out.residual = (neg - c * kv.h).cwiseAbs().maxCoeff();
    if (out.residual >= tol || !(c > tol)) return out;
    for (int g = 0; g < f.num_classes(); ++g)
        if (std::abs(bundle.c_gamma(g) + c * f.kappa(g)) >= tol) return out;
    out.is_c_sasakian = true;
    out.c = c;
    return out;
}

GenericityTest genericity_test(const CircleBundle& bundle) {
    std::vector<AlgebraElement> vs;
    for (const FrameVector& v : bundle.frame()) vs.push_back(v.value);
    const Subspace mt = Subspace::span(bundle.flag().model().form(), bundle.flag().n(), vs);
    const Subspace c = centralizer_in(mt, bundle.ktilde());
    GenericityTest out;
    out.invariant_field_dim = c.dim();
    out.generic = c.dim() == 1;
    return out;
}

CartanVector aloff_wallach_seed() {
    CartanVector s(3);
    s << 1.0, -1.0, 0.0;
    return s;
}

FlagStructure aloff_wallach_flag() { return full_flag(3).with_ordering(aloff_wallach_seed()); }

AlgebraElement aloff_wallach_x0(int k, int l) {
    if (k == 0 && l == 0) throw DomainError("Aloff-Wallach parameters (k,l) must not both vanish");
    const double gamma = std::sqrt(static_cast<double>(k * k + l * l + k * l));
    CartanVector h(3);
    h << 2.0 * l + k, -(l + 2.0 * k), -static_cast<double>(l) + k;
    return -CompactLieModel(3).i_cartan(h) / (gamma * std::sqrt(6.0));
}

CircleBundle aloff_wallach(int k, int l, const InvariantMetric& kappa) {
    BundleOptions opt;
    opt.x0 = aloff_wallach_x0(k, l);
    return build_bundle(aloff_wallach_flag().with_metric(kappa), opt);
}

FlagStructure hopf_flag(int m) {
    if (m < 1) throw DomainError("Hopf preset needs m >= 1");
    CompactLieModel model(m + 1);
    CartanVector h = CartanVector::Constant(m + 1, -1.0);
    h(0) = m;
    return build_flag(model, {h}).with_ordering(h);
}

CircleBundle hopf(int m, double ke_scale) {
    const FlagStructure f = hopf_flag(m);
    return build_bundle(f.with_metric(kahler_einstein_metric(f, ke_scale)));
}

}  // namespace acms
