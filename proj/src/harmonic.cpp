#include "acms/harmonic.hpp"

#include <algorithm>
#include <cmath>

namespace acms {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a * b - b * a; }

// r(A,B)Z = g(B,Z)A - g(A,Z)B.
Eigen::MatrixXd r_op(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a * b.transpose() - b * a.transpose();
}

}  // namespace

HarmonicContext::HarmonicContext(const CircleBundle& bundle)
    : bundle_(bundle),
      conn_(bundle.total_space()),
      p_(bundle.contact_projector()),
      full_(conn_),
      contact_(conn_, p_) {
    const InvariantTensor theta = InvariantTensor::endomorphism(bundle_.theta());
    const InvariantTensor jbar =
        InvariantTensor::endomorphism(p_ * bundle_.theta() * p_, Slot::Contact, ValueKind::Contact);
    dtheta_ = full_.cov_deriv(theta);
    djbar_ = contact_.cov_deriv(jbar);
    ddjbar_ = contact_.cov_deriv(djbar_);
    const InvariantTensor xi = InvariantTensor::vector_field(bundle_.xi());
    dxi_ = full_.cov_deriv(xi);
    ddxi_ = full_.cov_deriv(dxi_);
}

Eigen::MatrixXd HarmonicContext::nabla_theta_along(const Eigen::VectorXd& z) const {
    return dtheta_.contract_first(z).as_matrix();
}

Eigen::MatrixXd HarmonicContext::nabla_jbar_along(const Eigen::VectorXd& z) const {
    return djbar_.contract_first(z).as_matrix();
}

Eigen::VectorXd HarmonicContext::nabla_xi_along(const Eigen::VectorXd& z) const {
    return dxi_.contract_first(z).at({});
}

Eigen::MatrixXd HarmonicContext::rbar(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return p_ * conn_.curvature_op(x, y) * p_ + r_op(nabla_xi_along(x), nabla_xi_along(y));
}

Eigen::MatrixXd HarmonicContext::rbar_direct(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    const Eigen::MatrixXd lx = p_ * conn_.op(x) * p_;
    const Eigen::MatrixXd ly = p_ * conn_.op(y) * p_;
    const Eigen::VectorXd br = conn_.space().bracket_h(x, y);
    return lx * ly - ly * lx - p_ * conn_.op(br) * p_ - p_ * conn_.space().isotropy_action(x, y) * p_;
}

ClosedFormCoefficients closed_forms(const CircleBundle& bundle) {
    ClosedFormCoefficients out;
    const FlagStructure& f = bundle.flag();
    for (int g = 0; g < f.num_classes(); ++g) {
        const double a = bundle.a_gamma(g);
        out.delta_theta += f.epsilon(g) * f.n_gamma(g) * a;
        out.rough_laplacian += 0.5 * f.n_gamma(g) * a * a;
    }
    return out;
}

namespace {

ReebQuantity reeb_quantity(const Eigen::VectorXd& v, double closed) {
    ReebQuantity q;
    q.vector = v;
    q.closed_form = closed;
    Eigen::VectorXd d = v;
    d(0) -= closed;
    q.residual = d.norm();
    Eigen::VectorXd perp = v;
    perp(0) = 0.0;
    q.parallel_residual = perp.norm();
    return q;
}

}  // namespace

ReebQuantity delta_theta(const HarmonicContext& ctx) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ctx.dim());
    for (int i = 0; i < ctx.dim(); ++i) v += ctx.nabla_theta().at({i, i});
    return reeb_quantity(v, closed_forms(ctx.bundle()).delta_theta);
}

RoughLaplacian rough_laplacian_xi(const HarmonicContext& ctx, double tol) {
    RoughLaplacian out;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ctx.dim());
    for (int i = 0; i < ctx.dim(); ++i) v -= ctx.nabla2_xi().at({i, i});
    out.value = reeb_quantity(v, closed_forms(ctx.bundle()).rough_laplacian);
    for (int i = 0; i < ctx.dim(); ++i) out.grad_norm_sq += ctx.nabla_xi().at({i}).squaredNorm();
    Eigen::VectorXd d = v;
    d(0) -= out.grad_norm_sq;
    out.factor_residual = d.norm();
    out.harmonic_unit_field = out.factor_residual < tol;
    return out;
}

double NormalityResiduals::max_asserted() const {
    return std::max({integrability, eq1, eq2, eq3, eq4, eq5, nijenhuis, nijenhuis_algebraic, jbar_relation});
}

NormalityResiduals normality_check(const HarmonicContext& ctx) {
    NormalityResiduals r;
    const int d = ctx.dim();
    const Eigen::MatrixXd& th = ctx.theta();
    const Eigen::VectorXd xi = ctx.e(0);
    const ReductiveSpace& sp = ctx.conn().space();
    std::vector<Eigen::MatrixXd> nt(d), nj(d);
    for (int i = 0; i < d; ++i) {
        nt[i] = ctx.nabla_theta_along(ctx.e(i));
        nj[i] = ctx.nabla_jbar_along(ctx.e(i));
    }
    auto nt_along = [&](const Eigen::VectorXd& z) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < d; ++i) m += z(i) * nt[i];
        return m;
    };
    auto nj_along = [&](const Eigen::VectorXd& z) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < d; ++i) m += z(i) * nj[i];
        return m;
    };
    const Eigen::MatrixXd th2 = th * th;
    const Eigen::VectorXd nxx = ctx.nabla_xi_along(xi);
    r.eq5 = nxx.norm();
    for (int a = 0; a < d; ++a) {
        const Eigen::VectorXd x = ctx.e(a);
        const Eigen::VectorXd tx = th * x;
        const Eigen::VectorXd nx = ctx.nabla_xi_along(x);
        const Eigen::VectorXd ntx = ctx.nabla_xi_along(tx);
        r.eq4 = std::max(r.eq4, (nx + th * ntx).norm());
        for (int b = 0; b < d; ++b) {
            const Eigen::VectorXd y = ctx.e(b);
            const Eigen::VectorXd ty = th * y;
            const Eigen::VectorXd p1 = nt[a] * y - nt_along(tx) * ty + y(0) * ntx;
            r.integrability = std::max(r.integrability, p1.norm());
            r.eq1 = std::max(r.eq1, std::abs(nx.dot(y) + (nt_along(tx) * y)(0)));
            if (a == 0) {
                r.eq2 = std::max(r.eq2, std::abs((nt[0] * y)(0)));
                r.eq3 = std::max(r.eq3, (th * (nt[0] * y) - y.dot(nxx) * xi).norm());
            }
            const Eigen::VectorXd ny = ctx.nabla_xi_along(y);
            const Eigen::VectorXd nij = nt_along(tx) * y - nt_along(ty) * x - th * (nt[a] * y) + th * (nt[b] * x);
            const double two_deta = nx.dot(y) - ny.dot(x);
            r.nijenhuis = std::max(r.nijenhuis, (nij + two_deta * xi).norm());

            const Eigen::VectorXd alg = th2 * sp.bracket_h(x, y) + sp.bracket_h(tx, ty) -
                                        th * sp.bracket_h(tx, y) - th * sp.bracket_h(x, ty);
            const double br0 = sp.bracket_h(x, y)(0);  // B(X_0, [X,Y]_m~)
            r.nijenhuis_algebraic = std::max(r.nijenhuis_algebraic, (alg - br0 * xi).norm());
            r.nijenhuis_unhalved = std::max(r.nijenhuis_unhalved, (alg - 2.0 * br0 * xi).norm());

            if (a > 0 && b > 0) {
                const Eigen::VectorXd c1 = nj_along(tx) * ty - nj[a] * y;
                r.jbar_relation = std::max(r.jbar_relation, c1.norm());
            }
        }
    }
    return r;
}

namespace {

// Sum over the contact frame of [Rbar(F_i, J F_i), J].
Eigen::MatrixXd rbar_trace(const HarmonicContext& ctx) {
    const int d = ctx.dim();
    const Eigen::MatrixXd& th = ctx.theta();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) s += commutator(ctx.rbar(ctx.e(i), th * ctx.e(i)), th);
    return s;
}

Eigen::VectorXd lee_field(const HarmonicContext& ctx) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ctx.dim());
    for (int i = 1; i < ctx.dim(); ++i) v += ctx.nabla_jbar().at({i, i});
    return v;
}

}  // namespace

Hse1Residuals hse1_check(const HarmonicContext& ctx, double normal_tol) {
    Hse1Residuals r;
    const int d = ctx.dim();
    const Eigen::MatrixXd& th = ctx.theta();
    r.precondition_met = normality_check(ctx).normal(normal_tol);

    const Eigen::MatrixXd sum_r = rbar_trace(ctx);
    const Eigen::VectorXd lee = lee_field(ctx);
    const Eigen::MatrixXd n_lee = ctx.nabla_jbar_along(lee);
    r.curvature_form = max_abs(sum_r + 2.0 * n_lee);

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(d, d);
    for (int x = 0; x < d; ++x)
        for (int i = 0; i < d; ++i) lap.col(x) -= ctx.nabla2_jbar().at({i, i, x});
    const Eigen::MatrixXd intro = commutator(lap, th);
    r.intro_form = max_abs(intro);
    r.proof_identity = max_abs(intro - sum_r - 2.0 * n_lee);

    Eigen::MatrixXd l33 = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) {
        const Eigen::VectorXd v = ctx.nabla_jbar_along(th * ctx.e(i)) * ctx.e(i);
        l33 += ctx.nabla_jbar_along(v);
    }
    r.jlee_identity = max_abs(l33 - ctx.nabla_jbar_along(th * lee));

    const Eigen::VectorXd dt = delta_theta(ctx).vector;
    r.lee_vs_delta_theta = (lee - ctx.projector() * dt).norm();

    Eigen::MatrixXd eqr = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i)
        eqr += commutator(r_op(ctx.nabla_xi_along(ctx.e(i)), ctx.nabla_xi_along(th * ctx.e(i))), th);
    r.eqr = max_abs(eqr);

    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            r.rbar_consistency =
                std::max(r.rbar_consistency, max_abs(ctx.rbar(ctx.e(a), ctx.e(b)) - ctx.rbar_direct(ctx.e(a), ctx.e(b))));
    return r;
}

Hse2Residuals hse2_check(const HarmonicContext& ctx, double normal_tol) {
    Hse2Residuals r;
    const int d = ctx.dim();
    const Eigen::MatrixXd& th = ctx.theta();
    const Eigen::VectorXd xi = ctx.e(0);
    r.precondition_met = normality_check(ctx).normal(normal_tol);

    const RoughLaplacian lap = rough_laplacian_xi(ctx);
    const Eigen::VectorXd lhs = lap.value.vector - lap.grad_norm_sq * xi;

    Eigen::VectorXd rhs32 = Eigen::VectorXd::Zero(d);
    for (int i = 1; i < d; ++i) {
        const Eigen::MatrixXd rr = ctx.conn().curvature_op(ctx.e(i), th * ctx.e(i));
        rhs32 += 0.5 * commutator(rr, th) * xi;
    }
    rhs32 += ctx.nabla_theta_along(delta_theta(ctx).vector) * xi;

    Eigen::VectorXd tr = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) tr += ctx.nabla_jbar_along(ctx.e(i)) * ctx.nabla_xi_along(ctx.e(i));
    const Eigen::VectorXd rhs_intro = -0.5 * th * tr;

    r.curvature_form = (lhs - rhs32).norm();
    r.intro_form = (lhs - rhs_intro).norm();
    r.equality_of_forms = (rhs32 - rhs_intro).norm();
    return r;
}

HmeResiduals hme_check(const HarmonicContext& ctx) {
    HmeResiduals r;
    const int d = ctx.dim();
    const Eigen::MatrixXd& th = ctx.theta();
    std::vector<Eigen::MatrixXd> jn(d);
    std::vector<Eigen::VectorXd> nxi(d);
    for (int i = 0; i < d; ++i) {
        jn[i] = th * ctx.nabla_jbar_along(ctx.e(i));
        nxi[i] = ctx.nabla_xi_along(ctx.e(i));
    }
    for (int x = 0; x < d; ++x) {
        double t1 = 0.0, t2 = 0.0;
        for (int i = 0; i < d; ++i) {
            const Eigen::MatrixXd rr = ctx.conn().curvature_op(ctx.e(i), ctx.e(x));
            for (int j = 1; j < d; ++j) t1 += jn[i].col(j).dot(rr.col(j));
            t2 += nxi[i].dot(rr.col(0));
        }
        const double v = std::abs(0.25 * t1 + t2);
        if (x == 0) r.xi_component = v;
        r.residual = std::max(r.residual, v);
    }
    return r;
}

Eigen::VectorXd s_of(const HarmonicContext& ctx, const Eigen::VectorXd& v) {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(ctx.dim());
    for (int i = 0; i < ctx.dim(); ++i) {
        const Eigen::VectorXd nv = ctx.conn().lambda(ctx.e(i), v);
        s += ctx.conn().curvature(nv, v, ctx.e(i));
    }
    return s;
}

Eigen::VectorXd s_of_xi(const HarmonicContext& ctx) { return s_of(ctx, ctx.e(0)); }

HarmonicityReport verdict(const HarmonicContext& ctx, const Tolerances& tol) {
    HarmonicityReport rep;
    const CircleBundle& b = ctx.bundle();
    rep.acms = acms_axioms_check(b);
    rep.normality = normality_check(ctx);
    rep.normal = rep.normality.normal(tol.curvature);
    rep.delta_theta = delta_theta(ctx);
    rep.rough_laplacian = rough_laplacian_xi(ctx, tol.curvature);
    rep.hse1 = hse1_check(ctx, tol.curvature);
    rep.hse2 = hse2_check(ctx, tol.curvature);
    rep.hme = hme_check(ctx);
    rep.s_xi = s_of_xi(ctx);
    rep.s_xi_norm = rep.s_xi.norm();

    rep.harmonic_section = rep.hse1.intro_form < tol.verdict && rep.hse2.intro_form < tol.verdict;
    if (rep.normal)
        rep.harmonic_section = rep.harmonic_section && rep.hse1.curvature_form < tol.verdict &&
                               rep.hse2.curvature_form < tol.verdict;
    rep.harmonic_map = rep.harmonic_section && rep.hme.residual < tol.verdict;

    const KahlerTest kt = is_kahler(b.flag(), tol.curvature);
    rep.kahler = kt.kahler;
    if (!kt.kahler && !kt.reason.empty() && !b.flag().epsilon_from_ordering()) rep.warnings.push_back(kt.reason);
    const KahlerEinsteinTest ke = is_kahler_einstein(b.flag(), tol.curvature);
    rep.kahler_einstein = ke.kahler_einstein;
    rep.kahler_einstein_c = ke.c;
    rep.c_sasakian = c_sasaki_test(b, tol.curvature);
    rep.genericity = genericity_test(b);

    if (b.flag().epsilon_from_ordering())
        rep.reeb_closed_forms_hold =
            rep.delta_theta.residual < tol.curvature && rep.rough_laplacian.value.residual < tol.curvature;
    else
        rep.reeb_closed_forms_hold = rep.rough_laplacian.value.residual < tol.curvature;
    if (rep.kahler) rep.kahler_implies_harmonic = rep.harmonic_section && rep.harmonic_map;

    if (!rep.normal) rep.warnings.push_back("structure is not normal; curvature forms of HSE1/HSE2 have unmet preconditions");
    if (!rep.harmonic_section) rep.warnings.push_back("harmonic-map residual evaluated without a harmonic section");
    for (const std::string& w : b.warnings()) rep.warnings.push_back(w);
    return rep;
}

}  // namespace acms
