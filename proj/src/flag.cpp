#include "acms/flag.hpp"

#include "acms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace acms {

std::string RootClass::label() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < fiber.size(); ++k) os << (k ? "," : "") << fiber[k].label();
    os << "]";
    return os.str();
}

namespace {

bool same_restriction(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

double matrix_norm(const AlgebraElement& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

FlagStructure build_flag(const CompactLieModel& model, const std::vector<CartanVector>& z_spec, double tol) {
    const int n = model.n();
    const RootSystem& rs = model.root_system();
    bool nonzero = false;
    for (const CartanVector& h : z_spec) {
        if (h.size() != n) throw DomainError("torus vector has length " + std::to_string(h.size()) +
                                             ", expected " + std::to_string(n));
        if (!is_traceless(h, 1e-9)) throw DomainError("torus vector is not traceless");
        if (h.cwiseAbs().maxCoeff() > tol) nonzero = true;
    }
    if (!nonzero) throw DegenerateError("degenerate torus: z_spec spans the zero subspace");

    FlagStructure f(model);
    for (const Root& r : rs.roots()) {
        bool vanishes = true;
        for (const CartanVector& h : z_spec)
            if (std::abs(RootSystem::evaluate(r, h)) > tol) vanishes = false;
        (vanishes ? f.p_ : f.q_).push_back(r);
    }

    // z_R = {h : sum h = 0, alpha(h) = 0 for alpha in P}.
    std::vector<Eigen::VectorXd> rows;
    rows.push_back(Eigen::VectorXd::Ones(n));
    for (const Root& r : f.p_)
        if (r.i < r.j) rows.push_back(rs.coroot_vector(r));
    Eigen::MatrixXd cons(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t k = 0; k < rows.size(); ++k) cons.row(static_cast<Eigen::Index>(k)) = rows[k].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cons, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double scale = model.form_scale();
    for (int col = 0; col < n; ++col) {
        const double sigma = col < sv.size() ? sv(col) : 0.0;
        if (sigma <= 1e-9) f.z_real_.push_back(svd.matrixV().col(col) / std::sqrt(scale));
    }
    // Deterministic orientation: first nonzero entry positive.
    for (CartanVector& h : f.z_real_) {
        for (int k = 0; k < n; ++k)
            if (std::abs(h(k)) > 1e-9) {
                if (h(k) < 0) h = -h;
                break;
            }
    }
    std::vector<AlgebraElement> zs;
    for (const CartanVector& h : f.z_real_) zs.push_back(model.i_cartan(h));
    f.z_ = Subspace::span(model.form(), n, zs);

    std::vector<AlgebraElement> ks = model.torus().basis();
    for (const Root& r : f.p_)
        if (r.i < r.j) {
            ks.push_back(model.x(r));
            ks.push_back(model.y(r));
        }
    f.k_ = Subspace::span(model.form(), n, ks);
    for (const AlgebraElement& a : f.k_.basis())
        for (const AlgebraElement& b : f.k_.basis()) {
            const AlgebraElement c = bracket(a, b);
            f.k_closure_ = std::max(f.k_closure_, matrix_norm(c - f.k_.project(c)));
        }
    if (f.k_closure_ > 1e-8) throw DegenerateError("k = t + n^P is not a subalgebra");

    // Try the canonical chamber seed: the standard rho projected onto z_R.
    CartanVector std_rho = rho(rs.positive(), n);
    CartanVector seed = f.project_to_z(std_rho);
    bool regular = true;
    for (const Root& r : f.q_)
        if (std::abs(RootSystem::evaluate(r, seed)) <= tol) regular = false;
    if (regular) {
        f.rebuild_classes(invariant_ordering(f, seed, tol), seed, tol);
    } else {
        std::vector<Root> qp;
        for (const Root& r : f.q_)
            if (r.i < r.j) qp.push_back(r);
        f.rebuild_classes(qp, std::nullopt, tol);
    }
    return f;
}

FlagStructure full_flag(int n) {
    CompactLieModel model(n);
    std::vector<CartanVector> t;
    for (const Root& a : model.root_system().simple_basis()) t.push_back(model.root_system().coroot_vector(a));
    return build_flag(model, t);
}

Eigen::VectorXd FlagStructure::restrict_root(const Root& r) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(z_real_.size()));
    for (std::size_t k = 0; k < z_real_.size(); ++k) v(static_cast<Eigen::Index>(k)) = RootSystem::evaluate(r, z_real_[k]);
    return v;
}

CartanVector FlagStructure::project_to_z(const CartanVector& h) const {
    CartanVector out = CartanVector::Zero(n());
    for (const CartanVector& z : z_real_) out += model_.pairing(z, h) * z;
    return out;
}

double FlagStructure::gamma_value(int g, const CartanVector& h) const {
    return RootSystem::evaluate(classes_.at(g).fiber.front(), project_to_z(h));
}

int FlagStructure::class_of(const Root& r, int* sign) const {
    for (int g = 0; g < num_classes(); ++g)
        for (const Root& a : classes_[g].fiber) {
            if (a == r) {
                if (sign) *sign = 1;
                return g;
            }
            if (a == r.negated()) {
                if (sign) *sign = -1;
                return g;
            }
        }
    if (sign) *sign = 0;
    return -1;
}

std::vector<Root> invariant_ordering(const FlagStructure& flag, const CartanVector& z_star, double tol) {
    if (z_star.size() != flag.n()) throw DomainError("chamber seed has wrong length");
    const CartanVector z = flag.project_to_z(z_star);
    if ((z - z_star).cwiseAbs().maxCoeff() > 1e-8)
        throw DomainError("chamber seed is not in z_R");
    std::vector<Root> out;
    for (const Root& r : flag.q_roots()) {
        const double v = RootSystem::evaluate(r, z);
        if (std::abs(v) <= tol)
            throw NotRegularError("chamber seed lies on the wall " + r.label() + " = 0");
        if (v > 0) out.push_back(r);
    }
    return out;
}

void FlagStructure::rebuild_classes(const std::vector<Root>& q_plus, const std::optional<CartanVector>& seed,
                                    double tol) {
    q_plus_ = q_plus;
    std::sort(q_plus_.begin(), q_plus_.end());
    classes_.clear();
    for (const Root& r : q_plus_) {
        const Eigen::VectorXd res = restrict_root(r);
        bool placed = false;
        for (RootClass& c : classes_)
            if (same_restriction(c.restriction, res, tol)) {
                c.fiber.push_back(r);
                placed = true;
                break;
            }
        if (!placed) classes_.push_back(RootClass{res, {r}});
    }
    if (seed) {
        auto key = [&](const RootClass& c) { return RootSystem::evaluate(c.fiber.front(), *seed); };
        std::stable_sort(classes_.begin(), classes_.end(), [&](const RootClass& a, const RootClass& b) {
            const double ka = key(a), kb = key(b);
            if (std::abs(ka - kb) > tol) return ka < kb;
            return a.fiber.front() < b.fiber.front();
        });
    }
    seed_ = seed;
    epsilon_.assign(classes_.size(), 1);
    kappa_.assign(classes_.size(), 1.0);
    rebuild_m();
}

void FlagStructure::rebuild_m() {
    m_vectors_.clear();
    std::vector<AlgebraElement> vs;
    for (int g = 0; g < num_classes(); ++g)
        for (const Root& a : classes_[g].fiber) {
            const ChevalleyTriple c = model_.chevalley_vectors(a);
            m_vectors_.push_back(MVector{g, a, false, c.x});
            m_vectors_.push_back(MVector{g, a, true, c.y});
            vs.push_back(c.x);
            vs.push_back(c.y);
        }
    m_ = Subspace::span(model_.form(), n(), vs);
}

bool FlagStructure::epsilon_from_ordering() const {
    if (!seed_) return false;
    return std::all_of(epsilon_.begin(), epsilon_.end(), [](int e) { return e == 1; });
}

AlgebraElement FlagStructure::apply_j(const AlgebraElement& u) const {
    AlgebraElement out = AlgebraElement::Zero(n(), n());
    const InvariantForm& b = model_.form();
    for (std::size_t k = 0; k + 1 < m_vectors_.size(); k += 2) {
        const MVector& x = m_vectors_[k];
        const MVector& y = m_vectors_[k + 1];
        const double e = epsilon_[x.class_index];
        out += e * (b(x.value, u) * y.value - b(y.value, u) * x.value);
    }
    return out;
}

double FlagStructure::kappa_m(const AlgebraElement& u, const AlgebraElement& v) const {
    const InvariantForm& b = model_.form();
    double s = 0.0;
    for (const MVector& w : m_vectors_) s += kappa_[w.class_index] * b(w.value, u) * b(w.value, v);
    return s;
}

CartanVector FlagStructure::h_rho() const { return rho(q_plus_, n()) / model_.form_scale(); }

FlagStructure FlagStructure::with_ordering(const CartanVector& z_star, double tol) const {
    FlagStructure f = *this;
    const CartanVector z = project_to_z(z_star);
    f.rebuild_classes(invariant_ordering(*this, z_star, tol), z, tol);
    return f;
}

FlagStructure FlagStructure::with_metric(const InvariantMetric& kappa) const {
    if (kappa.size() != classes_.size())
        throw DomainError("metric has " + std::to_string(kappa.size()) + " entries, expected " +
                          std::to_string(classes_.size()));
    for (double k : kappa)
        if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("metric coefficients must be positive");
    FlagStructure f = *this;
    f.kappa_ = kappa;
    return f;
}

FlagStructure FlagStructure::with_epsilon(const InvariantACS& eps) const {
    if (eps.size() != classes_.size()) throw DomainError("epsilon map has the wrong number of entries");
    for (int e : eps)
        if (e != 1 && e != -1) throw DomainError("epsilon values must be +1 or -1");
    FlagStructure f = *this;
    f.epsilon_ = eps;
    return f;
}

double kks_form(const CompactLieModel& model, const AlgebraElement& z, const AlgebraElement& a,
                const AlgebraElement& b) {
    return model.b_form(z, bracket(a, b));
}

KahlerTest is_kahler(const FlagStructure& flag, double tol) {
    KahlerTest out;
    if (!flag.epsilon_from_ordering()) {
        out.reason = "almost complex structure is not induced by an invariant ordering";
        return out;
    }
    const auto& cls = flag.classes();
    for (int a = 0; a < flag.num_classes(); ++a)
        for (int b = a; b < flag.num_classes(); ++b) {
            const Eigen::VectorXd s = cls[a].restriction + cls[b].restriction;
            for (int c = 0; c < flag.num_classes(); ++c) {
                if (!same_restriction(cls[c].restriction, s, 1e-9)) continue;
                if (std::abs(flag.kappa(a) + flag.kappa(b) - flag.kappa(c)) > tol) {
                    out.witness = std::array<int, 3>{a, b, c};
                    out.reason = "kappa additivity fails";
                    return out;
                }
            }
        }
    out.kahler = true;
    return out;
}

KahlerVectorResult kahler_vector(const FlagStructure& flag, double tol) {
    KahlerVectorResult out;
    const int nc = flag.num_classes();
    const int dz = static_cast<int>(flag.z_real_basis().size());
    Eigen::MatrixXd a(nc, dz);
    Eigen::VectorXd rhs(nc);
    for (int g = 0; g < nc; ++g) {
        a.row(g) = flag.classes()[g].restriction.transpose();
        rhs(g) = flag.kappa(g);
    }
    const Eigen::VectorXd c = a.completeOrthogonalDecomposition().solve(rhs);
    out.residual = (a * c - rhs).cwiseAbs().maxCoeff();
    out.h = CartanVector::Zero(flag.n());
    for (int k = 0; k < dz; ++k) out.h += c(k) * flag.z_real_basis()[k];
    out.in_chamber = flag.has_ordering();
    for (int g = 0; g < nc; ++g)
        if (!(flag.gamma_value(g, out.h) > tol)) out.in_chamber = false;
    out.ok = out.residual < tol && out.in_chamber && flag.epsilon_from_ordering();
    return out;
}

KahlerEinsteinTest is_kahler_einstein(const FlagStructure& flag, double tol) {
    KahlerEinsteinTest out;
    const KahlerVectorResult kv = kahler_vector(flag, tol);
    if (!kv.ok) return out;
    const CartanVector hr = flag.h_rho();
    const double c = flag.model().pairing(kv.h, hr) / flag.model().pairing(hr, hr);
    if (c > tol && (kv.h - c * hr).cwiseAbs().maxCoeff() < tol) {
        out.kahler_einstein = true;
        out.c = c;
    }
    return out;
}

InvariantMetric kahler_metric_from(const FlagStructure& flag, const CartanVector& h) {
    InvariantMetric k(flag.num_classes());
    for (int g = 0; g < flag.num_classes(); ++g) k[g] = flag.gamma_value(g, h);
    return k;
}

InvariantMetric kahler_einstein_metric(const FlagStructure& flag, double c) {
    if (!(c > 0)) throw DomainError("Kahler-Einstein scale must be positive");
    InvariantMetric k = kahler_metric_from(flag, flag.h_rho());
    for (double& v : k) v *= c;
    return k;
}

}  // namespace acms
