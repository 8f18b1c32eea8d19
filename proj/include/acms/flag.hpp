#pragma once

#include "acms/liealg.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace acms {

// One element gamma of R_T^+ together with its fibre in Q^+.
struct RootClass {
    Eigen::VectorXd restriction;  // values of gamma on the orthonormal basis of z_R
    std::vector<Root> fiber;      // sorted lexicographically
    int n_gamma() const { return static_cast<int>(fiber.size()); }
    std::string label() const;
};

// kappa_gamma and epsilon(gamma), indexed like FlagStructure::classes().
using InvariantMetric = std::vector<double>;
using InvariantACS = std::vector<int>;

// Vector X_alpha or Y_alpha of the canonical m basis.
struct MVector {
    int class_index = 0;
    Root root;
    bool is_y = false;
    AlgebraElement value;
};

class FlagStructure {
public:
    const CompactLieModel& model() const { return model_; }
    int n() const { return model_.n(); }

    // z as algebra elements, and its real form with a basis orthonormal for <,>.
    const Subspace& z() const { return z_; }
    const std::vector<CartanVector>& z_real_basis() const { return z_real_; }

    const std::vector<Root>& p_roots() const { return p_; }
    const std::vector<Root>& q_roots() const { return q_; }
    const std::vector<Root>& positive_q() const { return q_plus_; }
    const std::vector<RootClass>& classes() const { return classes_; }
    int num_classes() const { return static_cast<int>(classes_.size()); }

    int n_gamma(int g) const { return classes_.at(g).n_gamma(); }
    int epsilon(int g) const { return epsilon_.at(g); }
    double kappa(int g) const { return kappa_.at(g); }
    const InvariantMetric& metric() const { return kappa_; }
    const InvariantACS& acs() const { return epsilon_; }
    const std::optional<CartanVector>& chamber_seed() const { return seed_; }
    bool has_ordering() const { return seed_.has_value(); }
    // True iff J comes from the invariant ordering of the chamber seed.
    bool epsilon_from_ordering() const;

    const Subspace& k() const { return k_; }
    const Subspace& m() const { return m_; }
    const std::vector<MVector>& m_vectors() const { return m_vectors_; }

    // Values of a root on the orthonormal basis of z_R.
    Eigen::VectorXd restrict_root(const Root& r) const;
    // Orthogonal projection of a Cartan vector onto z_R.
    CartanVector project_to_z(const CartanVector& h) const;
    // gamma(h) for h in t_R, evaluated on its z_R component.
    double gamma_value(int g, const CartanVector& h) const;
    // Index of the class containing r or -r; sign is +1 if r itself is in Q^+. -1 for roots of P.
    int class_of(const Root& r, int* sign = nullptr) const;

    AlgebraElement apply_j(const AlgebraElement& u) const;
    double kappa_m(const AlgebraElement& u, const AlgebraElement& v) const;

    // h_rho for rho = half-sum of Q^+, as a <,>-dual.
    CartanVector h_rho() const;

    // Bracket-closure residual of k.
    double k_closure_residual() const { return k_closure_; }

    FlagStructure with_ordering(const CartanVector& z_star, double tol = 1e-9) const;
    FlagStructure with_metric(const InvariantMetric& kappa) const;
    FlagStructure with_epsilon(const InvariantACS& eps) const;

    friend FlagStructure build_flag(const CompactLieModel&, const std::vector<CartanVector>&, double);

private:
    explicit FlagStructure(const CompactLieModel& model) : model_(model) {}
    void rebuild_classes(const std::vector<Root>& q_plus, const std::optional<CartanVector>& seed, double tol);
    void rebuild_m();

    CompactLieModel model_;
    Subspace z_;
    std::vector<CartanVector> z_real_;
    std::vector<Root> p_, q_, q_plus_;
    std::vector<RootClass> classes_;
    InvariantACS epsilon_;
    InvariantMetric kappa_;
    std::optional<CartanVector> seed_;
    Subspace k_, m_;
    std::vector<MVector> m_vectors_;
    double k_closure_ = 0.0;
};

// z is taken to be the full centre {h : alpha(h) = 0 for alpha in P} of k.
// Without a chamber seed, Q^+ = Q cap R^+ and classes follow the first-seen order.
FlagStructure build_flag(const CompactLieModel& model, const std::vector<CartanVector>& z_spec,
                         double tol = 1e-9);

// Standard presets for type A: z = t, and z spanned by i diag[m,-1,...,-1].
FlagStructure full_flag(int n);

std::vector<Root> invariant_ordering(const FlagStructure& flag, const CartanVector& z_star, double tol = 1e-9);

// omega_z(A,B) = B(z,[A,B]).
double kks_form(const CompactLieModel& model, const AlgebraElement& z, const AlgebraElement& a,
                const AlgebraElement& b);

struct KahlerTest {
    bool kahler = false;
    std::optional<std::array<int, 3>> witness;  // (g1, g2, g1+g2) violating additivity
    std::string reason;
};
KahlerTest is_kahler(const FlagStructure& flag, double tol = 1e-9);

struct KahlerVectorResult {
    bool ok = false;
    CartanVector h;
    double residual = 0.0;
    bool in_chamber = false;
};
KahlerVectorResult kahler_vector(const FlagStructure& flag, double tol = 1e-9);

struct KahlerEinsteinTest {
    bool kahler_einstein = false;
    double c = 0.0;
};
KahlerEinsteinTest is_kahler_einstein(const FlagStructure& flag, double tol = 1e-9);

// kappa_gamma = gamma(h) with h projected onto z_R.
InvariantMetric kahler_metric_from(const FlagStructure& flag, const CartanVector& h);
// kappa_gamma = c gamma(h_rho).
InvariantMetric kahler_einstein_metric(const FlagStructure& flag, double c = 1.0);

}  // namespace acms
