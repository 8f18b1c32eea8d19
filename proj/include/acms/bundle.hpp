#pragma once

#include "acms/flag.hpp"
#include "acms/nomizu.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acms {

// Frame vector of m~ = R X_0 (+) m: the Reeb vector, or X'_alpha / Y'_alpha = X_alpha / sqrt(kappa_gamma).
struct FrameVector {
    enum class Kind { Reeb, X, Y };
    Kind kind = Kind::Reeb;
    int class_index = -1;
    Root root;
    AlgebraElement value;
    std::string label() const;
};

struct BundleOptions {
    // Direction of X_0 in z; normalised internally. Defaults to -i h_rho.
    std::optional<AlgebraElement> x0;
    // Optional spanning set of z~; X_0 is corrected to be orthogonal to it.
    std::vector<AlgebraElement> ztilde;
};

class CircleBundle {
public:
    const FlagStructure& flag() const { return flag_; }
    const AlgebraElement& x0() const { return x0_; }
    // Y_0 = -i X_0, as a Cartan vector.
    const CartanVector& y0() const { return y0_; }
    const Subspace& ztilde() const { return ztilde_; }
    const Subspace& ktilde() const { return ktilde_; }

    const std::vector<FrameVector>& frame() const { return frame_; }
    int dim() const { return static_cast<int>(frame_.size()); }
    // Frame indices of X'_alpha and Y'_alpha for the p-th root of the m basis.
    int x_index(int p) const { return 1 + 2 * p; }
    int y_index(int p) const { return 2 + 2 * p; }
    int num_roots() const { return (dim() - 1) / 2; }

    double c_gamma(int g) const { return c_.at(g); }
    double a_gamma(int g) const { return c_.at(g) / flag_.kappa(g); }

    // theta, eta and the contact projector in frame coordinates; the metric is the identity.
    const Eigen::MatrixXd& theta() const { return theta_; }
    Eigen::VectorXd eta() const { return Eigen::VectorXd::Unit(dim(), 0); }
    Eigen::VectorXd xi() const { return Eigen::VectorXd::Unit(dim(), 0); }
    Eigen::MatrixXd contact_projector() const;

    Eigen::VectorXd coords(const AlgebraElement& v) const { return total_.coords(v); }
    AlgebraElement element(const Eigen::VectorXd& c) const { return total_.element(c); }

    const ReductiveSpace& total_space() const { return total_; }
    // G/K with the frame {X'_alpha, Y'_alpha}; frame index p of the base is index p+1 of m~.
    const ReductiveSpace& base_space() const { return base_; }

    const std::vector<std::string>& warnings() const { return warnings_; }

    friend CircleBundle build_bundle(const FlagStructure&, const BundleOptions&);

private:
    explicit CircleBundle(const FlagStructure& f) : flag_(f) {}

    FlagStructure flag_;
    AlgebraElement x0_;
    CartanVector y0_;
    Subspace ztilde_, ktilde_;
    std::vector<FrameVector> frame_;
    std::vector<double> c_;
    Eigen::MatrixXd theta_;
    ReductiveSpace total_, base_;
    std::vector<std::string> warnings_;
};

CircleBundle build_bundle(const FlagStructure& flag, const BundleOptions& options = {});

// -i h_rho / |h_rho|.
AlgebraElement auto_x0(const FlagStructure& flag);

struct AcmsResiduals {
    double theta_squared = 0.0;   // theta^2 + id - eta (x) xi
    double compatibility = 0.0;   // g(theta U, theta V) - g(U,V) + eta(U) eta(V)
    double eta_xi = 0.0;          // eta(xi) - 1
    double theta_xi = 0.0;        // theta xi
    double eta_theta = 0.0;       // eta o theta
    double isotropy_invariance = 0.0;  // ad(k~) skew for g and commuting with theta
    double max() const;
};
AcmsResiduals acms_axioms_check(const CircleBundle& bundle);

// Sigma(U,V) = -B(X_0,[U,V]).
double sigma_form(const CircleBundle& bundle, const AlgebraElement& u, const AlgebraElement& v);
// max |Sigma(JU,JV) - Sigma(U,V)| over m basis pairs.
double sigma_j_invariance(const CircleBundle& bundle);

struct CSasakiTest {
    bool is_c_sasakian = false;
    std::optional<double> c;
    double residual = 0.0;  // |-Y_0 - c h_kappa| for the best c
};
CSasakiTest c_sasaki_test(const CircleBundle& bundle, double tol = 1e-9);

struct GenericityTest {
    bool generic = false;
    int invariant_field_dim = 0;
};
GenericityTest genericity_test(const CircleBundle& bundle);

// Aloff-Wallach and Hopf presets.
CartanVector aloff_wallach_seed();
FlagStructure aloff_wallach_flag();
AlgebraElement aloff_wallach_x0(int k, int l);
CircleBundle aloff_wallach(int k, int l, const InvariantMetric& kappa);

FlagStructure hopf_flag(int m);
CircleBundle hopf(int m, double ke_scale = 1.0);

}  // namespace acms
