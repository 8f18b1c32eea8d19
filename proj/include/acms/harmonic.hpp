#pragma once

#include "acms/bundle.hpp"
#include "acms/nomizu.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acms {

// Connection data and invariant tensors of the bundle structure, computed once.
class HarmonicContext {
public:
    explicit HarmonicContext(const CircleBundle& bundle);

    const CircleBundle& bundle() const { return bundle_; }
    const NomizuConnection& conn() const { return conn_; }
    const TensorCalculus& full() const { return full_; }
    const TensorCalculus& contact() const { return contact_; }
    int dim() const { return bundle_.dim(); }
    Eigen::VectorXd e(int i) const { return Eigen::VectorXd::Unit(dim(), i); }

    const Eigen::MatrixXd& theta() const { return bundle_.theta(); }
    const Eigen::MatrixXd& projector() const { return p_; }

    const InvariantTensor& nabla_theta() const { return dtheta_; }       // (Z,X) -> (nabla_Z theta)X
    const InvariantTensor& nabla_jbar() const { return djbar_; }         // (Z,X) -> (nablabar_Z Jbar)X
    const InvariantTensor& nabla2_jbar() const { return ddjbar_; }       // (W,Z,X)
    const InvariantTensor& nabla_xi() const { return dxi_; }             // Z -> nabla_Z xi
    const InvariantTensor& nabla2_xi() const { return ddxi_; }           // (W,Z)

    // Matrices of (nabla_Z theta) and (nablabar_Z Jbar).
    Eigen::MatrixXd nabla_theta_along(const Eigen::VectorXd& z) const;
    Eigen::MatrixXd nabla_jbar_along(const Eigen::VectorXd& z) const;
    Eigen::VectorXd nabla_xi_along(const Eigen::VectorXd& z) const;

    // Curvature of the induced connection on the contact distribution.
    Eigen::MatrixXd rbar(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    Eigen::MatrixXd rbar_direct(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

private:
    CircleBundle bundle_;
    NomizuConnection conn_;
    Eigen::MatrixXd p_;
    TensorCalculus full_;
    TensorCalculus contact_;
    InvariantTensor dtheta_, djbar_, ddjbar_, dxi_, ddxi_;
};

struct ReebQuantity {
    Eigen::VectorXd vector;       // frame-sum value
    double closed_form = 0.0;     // coefficient of xi
    double residual = 0.0;        // |vector - closed_form xi|
    double parallel_residual = 0.0;  // norm of the component orthogonal to xi
};

ReebQuantity delta_theta(const HarmonicContext& ctx);

struct RoughLaplacian {
    ReebQuantity value;
    double grad_norm_sq = 0.0;        // |nabla xi|^2
    double factor_residual = 0.0;     // |nabla*nabla xi - |nabla xi|^2 xi|
    bool harmonic_unit_field = false;
};
RoughLaplacian rough_laplacian_xi(const HarmonicContext& ctx, double tol = 1e-9);

struct NormalityResiduals {
    double integrability = 0.0;
    double eq1 = 0.0, eq2 = 0.0, eq3 = 0.0, eq4 = 0.0, eq5 = 0.0;
    double nijenhuis = 0.0;            // N_theta + 2 d eta (x) xi, d eta(X,Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X,Y]))
    double nijenhuis_algebraic = 0.0;  // same condition from origin brackets [.,.]_m~
    double nijenhuis_unhalved = 0.0;   // origin brackets with d eta(X,Y) = -B(X_0,[X,Y]); informational
    double jbar_relation = 0.0;                 // (nablabar_{JX} J)(JY) - (nablabar_X J)(Y)
    double max_asserted() const;
    bool normal(double tol) const { return max_asserted() < tol; }
};
NormalityResiduals normality_check(const HarmonicContext& ctx);

struct Hse1Residuals {
    double curvature_form = 0.0;   // |sum [Rbar(F_i, J F_i), J] + 2 nablabar_{deltabar J} J|
    double intro_form = 0.0;       // |[nablabar* nablabar J, J]|
    double proof_identity = 0.0;   // |[nablabar*nablabar J, J] - sum [Rbar, J] - 2 nablabar_{deltabar J} J|
    double jlee_identity = 0.0;          // |sum nablabar_{(nablabar_{J F_i} J) F_i} J - nablabar_{J deltabar J} J|
    double lee_vs_delta_theta = 0.0;  // |deltabar J - proj_F delta theta|
    double eqr = 0.0;              // |sum [r(nabla_{F_i} xi, nabla_{J F_i} xi), J]|
    double rbar_consistency = 0.0; // |Rbar (formula) - Rbar (direct curvature)|
    bool precondition_met = true;
};
Hse1Residuals hse1_check(const HarmonicContext& ctx, double normal_tol = 1e-9);

struct Hse2Residuals {
    double curvature_form = 0.0;
    double intro_form = 0.0;
    double equality_of_forms = 0.0;
    bool precondition_met = true;
};
Hse2Residuals hse2_check(const HarmonicContext& ctx, double normal_tol = 1e-9);

struct HmeResiduals {
    double residual = 0.0;         // max over frame X
    double xi_component = 0.0;     // value at X = xi
    bool xi_grad_norm_constant = true;  // xi(|nabla xi|^2) = 0 for invariant scalars
};
HmeResiduals hme_check(const HarmonicContext& ctx);

Eigen::VectorXd s_of_xi(const HarmonicContext& ctx);
// S(V) for an arbitrary vector V at the origin, treating V as an invariant field.
Eigen::VectorXd s_of(const HarmonicContext& ctx, const Eigen::VectorXd& v);

struct ClosedFormCoefficients {
    double delta_theta = 0.0;
    double rough_laplacian = 0.0;
};
ClosedFormCoefficients closed_forms(const CircleBundle& bundle);

struct Tolerances {
    double structural = 1e-10;
    double curvature = 1e-9;
    double verdict = 1e-8;
};

struct HarmonicityReport {
    NormalityResiduals normality;
    bool normal = false;
    ReebQuantity delta_theta;
    RoughLaplacian rough_laplacian;
    Hse1Residuals hse1;
    Hse2Residuals hse2;
    HmeResiduals hme;
    Eigen::VectorXd s_xi;
    double s_xi_norm = 0.0;
    AcmsResiduals acms;
    bool harmonic_section = false;
    bool harmonic_map = false;
    bool kahler = false;
    bool kahler_einstein = false;
    double kahler_einstein_c = 0.0;
    CSasakiTest c_sasakian;
    GenericityTest genericity;
    bool reeb_closed_forms_hold = false;
    // Kahler metrics must give harmonic sections and maps; false signals a violated theorem.
    bool kahler_implies_harmonic = true;
    std::vector<std::string> warnings;
};
HarmonicityReport verdict(const HarmonicContext& ctx, const Tolerances& tol = {});

}  // namespace acms
