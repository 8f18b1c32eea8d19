#pragma once

#include "acms/liealg.hpp"

#include <Eigen/Dense>

#include <vector>

namespace acms {

// g = isotropy (+) horizontal at the origin. The horizontal frame is pairwise B-orthogonal
// and declared orthonormal for the invariant metric, so the metric in frame coordinates
// is the identity and coordinates are c_k(V) = B(e_k, V) / B(e_k, e_k).
class ReductiveSpace {
public:
    ReductiveSpace() = default;
    ReductiveSpace(const InvariantForm& form, const Subspace& isotropy, std::vector<AlgebraElement> frame);

    int dim() const { return d_; }
    const Subspace& isotropy() const { return isotropy_; }
    const std::vector<AlgebraElement>& frame() const { return frame_; }
    const InvariantForm& form() const { return form_; }

    Eigen::VectorXd coords(const AlgebraElement& v) const;
    AlgebraElement element(const Eigen::VectorXd& c) const;

    // Structure constants of the horizontal bracket: [e_i,e_j]_h = sum_k C(i,j,k) e_k.
    double c(int i, int j, int k) const { return c_[(i * d_ + j) * d_ + k]; }
    Eigen::VectorXd bracket_h(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    // Matrix of ad([e_i,e_j]_iso) acting on the horizontal frame.
    const Eigen::MatrixXd& isotropy_action(int i, int j) const { return iso_[i * d_ + j]; }
    Eigen::MatrixXd isotropy_action(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    // Matrix of ad(k) on the horizontal frame for an isotropy element k.
    Eigen::MatrixXd ad_on_horizontal(const AlgebraElement& k) const;

    // max over isotropy basis and frame of |[k, e] - proj_h [k, e]|, and of B(isotropy, frame).
    double reductive_residual() const { return reductive_residual_; }
    // max |metric(ad(k)x, y) + metric(x, ad(k)y)| over the isotropy basis.
    double isotropy_invariance_residual() const;

private:
    InvariantForm form_{};
    Subspace isotropy_;
    std::vector<AlgebraElement> frame_;
    std::vector<double> bnorm_;  // B(e_k, e_k)
    int d_ = 0;
    std::vector<double> c_;
    std::vector<Eigen::MatrixXd> iso_;
    double reductive_residual_ = 0.0;
};

// Lambda(X,Y) = 1/2 [X,Y]_h + U(X,Y) of the Levi-Civita connection.
class NomizuConnection {
public:
    NomizuConnection() = default;
    explicit NomizuConnection(const ReductiveSpace& space);

    const ReductiveSpace& space() const { return space_; }
    int dim() const { return space_.dim(); }

    // Lambda(e_i, e_j) = sum_k l(i,j,k) e_k.
    double l(int i, int j, int k) const { return l_[(i * dim() + j) * dim() + k]; }
    // Matrix of Lambda(e_i, .).
    const Eigen::MatrixXd& op(int i) const { return ops_[i]; }
    Eigen::MatrixXd op(const Eigen::VectorXd& x) const;
    Eigen::VectorXd lambda(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    Eigen::VectorXd u(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    // R(X,Y) = [Lambda(X), Lambda(Y)] - Lambda([X,Y]_h) - ad([X,Y]_iso).
    Eigen::MatrixXd curvature_op(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    Eigen::VectorXd curvature(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;

    double torsion_residual() const;
    double metric_residual() const;

    Eigen::VectorXd basis(int i) const { return Eigen::VectorXd::Unit(dim(), i); }

private:
    ReductiveSpace space_;
    std::vector<double> l_;
    std::vector<Eigen::MatrixXd> ops_;
};

NomizuConnection lambda(const ReductiveSpace& space);
Eigen::VectorXd compute_U(const ReductiveSpace& space, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
Eigen::VectorXd curvature(const NomizuConnection& conn, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& z);

struct CurvatureSymmetryResiduals {
    double skew = 0.0;
    double metric_skew = 0.0;
    double bianchi = 0.0;
    double pair_symmetry = 0.0;
};
// Exhaustive over frame index tuples.
CurvatureSymmetryResiduals curvature_symmetries(const NomizuConnection& conn);

// Invariant tensor at the origin: r vector slots, scalar or vector value. Each slot and the value
// is marked Tangent (full connection) or Contact (projected connection P Lambda(Z, P .)).
enum class Slot { Tangent, Contact };
enum class ValueKind { Scalar, Tangent, Contact };

class InvariantTensor {
public:
    InvariantTensor() = default;
    InvariantTensor(int dim, std::vector<Slot> slots, ValueKind value);

    static InvariantTensor vector_field(const Eigen::VectorXd& v, ValueKind kind = ValueKind::Tangent);
    static InvariantTensor endomorphism(const Eigen::MatrixXd& a, Slot in = Slot::Tangent,
                                        ValueKind out = ValueKind::Tangent);
    static InvariantTensor metric(int dim);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(slots_.size()); }
    int value_dim() const { return value_ == ValueKind::Scalar ? 1 : dim_; }
    const std::vector<Slot>& slots() const { return slots_; }
    ValueKind value_kind() const { return value_; }

    // Value on basis vectors (indices into the frame).
    Eigen::Map<const Eigen::VectorXd> at(const std::vector<int>& idx) const;
    Eigen::Map<Eigen::VectorXd> at(const std::vector<int>& idx);
    Eigen::VectorXd evaluate(const std::vector<Eigen::VectorXd>& args) const;

    // Contract the first slot with z.
    InvariantTensor contract_first(const Eigen::VectorXd& z) const;
    // For rank-1 vector-valued tensors: the matrix with columns T(e_j).
    Eigen::MatrixXd as_matrix() const;

    double max_abs() const;
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t offset(const std::vector<int>& idx) const;

    int dim_ = 0;
    std::vector<Slot> slots_;
    ValueKind value_ = ValueKind::Scalar;
    std::vector<double> data_;
};

// Covariant derivatives of invariant tensors at the origin. `contact_projector` is the
// orthogonal projector onto the contact distribution (identity when absent).
class TensorCalculus {
public:
    explicit TensorCalculus(const NomizuConnection& conn);
    TensorCalculus(const NomizuConnection& conn, const Eigen::MatrixXd& contact_projector);

    const NomizuConnection& connection() const { return conn_; }
    const Eigen::MatrixXd& projector() const { return p_; }

    // Matrix of Lambda(e_z, .) or of its contact version.
    Eigen::MatrixXd op(int z, bool contact) const;

    // (nabla T)(Z, X_1..X_r) = (nabla_Z T)(X_1..X_r); the new first slot is Tangent.
    InvariantTensor cov_deriv(const InvariantTensor& t) const;
    InvariantTensor cov_deriv(const InvariantTensor& t, const Eigen::VectorXd& z) const;

private:
    NomizuConnection conn_;
    Eigen::MatrixXd p_;
    std::vector<Eigen::MatrixXd> ops_contact_;
};

InvariantTensor cov_deriv(const TensorCalculus& calc, const InvariantTensor& t, const Eigen::VectorXd& z);

}  // namespace acms
