#pragma once

#include "acms/rootsys.hpp"

#include <Eigen/Dense>

#include <vector>

namespace acms {

// An element of su(n), stored as a complex n x n matrix.
using AlgebraElement = Eigen::MatrixXcd;

// B(U,V) = -c tr(UV); positive definite on su(n).
struct InvariantForm {
    double scale = 1.0;
    double operator()(const AlgebraElement& u, const AlgebraElement& v) const;
};

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

// B-orthonormal spanning set of a real subspace of su(n).
class Subspace {
public:
    Subspace() = default;
    Subspace(InvariantForm form, int n) : form_(form), n_(n) {}

    // Gram-Schmidt over the given vectors; drops directions with residual norm <= tol.
    static Subspace span(InvariantForm form, int n, const std::vector<AlgebraElement>& vectors,
                         double tol = 1e-9);

    int dim() const { return static_cast<int>(basis_.size()); }
    int matrix_size() const { return n_; }
    const InvariantForm& form() const { return form_; }
    const std::vector<AlgebraElement>& basis() const { return basis_; }

    AlgebraElement project(const AlgebraElement& v) const;
    Eigen::VectorXd coordinates(const AlgebraElement& v) const;
    AlgebraElement element(const Eigen::VectorXd& coords) const;
    bool contains(const AlgebraElement& v, double tol = 1e-9) const;

    // B-orthogonal complement of this subspace inside `ambient`.
    Subspace complement_in(const Subspace& ambient, double tol = 1e-9) const;
    Subspace sum(const Subspace& other, double tol = 1e-9) const;

    // max |Gram - I|.
    double gram_residual() const;

private:
    InvariantForm form_{};
    int n_ = 0;
    std::vector<AlgebraElement> basis_;
};

// Vectors of S commuting with every vector of K, via SVD null space.
Subspace centralizer_in(const Subspace& s, const Subspace& k, double cutoff = 1e-9);

struct ChevalleyTriple {
    AlgebraElement e;
    AlgebraElement x;
    AlgebraElement y;
};

// su(n) with B = -c tr, root vectors E_{e_k - e_l} = E_{kl}/sqrt(c).
class CompactLieModel {
public:
    explicit CompactLieModel(int n, double form_scale = 1.0);

    int n() const { return roots_.n(); }
    double form_scale() const { return form_.scale; }
    const InvariantForm& form() const { return form_; }
    const RootSystem& root_system() const { return roots_; }

    ChevalleyTriple chevalley_vectors(const Root& r) const;
    AlgebraElement x(const Root& r) const { return chevalley_vectors(r).x; }
    AlgebraElement y(const Root& r) const { return chevalley_vectors(r).y; }

    double b_form(const AlgebraElement& u, const AlgebraElement& v) const { return form_(u, v); }

    // i diag(h).
    AlgebraElement i_cartan(const CartanVector& h) const;
    // Imaginary part of the diagonal: inverse of i_cartan on t.
    CartanVector cartan_part(const AlgebraElement& v) const;

    // h_lambda with <h_lambda, H> = lambda(H) for <h,h'> = c sum h_i h'_i.
    CartanVector coroot(const Root& r) const;
    double pairing(const CartanVector& a, const CartanVector& b) const { return form_.scale * a.dot(b); }

    const Subspace& torus() const { return torus_; }
    const Subspace& algebra() const { return algebra_; }

    // Skew-Hermitian and traceless within tol.
    bool in_algebra(const AlgebraElement& v, double tol = 1e-12) const;

private:
    RootSystem roots_;
    InvariantForm form_;
    Subspace torus_;
    Subspace algebra_;
};

}  // namespace acms
