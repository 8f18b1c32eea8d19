#pragma once

#include <Eigen/Dense>

#include <compare>
#include <string>
#include <vector>

namespace acms {

// The root e_i - e_j of type A, indices 1-based.
struct Root {
    int i = 1;
    int j = 2;

    Root negated() const { return Root{j, i}; }
    std::string label() const;

    friend bool operator==(const Root&, const Root&) = default;
    friend auto operator<=>(const Root&, const Root&) = default;
};

// Diagonal of a traceless real diagonal matrix, an element of t_R.
using CartanVector = Eigen::VectorXd;

class RootSystem {
public:
    static RootSystem type_a(int n);

    int n() const { return n_; }
    const std::vector<Root>& roots() const { return roots_; }
    const std::vector<Root>& simple_basis() const { return simple_; }
    const std::vector<Root>& positive() const { return positive_; }

    bool contains(const Root& r) const;
    bool is_positive(const Root& r) const { return r.i < r.j; }

    // Trace-form dual of the root: +1 at i, -1 at j.
    CartanVector coroot_vector(const Root& r) const;

    // Coefficients of a root in the simple basis.
    Eigen::VectorXi simple_coefficients(const Root& r) const;

    // lambda(H) = H_i - H_j.
    static double evaluate(const Root& r, const CartanVector& h) { return h(r.i - 1) - h(r.j - 1); }

private:
    int n_ = 0;
    std::vector<Root> roots_;
    std::vector<Root> simple_;
    std::vector<Root> positive_;
};

RootSystem build_type_a(int n);

// Half-sum of the given roots, as a trace-form dual.
CartanVector rho(const std::vector<Root>& positive_q, int n);

// Trace pairing <h, h'> = sum h_i h'_i.
inline double trace_pairing(const CartanVector& a, const CartanVector& b) { return a.dot(b); }

bool is_traceless(const CartanVector& h, double tol = 1e-12);

}  // namespace acms
