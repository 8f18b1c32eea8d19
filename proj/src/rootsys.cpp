#include "acms/rootsys.hpp"

#include "acms/errors.hpp"

#include <algorithm>
#include <cmath>

namespace acms {

std::string Root::label() const { return "e" + std::to_string(i) + "-e" + std::to_string(j); }

RootSystem RootSystem::type_a(int n) {
    if (n < 2) throw DomainError("invalid rank: type A needs n >= 2, got " + std::to_string(n));
    RootSystem rs;
    rs.n_ = n;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) rs.roots_.push_back(Root{i, j});
    for (int i = 1; i < n; ++i) rs.simple_.push_back(Root{i, i + 1});
    for (const Root& r : rs.roots_)
        if (r.i < r.j) rs.positive_.push_back(r);
    return rs;
}

RootSystem build_type_a(int n) { return RootSystem::type_a(n); }

bool RootSystem::contains(const Root& r) const {
    return r.i >= 1 && r.j >= 1 && r.i <= n_ && r.j <= n_ && r.i != r.j;
}

CartanVector RootSystem::coroot_vector(const Root& r) const {
    if (!contains(r)) throw DomainError("not a root of A_" + std::to_string(n_ - 1) + ": " + r.label());
    CartanVector h = CartanVector::Zero(n_);
    h(r.i - 1) = 1.0;
    h(r.j - 1) = -1.0;
    return h;
}

Eigen::VectorXi RootSystem::simple_coefficients(const Root& r) const {
    if (!contains(r)) throw DomainError("not a root: " + r.label());
    // e_i - e_j = sum_{k=i}^{j-1} alpha_k (negated when i > j).
    Eigen::VectorXi c = Eigen::VectorXi::Zero(n_ - 1);
    const int lo = std::min(r.i, r.j);
    const int hi = std::max(r.i, r.j);
    const int sign = r.i < r.j ? 1 : -1;
    for (int k = lo; k < hi; ++k) c(k - 1) = sign;
    return c;
}

CartanVector rho(const std::vector<Root>& positive_q, int n) {
    if (positive_q.empty()) throw DegenerateError("rho of an empty root set");
    CartanVector h = CartanVector::Zero(n);
    for (const Root& r : positive_q) {
        h(r.i - 1) += 0.5;
        h(r.j - 1) -= 0.5;
    }
    return h;
}

bool is_traceless(const CartanVector& h, double tol) { return std::abs(h.sum()) <= tol; }

}  // namespace acms
