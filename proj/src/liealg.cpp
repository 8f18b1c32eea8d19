#include "acms/liealg.hpp"

#include "acms/errors.hpp"

#include <cmath>
#include <complex>

namespace acms {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

double InvariantForm::operator()(const AlgebraElement& u, const AlgebraElement& v) const {
    // tr(UV) = sum_{ab} U_ab V_ba
    return -scale * (u.array() * v.transpose().array()).sum().real();
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("bracket: dimension mismatch");
    return a * b - b * a;
}

Subspace Subspace::span(InvariantForm form, int n, const std::vector<AlgebraElement>& vectors, double tol) {
    Subspace s(form, n);
    for (const AlgebraElement& v : vectors) {
        AlgebraElement w = v;
        // Two passes of modified Gram-Schmidt for stability.
        for (int pass = 0; pass < 2; ++pass)
            for (const AlgebraElement& e : s.basis_) w -= form(e, w) * e;
        const double nrm2 = form(w, w);
        if (nrm2 > tol * tol) s.basis_.push_back(w / std::sqrt(nrm2));
    }
    return s;
}

AlgebraElement Subspace::project(const AlgebraElement& v) const {
    AlgebraElement out = AlgebraElement::Zero(n_, n_);
    for (const AlgebraElement& e : basis_) out += form_(e, v) * e;
    return out;
}

Eigen::VectorXd Subspace::coordinates(const AlgebraElement& v) const {
    Eigen::VectorXd c(dim());
    for (int k = 0; k < dim(); ++k) c(k) = form_(basis_[k], v);
    return c;
}

AlgebraElement Subspace::element(const Eigen::VectorXd& coords) const {
    AlgebraElement out = AlgebraElement::Zero(n_, n_);
    for (int k = 0; k < dim(); ++k) out += coords(k) * basis_[k];
    return out;
}

bool Subspace::contains(const AlgebraElement& v, double tol) const {
    const AlgebraElement r = v - project(v);
    return std::sqrt(std::max(0.0, form_(r, r))) <= tol;
}

Subspace Subspace::complement_in(const Subspace& ambient, double tol) const {
    std::vector<AlgebraElement> vs;
    for (const AlgebraElement& a : ambient.basis()) vs.push_back(a - project(a));
    return span(form_, n_, vs, tol);
}

Subspace Subspace::sum(const Subspace& other, double tol) const {
    std::vector<AlgebraElement> vs = basis_;
    vs.insert(vs.end(), other.basis().begin(), other.basis().end());
    return span(form_, n_, vs, tol);
}

double Subspace::gram_residual() const {
    double worst = 0.0;
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b)
            worst = std::max(worst, std::abs(form_(basis_[a], basis_[b]) - (a == b ? 1.0 : 0.0)));
    return worst;
}

Subspace centralizer_in(const Subspace& s, const Subspace& k, double cutoff) {
    if (k.dim() == 0 || s.dim() == 0) return s;
    const int n = s.matrix_size();
    const int rows = 2 * n * n * k.dim();
    Eigen::MatrixXd m(rows, s.dim());
    for (int a = 0; a < s.dim(); ++a) {
        int r = 0;
        for (const AlgebraElement& kb : k.basis()) {
            const AlgebraElement c = bracket(kb, s.basis()[a]);
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    m(r++, a) = c(p, q).real();
                    m(r++, a) = c(p, q).imag();
                }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    std::vector<AlgebraElement> null;
    for (int col = 0; col < s.dim(); ++col) {
        const double sigma = col < sv.size() ? sv(col) : 0.0;
        if (sigma <= cutoff) null.push_back(s.element(svd.matrixV().col(col)));
    }
    return Subspace::span(s.form(), n, null);
}

CompactLieModel::CompactLieModel(int n, double form_scale)
    : roots_(RootSystem::type_a(n)), form_{form_scale} {
    if (!(form_scale > 0.0)) throw DomainError("form scale must be positive");
    std::vector<AlgebraElement> t;
    for (const Root& a : roots_.simple_basis()) t.push_back(i_cartan(coroot(a)));
    torus_ = Subspace::span(form_, n, t);
    std::vector<AlgebraElement> all = torus_.basis();
    for (const Root& r : roots_.positive()) {
        const ChevalleyTriple c = chevalley_vectors(r);
        all.push_back(c.x);
        all.push_back(c.y);
    }
    algebra_ = Subspace::span(form_, n, all);
}

ChevalleyTriple CompactLieModel::chevalley_vectors(const Root& r) const {
    if (!roots_.contains(r)) throw DomainError("not a root: " + r.label());
    const int n = roots_.n();
    const double s = 1.0 / std::sqrt(form_.scale);
    AlgebraElement e = AlgebraElement::Zero(n, n);
    AlgebraElement f = AlgebraElement::Zero(n, n);
    e(r.i - 1, r.j - 1) = s;
    f(r.j - 1, r.i - 1) = s;
    ChevalleyTriple out;
    out.e = e;
    out.x = (e - f) / std::sqrt(2.0);
    out.y = kI * (e + f) / std::sqrt(2.0);
    return out;
}

AlgebraElement CompactLieModel::i_cartan(const CartanVector& h) const {
    if (h.size() != n()) throw DomainError("Cartan vector has wrong length");
    AlgebraElement out = AlgebraElement::Zero(n(), n());
    for (int k = 0; k < n(); ++k) out(k, k) = kI * h(k);
    return out;
}

CartanVector CompactLieModel::cartan_part(const AlgebraElement& v) const {
    CartanVector h(n());
    for (int k = 0; k < n(); ++k) h(k) = v(k, k).imag();
    return h;
}

CartanVector CompactLieModel::coroot(const Root& r) const { return roots_.coroot_vector(r) / form_.scale; }

bool CompactLieModel::in_algebra(const AlgebraElement& v, double tol) const {
    if (v.rows() != n() || v.cols() != n()) return false;
    return (v + v.adjoint()).cwiseAbs().maxCoeff() <= tol && std::abs(v.trace()) <= tol;
}

}  // namespace acms
