#include "acms/nomizu.hpp"

#include "acms/errors.hpp"

#include <algorithm>
#include <cmath>

namespace acms {

ReductiveSpace::ReductiveSpace(const InvariantForm& form, const Subspace& isotropy, std::vector<AlgebraElement> frame)
    : form_(form), isotropy_(isotropy), frame_(std::move(frame)), d_(static_cast<int>(frame_.size())) {
    for (const AlgebraElement& e : frame_) {
        const double b = form_(e, e);
        if (!(b > 1e-14)) throw DegenerateError("horizontal frame contains a null vector");
        bnorm_.push_back(b);
    }
    for (int a = 0; a < d_; ++a) {
        for (int b = a + 1; b < d_; ++b)
            reductive_residual_ = std::max(reductive_residual_, std::abs(form_(frame_[a], frame_[b])));
        for (const AlgebraElement& k : isotropy_.basis())
            reductive_residual_ = std::max(reductive_residual_, std::abs(form_(k, frame_[a])));
    }
    for (const AlgebraElement& k : isotropy_.basis())
        for (const AlgebraElement& e : frame_) {
            const AlgebraElement br = bracket(k, e);
            const AlgebraElement r = br - element(coords(br));
            reductive_residual_ = std::max(reductive_residual_, r.cwiseAbs().maxCoeff());
        }
    c_.assign(static_cast<std::size_t>(d_) * d_ * d_, 0.0);
    iso_.assign(static_cast<std::size_t>(d_) * d_, Eigen::MatrixXd::Zero(d_, d_));
    for (int i = 0; i < d_; ++i)
        for (int j = i + 1; j < d_; ++j) {
            const AlgebraElement br = bracket(frame_[i], frame_[j]);
            const Eigen::VectorXd h = coords(br);
            const AlgebraElement iso = br - element(h);
            const Eigen::MatrixXd ad = ad_on_horizontal(iso);
            for (int k = 0; k < d_; ++k) {
                c_[(i * d_ + j) * d_ + k] = h(k);
                c_[(j * d_ + i) * d_ + k] = -h(k);
            }
            iso_[i * d_ + j] = ad;
            iso_[j * d_ + i] = -ad;
        }
}

Eigen::VectorXd ReductiveSpace::coords(const AlgebraElement& v) const {
    Eigen::VectorXd c(d_);
    for (int k = 0; k < d_; ++k) c(k) = form_(frame_[k], v) / bnorm_[k];
    return c;
}

AlgebraElement ReductiveSpace::element(const Eigen::VectorXd& c) const {
    const int n = frame_.empty() ? isotropy_.matrix_size() : static_cast<int>(frame_.front().rows());
    AlgebraElement out = AlgebraElement::Zero(n, n);
    for (int k = 0; k < d_; ++k) out += c(k) * frame_[k];
    return out;
}

Eigen::VectorXd ReductiveSpace::bracket_h(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d_);
    for (int i = 0; i < d_; ++i) {
        if (x(i) == 0.0) continue;
        for (int j = 0; j < d_; ++j) {
            const double w = x(i) * y(j);
            if (w == 0.0) continue;
            for (int k = 0; k < d_; ++k) out(k) += w * c(i, j, k);
        }
    }
    return out;
}

Eigen::MatrixXd ReductiveSpace::isotropy_action(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d_, d_);
    for (int i = 0; i < d_; ++i) {
        if (x(i) == 0.0) continue;
        for (int j = 0; j < d_; ++j) {
            const double w = x(i) * y(j);
            if (w != 0.0) out += w * iso_[i * d_ + j];
        }
    }
    return out;
}

Eigen::MatrixXd ReductiveSpace::ad_on_horizontal(const AlgebraElement& k) const {
    Eigen::MatrixXd m(d_, d_);
    for (int j = 0; j < d_; ++j) m.col(j) = coords(bracket(k, frame_[j]));
    return m;
}

double ReductiveSpace::isotropy_invariance_residual() const {
    double worst = 0.0;
    for (const AlgebraElement& k : isotropy_.basis()) {
        const Eigen::MatrixXd m = ad_on_horizontal(k);
        worst = std::max(worst, (m + m.transpose()).cwiseAbs().maxCoeff());
    }
    return worst;
}

NomizuConnection::NomizuConnection(const ReductiveSpace& space) : space_(space) {
    const int d = space_.dim();
    l_.assign(static_cast<std::size_t>(d) * d * d, 0.0);
    ops_.assign(d, Eigen::MatrixXd::Zero(d, d));
    // U(e_i,e_j)^k = 1/2 (C(k,j,i) + C(k,i,j)); Lambda = 1/2 C + U.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const double v = 0.5 * space_.c(i, j, k) + 0.5 * (space_.c(k, j, i) + space_.c(k, i, j));
                l_[(i * d + j) * d + k] = v;
                ops_[i](k, j) = v;
            }
}

Eigen::MatrixXd NomizuConnection::op(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        if (x(i) != 0.0) out += x(i) * ops_[i];
    return out;
}

Eigen::VectorXd NomizuConnection::lambda(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return op(x) * y;
}

Eigen::VectorXd NomizuConnection::u(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return compute_U(space_, x, y);
}

Eigen::MatrixXd NomizuConnection::curvature_op(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    const Eigen::MatrixXd lx = op(x);
    const Eigen::MatrixXd ly = op(y);
    return lx * ly - ly * lx - op(space_.bracket_h(x, y)) - space_.isotropy_action(x, y);
}

Eigen::VectorXd NomizuConnection::curvature(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                            const Eigen::VectorXd& z) const {
    return curvature_op(x, y) * z;
}

double NomizuConnection::torsion_residual() const {
    double worst = 0.0;
    const int d = dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                worst = std::max(worst, std::abs(l(i, j, k) - l(j, i, k) - space_.c(i, j, k)));
    return worst;
}

double NomizuConnection::metric_residual() const {
    double worst = 0.0;
    for (int z = 0; z < dim(); ++z) worst = std::max(worst, (ops_[z] + ops_[z].transpose()).cwiseAbs().maxCoeff());
    return worst;
}

NomizuConnection lambda(const ReductiveSpace& space) { return NomizuConnection(space); }

Eigen::VectorXd compute_U(const ReductiveSpace& space, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    // 2<U(X,Y), e_k> = <X, [e_k, Y]_h> + <Y, [e_k, X]_h>; the frame is orthonormal.
    const int d = space.dim();
    Eigen::VectorXd out(d);
    for (int k = 0; k < d; ++k) {
        const Eigen::VectorXd ek = Eigen::VectorXd::Unit(d, k);
        out(k) = 0.5 * (x.dot(space.bracket_h(ek, y)) + y.dot(space.bracket_h(ek, x)));
    }
    return out;
}

Eigen::VectorXd curvature(const NomizuConnection& conn, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& z) {
    return conn.curvature(x, y, z);
}

CurvatureSymmetryResiduals curvature_symmetries(const NomizuConnection& conn) {
    CurvatureSymmetryResiduals out;
    const int d = conn.dim();
    std::vector<Eigen::MatrixXd> r(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r[i * d + j] = conn.curvature_op(conn.basis(i), conn.basis(j));
    // rm(i,j,k,l) = <R(e_i,e_j)e_k, e_l>
    auto rm = [&](int i, int j, int k, int l) { return r[i * d + j](l, k); };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            out.skew = std::max(out.skew, (r[i * d + j] + r[j * d + i]).cwiseAbs().maxCoeff());
            out.metric_skew =
                std::max(out.metric_skew, (r[i * d + j] + r[i * d + j].transpose()).cwiseAbs().maxCoeff());
            for (int k = 0; k < d; ++k) {
                const Eigen::VectorXd b = r[i * d + j].col(k) + r[j * d + k].col(i) + r[k * d + i].col(j);
                out.bianchi = std::max(out.bianchi, b.cwiseAbs().maxCoeff());
                for (int l = 0; l < d; ++l)
                    out.pair_symmetry = std::max(out.pair_symmetry, std::abs(rm(i, j, k, l) - rm(k, l, i, j)));
            }
        }
    return out;
}

InvariantTensor::InvariantTensor(int dim, std::vector<Slot> slots, ValueKind value)
    : dim_(dim), slots_(std::move(slots)), value_(value) {
    std::size_t size = static_cast<std::size_t>(value_dim());
    for (std::size_t k = 0; k < slots_.size(); ++k) size *= static_cast<std::size_t>(dim_);
    data_.assign(size, 0.0);
}

InvariantTensor InvariantTensor::vector_field(const Eigen::VectorXd& v, ValueKind kind) {
    InvariantTensor t(static_cast<int>(v.size()), {}, kind);
    t.at({}) = v;
    return t;
}

InvariantTensor InvariantTensor::endomorphism(const Eigen::MatrixXd& a, Slot in, ValueKind out) {
    InvariantTensor t(static_cast<int>(a.rows()), {in}, out);
    for (int j = 0; j < a.cols(); ++j) t.at({j}) = a.col(j);
    return t;
}

InvariantTensor InvariantTensor::metric(int dim) {
    InvariantTensor t(dim, {Slot::Tangent, Slot::Tangent}, ValueKind::Scalar);
    for (int i = 0; i < dim; ++i) t.at({i, i})(0) = 1.0;
    return t;
}

std::size_t InvariantTensor::offset(const std::vector<int>& idx) const {
    if (idx.size() != slots_.size()) throw DomainError("tensor valence mismatch");
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return off * static_cast<std::size_t>(value_dim());
}

Eigen::Map<const Eigen::VectorXd> InvariantTensor::at(const std::vector<int>& idx) const {
    return Eigen::Map<const Eigen::VectorXd>(data_.data() + offset(idx), value_dim());
}

Eigen::Map<Eigen::VectorXd> InvariantTensor::at(const std::vector<int>& idx) {
    return Eigen::Map<Eigen::VectorXd>(data_.data() + offset(idx), value_dim());
}

Eigen::VectorXd InvariantTensor::evaluate(const std::vector<Eigen::VectorXd>& args) const {
    if (args.size() != slots_.size()) throw DomainError("tensor valence mismatch");
    InvariantTensor t = *this;
    for (const Eigen::VectorXd& a : args) t = t.contract_first(a);
    return t.at({});
}

InvariantTensor InvariantTensor::contract_first(const Eigen::VectorXd& z) const {
    if (slots_.empty()) throw DomainError("cannot contract a rank-0 tensor");
    InvariantTensor out(dim_, std::vector<Slot>(slots_.begin() + 1, slots_.end()), value_);
    const std::size_t block = out.data_.size();
    for (int i = 0; i < dim_; ++i) {
        if (z(i) == 0.0) continue;
        for (std::size_t k = 0; k < block; ++k) out.data_[k] += z(i) * data_[i * block + k];
    }
    return out;
}

Eigen::MatrixXd InvariantTensor::as_matrix() const {
    if (rank() != 1 || value_ == ValueKind::Scalar) throw DomainError("as_matrix needs a rank-1 vector-valued tensor");
    Eigen::MatrixXd m(dim_, dim_);
    for (int j = 0; j < dim_; ++j) m.col(j) = at({j});
    return m;
}

double InvariantTensor::max_abs() const {
    double w = 0.0;
    for (double v : data_) w = std::max(w, std::abs(v));
    return w;
}

TensorCalculus::TensorCalculus(const NomizuConnection& conn)
    : TensorCalculus(conn, Eigen::MatrixXd::Identity(conn.dim(), conn.dim())) {}

TensorCalculus::TensorCalculus(const NomizuConnection& conn, const Eigen::MatrixXd& contact_projector)
    : conn_(conn), p_(contact_projector) {
    for (int z = 0; z < conn_.dim(); ++z) ops_contact_.push_back(p_ * conn_.op(z) * p_);
}

Eigen::MatrixXd TensorCalculus::op(int z, bool contact) const { return contact ? ops_contact_[z] : conn_.op(z); }

InvariantTensor TensorCalculus::cov_deriv(const InvariantTensor& t, const Eigen::VectorXd& z) const {
    const int d = t.dim();
    if (d != conn_.dim() || z.size() != d) throw DomainError("cov_deriv: dimension mismatch");
    const int r = t.rank();
    InvariantTensor out(d, t.slots(), t.value_kind());
    Eigen::MatrixXd lval = Eigen::MatrixXd::Zero(d, d);
    std::vector<Eigen::MatrixXd> lslot(r, Eigen::MatrixXd::Zero(d, d));
    for (int i = 0; i < d; ++i) {
        if (z(i) == 0.0) continue;
        if (t.value_kind() != ValueKind::Scalar) lval += z(i) * op(i, t.value_kind() == ValueKind::Contact);
        for (int s = 0; s < r; ++s) lslot[s] += z(i) * op(i, t.slots()[s] == Slot::Contact);
    }
    std::vector<int> idx(r, 0);
    std::size_t count = 1;
    for (int s = 0; s < r; ++s) count *= static_cast<std::size_t>(d);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t rem = c;
        for (int s = r - 1; s >= 0; --s) {
            idx[s] = static_cast<int>(rem % d);
            rem /= d;
        }
        Eigen::VectorXd v = Eigen::VectorXd::Zero(t.value_dim());
        if (t.value_kind() != ValueKind::Scalar) v = lval * t.at(idx);
        for (int s = 0; s < r; ++s) {
            std::vector<int> jdx = idx;
            for (int m = 0; m < d; ++m) {
                const double w = lslot[s](m, idx[s]);
                if (w == 0.0) continue;
                jdx[s] = m;
                v -= w * t.at(jdx);
            }
        }
        out.at(idx) = v;
    }
    return out;
}

InvariantTensor TensorCalculus::cov_deriv(const InvariantTensor& t) const {
    const int d = t.dim();
    std::vector<Slot> slots{Slot::Tangent};
    slots.insert(slots.end(), t.slots().begin(), t.slots().end());
    InvariantTensor out(d, slots, t.value_kind());
    for (int z = 0; z < d; ++z) {
        const InvariantTensor dz = cov_deriv(t, Eigen::VectorXd::Unit(d, z));
        std::vector<int> idx(slots.size(), 0);
        idx[0] = z;
        double* dst = out.at(idx).data();
        std::copy(dz.data().begin(), dz.data().end(), dst);
    }
    return out;
}

InvariantTensor cov_deriv(const TensorCalculus& calc, const InvariantTensor& t, const Eigen::VectorXd& z) {
    return calc.cov_deriv(t, z);
}

}  // namespace acms
