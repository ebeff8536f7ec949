#include "solnscope/ratlin.hpp"

#include <sstream>

#include "solnscope/errors.hpp"

namespace solnscope {

void check_size(std::size_t rows, std::size_t cols) {
    if (rows * cols > 10000) throw SizeLimit("matrix larger than 10^4 entries");
}

QMat::QMat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Q(0)) {
    check_size(rows, cols);
}

QMat::QMat(std::initializer_list<std::initializer_list<Q>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
        if (row.size() != c_) throw DimensionError("ragged matrix literal");
        for (const auto& v : row) a_.push_back(v);
    }
    check_size(r_, c_);
}

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows, std::size_t cols) {
    QMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QVec QMat::row(std::size_t i) const { return QVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

QVec QMat::col(std::size_t j) const {
    QVec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

QMat QMat::transpose() const {
    QMat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMat QMat::operator*(const QMat& o) const {
    if (c_ != o.r_) throw DimensionError("matrix product dimension mismatch");
    QMat p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Q& v = (*this)(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += v * o(k, j);
        }
    return p;
}

QVec QMat::operator*(const QVec& x) const {
    if (x.size() != c_) throw DimensionError("matrix-vector dimension mismatch");
    QVec y(r_, Q(0));
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

SVec QMat::apply(const SVec& x) const {
    if (x.size() != c_) throw DimensionError("matrix-vector dimension mismatch");
    SVec y(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != 0) y[i] += x[j] * (*this)(i, j);
    return y;
}

QMat QMat::operator+(const QMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionError("matrix sum dimension mismatch");
    QMat s = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) s.a_[k] += o.a_[k];
    return s;
}

QMat QMat::operator-(const QMat& o) const { return *this + o.scaled(Q(-1)); }

QMat QMat::scaled(const Q& s) const {
    QMat m = *this;
    for (auto& v : m.a_) v *= s;
    return m;
}

bool QMat::operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

bool QMat::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

std::string QMat::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << qstr((*this)(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Q inv = Q(1) / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Q f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank(const QMat& A) {
    QMat m = A;
    return rref(m).size();
}

Subspace kernel_basis(const QMat& A) {
    QMat m = A;
    auto piv = rref(m);
    Subspace S;
    S.ambient_dim = A.cols();
    std::vector<bool> is_piv(A.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_piv[f]) continue;
        QVec v(A.cols(), Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
        S.basis.push_back(v);
    }
    return S;
}

Subspace rowspace_basis(const QMat& A) {
    QMat m = A;
    auto piv = rref(m);
    Subspace S;
    S.ambient_dim = A.cols();
    for (std::size_t i = 0; i < piv.size(); ++i) S.basis.push_back(m.row(i));
    return S;
}

Subspace orthogonal_complement(const Subspace& S) {
    if (S.basis.empty()) return Subspace::whole(S.ambient_dim);
    return kernel_basis(QMat::from_rows(S.basis, S.ambient_dim));
}

QMat Subspace::basis_matrix() const {
    QMat B(ambient_dim, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < ambient_dim; ++i) B(i, j) = basis[j][i];
    return B;
}

bool Subspace::contains(const QVec& v) const {
    if (v.size() != ambient_dim) throw DimensionError("subspace membership dimension mismatch");
    if (solnscope::is_zero(v)) return true;
    if (basis.empty()) return false;
    std::vector<QVec> rows = basis;
    rows.push_back(v);
    return rank(QMat::from_rows(rows, ambient_dim)) == basis.size();
}

bool Subspace::contains(const SVec& v) const {
    // a symbolic vector lies in S iff its rational and every symbolic coefficient vector do
    if (all_rational(v)) return contains(to_qvec(v));
    Subspace perp = orthogonal_complement(*this);
    for (const auto& w : perp.basis)
        if (!dot(w, v).is_zero()) return false;
    return true;
}

Subspace Subspace::whole(std::size_t n) {
    Subspace S;
    S.ambient_dim = n;
    for (std::size_t i = 0; i < n; ++i) S.basis.push_back(unit(n, i));
    return S;
}

Subspace Subspace::zero(std::size_t n) {
    Subspace S;
    S.ambient_dim = n;
    return S;
}

Subspace Subspace::span(std::size_t n, const std::vector<QVec>& vs) {
    if (vs.empty()) return zero(n);
    return rowspace_basis(QMat::from_rows(vs, n));
}

// Full-rank factorisation A = F G with F = pivot columns of A, G = nonzero rows of rref(A);
// then A^+ = G^T (G G^T)^{-1} (F^T F)^{-1} F^T.
QMat pseudoinverse(const QMat& A) {
    QMat m = A;
    auto piv = rref(m);
    std::size_t r = piv.size();
    if (r == 0) return QMat(A.cols(), A.rows());
    QMat F(A.rows(), r), G(r, A.cols());
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < A.rows(); ++i) F(i, k) = A(i, piv[k]);
        for (std::size_t j = 0; j < A.cols(); ++j) G(k, j) = m(k, j);
    }
    auto inverse = [](const QMat& M) {
        std::size_t n = M.rows();
        QMat aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
            aug(i, n + i) = 1;
        }
        rref(aug);
        QMat inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
        return inv;
    };
    QMat Gt = G.transpose(), Ft = F.transpose();
    return Gt * inverse(G * Gt) * inverse(Ft * F) * Ft;
}

QMat projector(const Subspace& S) {
    if (S.basis.empty()) return QMat(S.ambient_dim, S.ambient_dim);
    QMat V = S.basis_matrix();
    return V * pseudoinverse(V);
}

Decomposition decompose(const QMat& A, const SVec& x) {
    if (x.size() != A.cols()) throw DimensionError("decompose: x has dimension " + std::to_string(x.size()) +
                                                   ", expected " + std::to_string(A.cols()));
    QMat P = pseudoinverse(A) * A;
    Decomposition d;
    d.x_r = P.apply(x);
    d.x_k = sub(x, d.x_r);
    return d;
}

Decomposition decompose(const QMat& A, const QVec& x) { return decompose(A, to_svec(x)); }

bool solve_min_norm(const QMat& M, const QVec& y, QVec& x) {
    QMat P = pseudoinverse(M);
    x = P * y;
    return M * x == y;
}

Q dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("dot dimension mismatch");
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Scalar dot(const QVec& a, const SVec& b) {
    if (a.size() != b.size()) throw DimensionError("dot dimension mismatch");
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += b[i] * a[i];
    return s;
}

QVec add(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("vector sum dimension mismatch");
    QVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

QVec sub(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("vector difference dimension mismatch");
    QVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

SVec add(const SVec& a, const SVec& b) {
    if (a.size() != b.size()) throw DimensionError("vector sum dimension mismatch");
    SVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

SVec sub(const SVec& a, const SVec& b) {
    if (a.size() != b.size()) throw DimensionError("vector difference dimension mismatch");
    SVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

QVec scale(const Q& s, const QVec& a) {
    QVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

bool is_zero(const QVec& a) {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

bool is_zero(const SVec& a) {
    for (const auto& v : a)
        if (!v.is_zero()) return false;
    return true;
}

QVec unit(std::size_t n, std::size_t i) {
    QVec v(n, Q(0));
    v[i] = 1;
    return v;
}

std::string vec_str(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + qstr(v[i]);
    return s + ")";
}

std::string vec_str(const SVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

}  // namespace solnscope
