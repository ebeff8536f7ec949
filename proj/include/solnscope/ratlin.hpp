#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "solnscope/scalar.hpp"

namespace solnscope {

// Dense matrix of exact rationals, row-major.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols);
    QMat(std::initializer_list<std::initializer_list<Q>> rows);
    static QMat identity(std::size_t n);
    static QMat from_rows(const std::vector<QVec>& rows, std::size_t cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Q& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    QVec row(std::size_t i) const;
    QVec col(std::size_t j) const;

    QMat transpose() const;
    QMat operator*(const QMat& o) const;
    QVec operator*(const QVec& x) const;
    SVec apply(const SVec& x) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QMat scaled(const Q& s) const;
    bool operator==(const QMat& o) const;
    bool is_zero() const;
    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Q> a_;
};

// Linear subspace of Q^n given by a linearly independent basis; empty basis is {0}.
struct Subspace {
    std::size_t ambient_dim = 0;
    std::vector<QVec> basis;

    std::size_t dim() const { return basis.size(); }
    bool is_zero() const { return basis.empty(); }
    bool contains(const QVec& v) const;
    bool contains(const SVec& v) const;
    // matrix with the basis vectors as columns
    QMat basis_matrix() const;
    static Subspace whole(std::size_t n);
    static Subspace zero(std::size_t n);
    static Subspace span(std::size_t n, const std::vector<QVec>& vs);
};

// Reduced row echelon form with first-nonzero pivoting. Returns the pivot columns.
std::vector<std::size_t> rref(QMat& m);
std::size_t rank(const QMat& A);

Subspace kernel_basis(const QMat& A);
Subspace rowspace_basis(const QMat& A);
Subspace orthogonal_complement(const Subspace& S);
QMat pseudoinverse(const QMat& A);
// orthogonal projector onto S
QMat projector(const Subspace& S);

struct Decomposition {
    SVec x_r;  // component in ran A^T
    SVec x_k;  // component in ker A
};
Decomposition decompose(const QMat& A, const SVec& x);
Decomposition decompose(const QMat& A, const QVec& x);

// Solve M x = y; returns the minimum-norm solution when consistent.
bool solve_min_norm(const QMat& M, const QVec& y, QVec& x);

// vector helpers
Q dot(const QVec& a, const QVec& b);
Scalar dot(const QVec& a, const SVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
SVec add(const SVec& a, const SVec& b);
SVec sub(const SVec& a, const SVec& b);
QVec scale(const Q& s, const QVec& a);
bool is_zero(const QVec& a);
bool is_zero(const SVec& a);
QVec unit(std::size_t n, std::size_t i);
std::string vec_str(const QVec& v);
std::string vec_str(const SVec& v);

void check_size(std::size_t rows, std::size_t cols);

}  // namespace solnscope
