#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "solnscope/lp.hpp"
#include "solnscope/scalar.hpp"
#include "solnscope/setalg.hpp"

namespace solnscope {

// One catalog atom, scaled by lambda > 0.
//   Exp           e^{w.x + c}
//   NegLog        -log(w.x + c)
//   Hinge         max{w.x + c, 0}
//   HingeAbs      max{|x_i| - c, 0}, c >= 0   (abs(x_i) when c = 0)
//   HingeExpDiff  max{e^{x_j} - x_i, 0}
//   QuadShift     (x_i - c)^2 / 2
//   IndHyperbola  indicator of {x_i >= 0, x_j >= 0, x_i x_j >= 1}
struct Atom {
    enum Kind { Exp, NegLog, Hinge, HingeAbs, HingeExpDiff, QuadShift, IndHyperbola } kind = Hinge;
    Q lambda = 1;
    QVec w;
    Q c = 0;
    std::size_t i = 0, j = 0;
    bool from_abs = false;  // written as abs(x_i)

    std::vector<std::size_t> support(std::size_t n) const;
    bool polyhedral() const { return kind == Hinge || kind == HingeAbs; }
    std::string dsl() const;
};

// f(x) = lin . x + sum of atoms. Norm1 is stored as one HingeAbs per coordinate.
struct FuncExpr {
    std::size_t n = 0;
    QVec lin;
    std::vector<Atom> terms;
    bool norm1 = false;  // built from norm1() alone

    static FuncExpr linear(const QVec& c);
    static FuncExpr norm_1(std::size_t n);
    static FuncExpr single(std::size_t n, const Atom& a);
    FuncExpr& add(const Atom& a);

    bool separable() const;       // atoms have pairwise disjoint supports
    bool polyhedral() const;      // linear part plus Hinge / HingeAbs atoms
    bool has_nonlinear() const { return !terms.empty(); }
};

// atom constructors
Atom atom_exp(const QVec& w, const Q& c);
Atom atom_neglog(const QVec& w, const Q& c);
Atom atom_hinge(const QVec& w, const Q& c);
Atom atom_hinge_abs(std::size_t n, std::size_t i, const Q& c);
Atom atom_abs(std::size_t n, std::size_t i);
Atom atom_hinge_expdiff(std::size_t n, std::size_t i, std::size_t j);
Atom atom_quadshift(std::size_t n, std::size_t i, const Q& a);
Atom atom_ind_hyperbola(std::size_t n, std::size_t i, std::size_t j);

ExtendedValue eval(const FuncExpr& f, const SVec& x);
ExtendedValue eval(const FuncExpr& f, const QVec& x);
ConvexSet dom(const FuncExpr& f);
ConvexSet subdiff(const FuncExpr& f, const SVec& x);
ConvexSet subdiff(const FuncExpr& f, const QVec& x);
ConvexSet conj_subdiff(const FuncExpr& f, const SVec& u);
ConvexSet conj_subdiff(const FuncExpr& f, const QVec& u);
ExtendedValue recession(const FuncExpr& f, const SVec& d);
ConvexSet recession_kernel(const FuncExpr& f);
ConvexSet recession_cone_fn(const FuncExpr& f);
SetUnion range_subdiff(const FuncExpr& f);
ConvexSet ri_range_subdiff(const FuncExpr& f);
// {x : f(x) <= alpha}
ConvexSet sublevel(const FuncExpr& f, const Scalar& alpha);
// true when f_inf >= 0 everywhere (equivalently inf over directions is attained at 0)
bool recession_nonnegative(const FuncExpr& f);

// f_inf as a polyhedral function: d in dom (rows), value max over pieces (a . d), summed over blocks
struct PolyBlock {
    std::vector<LinRow> domain;
    std::vector<QVec> pieces;
};
std::vector<PolyBlock> recession_blocks(const FuncExpr& f);

// polyhedral f as sum of max-affine blocks: f(x) = lin.x + sum_k max_p (a_p . x + b_p)
struct AffinePiece {
    QVec a;
    Q b;
};
std::vector<std::vector<AffinePiece>> max_affine_blocks(const FuncExpr& f);

// Region of x where an atom's subgradient has the form
//   g = G x + g0 + t g1,  t in [0,1]  (G, g1 may vanish)
struct KKTPiece {
    std::vector<LinRow> region;
    QMat G;
    QVec g0, g1;
};
std::vector<KKTPiece> kkt_pieces(const Atom& a, std::size_t n);
bool has_kkt_pieces(const FuncExpr& f);

// piecewise text descriptions
std::string describe_conj(const FuncExpr& f);
std::string describe_subdiff(const FuncExpr& f);
std::string describe_conj_subdiff(const FuncExpr& f);
std::string describe_recession(const FuncExpr& f);
std::string to_dsl(const FuncExpr& f);

}  // namespace solnscope
