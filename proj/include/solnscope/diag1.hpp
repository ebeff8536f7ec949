#pragma once

// Regularized least squares: min f(x) + 1/2 ||Ax - b||^2.

#include <optional>
#include <string>
#include <vector>

#include "solnscope/funcat.hpp"
#include "solnscope/linegraph.hpp"
#include "solnscope/ratlin.hpp"
#include "solnscope/setalg.hpp"

namespace solnscope {

enum class ExistReason { ViabilityFail, NotInRange, MaximalMonotone, SpecificB };
std::string to_string(ExistReason r);

struct P1Solution {
    SVec x_star, x_r_star, x_k_star, residual_r, Ax_star;
    std::string route;  // "sign-pattern", "piecewise-kkt", "dual-graph"
};

struct P1Existence {
    bool yes = false;
    ExistReason reason = ExistReason::ViabilityFail;
    std::string step;                 // which test decided: "a", "b", "c", "d"
    SetUnion ran_cap_ranAT;           // ran df  cap  ran A^T
    ConvexSet ri_cap_ranAT;           // ri ran df  cap  ran A^T
    bool zero_in_ri = false;
    std::optional<DualGraph> graph;   // m = 1 only
    std::vector<Interval1> ran_shifted;
    std::optional<bool> maximal;      // unset when not evaluated
};

// particular minimizer, canonicalized to the min-norm point of X; nullopt when X is empty
std::optional<P1Solution> solve_p1(const FuncExpr& f, const QMat& A, const QVec& b);
P1Existence existence_p1(const FuncExpr& f, const QMat& A, const QVec& b);
ConvexSet solution_set_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A);

struct P1Compactness {
    bool yes = false;
    ConvexSet conj_at_ATr, recession, rec_cap_kerA, proj_kerA_rec;
    bool sufficient = false;     // P_kerA(recession) = {0}
    bool inconclusive = false;   // sufficient test failed while the exact test passed
};
P1Compactness compactness_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A);

struct P1Uniqueness {
    bool yes = false;
    ConvexSet shifted_cap_kerA;  // (df*(A^T r) - x*) cap ker A
    ConvexSet proj_shifted;      // P_kerA(df*(A^T r) - x*)
    bool sufficient = false;
    bool inconclusive = false;
};
P1Uniqueness uniqueness_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A);

struct MoreauCheck {
    bool ok = false;
    std::string failed_premise;  // empty when both premises hold
    SVec resolvent;              // (I + A df* A^T)^{-1}(b)
    SVec lhs;                    // (I + (A df* A^T)^{-1})^{-1}(b)
    SVec Ax_star;
};
MoreauCheck moreau_check(const FuncExpr& f, const QMat& A, const QVec& b);

struct ConnectCheck {
    bool ok = false;
    ConvexSet rec_conj, ker_rec, cone_fn, slev_rec;  // all intersected with ker A
};
ConnectCheck connect_check(const P1Solution& sol, const FuncExpr& f, const QMat& A);

// 0 in df(x*) + A^T(Ax* - b), exactly
bool fermat_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A, const QVec& b);

}  // namespace solnscope
