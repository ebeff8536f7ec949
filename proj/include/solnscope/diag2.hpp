#pragma once

// Equality-constrained problem: min f(x) s.t. Ax = b.

#include <optional>
#include <string>
#include <vector>

#include "solnscope/funcat.hpp"
#include "solnscope/linegraph.hpp"
#include "solnscope/ratlin.hpp"
#include "solnscope/setalg.hpp"

namespace solnscope {

enum class P2Reason { BNotInRange, ViabilityFail, NoCertificate, Yes };
enum class Influence { NoEffect, StrictIncrease, NotApplicable };
std::string to_string(P2Reason r);
std::string to_string(Influence i);

struct DualCertificate {
    SVec v;
    SVec witness;  // A^T v, a subgradient of f at x*
};

// A^+ b when b in ran A
std::optional<QVec> range_component(const QMat& A, const QVec& b);

std::optional<DualCertificate> certificate_search(const FuncExpr& f, const QMat& A, const QVec& b);

struct P2SolutionSet {
    ConvexSet X;
    SetUnion C;              // union of df*(A^T v) over the multipliers found
    bool C_complete = true;  // false when a whole interval of multipliers qualifies and one stands for it
    std::vector<SVec> multipliers;
};
P2SolutionSet solution_set_p2(const FuncExpr& f, const QMat& A, const QVec& b, const DualCertificate& cert);

struct P2Verdict {
    bool yes = false;
    bool vacuous = false;  // X empty
    SetUnion witness;      // the set the verdict was read from
};
P2Verdict uniqueness_p2(const P2SolutionSet& S, const SVec& x_star, const QMat& A);
P2Verdict compactness_p2(const P2SolutionSet& S, const QMat& A);

struct Exactness {
    bool exact = false;                // b in dom(A |> df)
    std::vector<Interval1> dom;        // dom(A |> df) = ran(A df* A^T), m = 1
    std::optional<bool> in_resolvent_range;  // b in ran(I + d(A |> f)); m = 1 only
    std::optional<Scalar> prox;        // prox_{A |> f}(b)
    bool exact_at_prox = false;
};
// full check for m = 1; polyhedral f with m >= 2 gets the exactness verdict only; Undecidable otherwise
Exactness exactness_check(const FuncExpr& f, const QMat& A, const QVec& b);

struct P2Report {
    bool b_in_range = false;
    std::optional<QVec> x_r_star;
    bool yes = false;
    P2Reason reason = P2Reason::NoCertificate;
    SetUnion ran_cap_ranAT;
    std::optional<DualGraph> graph;  // m = 1
    std::optional<DualCertificate> cert;
    std::optional<P2SolutionSet> solution;
    std::optional<SVec> x_star;
    bool b_in_A_conj0 = false;       // b in (A o df*)(0)
    bool min_f_attained = false;     // 0 in ran df
    Influence influence = Influence::NotApplicable;
};

P2Report analyze_p2(const FuncExpr& f, const QMat& A, const QVec& b);
Influence constraint_influence(const FuncExpr& f, const QMat& A, const QVec& b);

}  // namespace solnscope
