#pragma once

// Brute-force numerical references. Nothing here is trusted by the exact
// modules except through rationalize() followed by exact re-verification.

#include <cstddef>
#include <functional>
#include <vector>

#include "solnscope/funcat.hpp"
#include "solnscope/ratlin.hpp"

namespace solnscope {

struct LassoSolutions {
    std::vector<QVec> solutions;            // KKT points found, deduplicated
    std::vector<std::vector<int>> patterns; // sign pattern that produced each one
    Q objective = 0;
    QVec Ax;
};

// min ||x||_1 + 1/2 ||Ax - b||^2 by enumerating the 3^n sign patterns; n <= 8
LassoSolutions lasso_enumerate(const QMat& A, const QVec& b);

struct GridSpec {
    std::vector<double> lo, hi;
    std::size_t resolution = 61;
    std::size_t rounds = 3;
    double lipschitz = 0;  // for certified_gap; 0 leaves the gap at 0
};

struct OracleResult {
    std::vector<std::vector<double>> candidates;
    double value = 0;
    double certified_gap = 0;
    std::vector<double> pitch;  // final grid spacing per coordinate
    bool boundary_hit = false;  // a candidate sits on the outer box
    bool divergent = false;     // objective keeps decreasing past the outer box boundary
};

using Objective = std::function<double(const std::vector<double>&)>;

// +inf is a legal objective value
OracleResult grid_minimize(const Objective& obj, const GridSpec& spec);

// f(x) + 1/2 ||Ax - b||^2 in doubles
Objective p1_objective(const FuncExpr& f, const QMat& A, const QVec& b);

// ISTA; stepsize <= 0 picks 1 / ||A||_F^2
OracleResult prox_grad(const FuncExpr& f, const QMat& A, const QVec& b, std::size_t steps, double stepsize,
                       std::vector<double> x0 = {});

// closest rational with denominator <= max_den
Q rationalize(double x, long max_den = 10000);

}  // namespace solnscope
