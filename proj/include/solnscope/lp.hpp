#pragma once

#include <cstddef>
#include <vector>

#include "solnscope/scalar.hpp"

namespace solnscope {

enum class Rel { Le, Lt, Eq };

// a . x  (<=, <, =)  b
struct LinRow {
    QVec a;
    Scalar b;
    Rel rel = Rel::Le;
};

struct LPResult {
    enum Status { Optimal, Unbounded, Infeasible } status = Infeasible;
    Scalar value;  // sup of the objective over the closure
    SVec x;        // an optimal point of the closure
};

// maximize c . x over the closure of {rows}; x is free.
LPResult lp_maximize(const std::vector<LinRow>& rows, const QVec& c, std::size_t n);

// exact feasibility of a system that may contain strict rows
bool lp_feasible(const std::vector<LinRow>& rows, std::size_t n);

// a feasible point (strict rows respected) or false
bool lp_feasible_point(const std::vector<LinRow>& rows, std::size_t n, SVec& x);

// Fourier-Motzkin: eliminate variable k (rows keep dimension, column k becomes 0).
std::vector<LinRow> fm_eliminate(const std::vector<LinRow>& rows, std::size_t k, std::size_t n);

// drop rows implied by the others; keeps the set unchanged
std::vector<LinRow> remove_redundant(const std::vector<LinRow>& rows, std::size_t n);

// scale rows to coprime integer coefficients, dedupe, drop trivial rows.
// Returns false when a trivially infeasible row (0 <= negative) is found.
bool normalize_rows(std::vector<LinRow>& rows, std::size_t n);

}  // namespace solnscope
