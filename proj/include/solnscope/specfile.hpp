#pragma once

// Problem files: one "key = value" per line, '#' starts a comment line.
//   name     = free text (optional)
//   kind     = regularized | constrained
//   function = DSL expression in x1..xn
//   A        = [[a11,a12],[a21,a22]]
//   b        = [b1,b2]
//   checks   = existence,compactness (optional)

#include <string>
#include <vector>

#include "solnscope/funcat.hpp"
#include "solnscope/ratlin.hpp"

namespace solnscope {

enum class ProblemKind { Regularized, Constrained };

struct ProblemSpec {
    std::string name;
    ProblemKind kind = ProblemKind::Regularized;
    std::string function;  // canonical DSL text of f
    FuncExpr f;
    QMat A;
    QVec b;
    std::vector<std::string> checks;  // empty runs everything
};

// names accepted by "checks"
const std::vector<std::string>& known_checks();

ProblemSpec parse_spec(const std::string& text);
std::string render_spec(const ProblemSpec& spec);
std::string render_matrix(const QMat& A);
std::string render_vector(const QVec& v);

}  // namespace solnscope
