#pragma once

// Function expressions:
//   expr := term ("+" term)*
//   term := atom | rational "*" atom
//   atom := lin(c1,...,cn) | abs(xi) | norm1() | exp(aff) | neglog(aff) | hinge(aff)
//         | hinge(abs(xi) - c) | hinge_expdiff(xi,xj) | quadshift(xi,c) | ind_hyperbola(xi,xj)
//   aff  := signed sum of  [rational [*]] xi  and rational constants

#include <cstddef>
#include <string>

#include "solnscope/funcat.hpp"

namespace solnscope {

// n is the ambient dimension; line/column locate the text inside a larger file for error reports
FuncExpr parse_function(const std::string& text, std::size_t n, int line = 1, int column = 1);

// "p/q" or an integer, optional leading minus
Q parse_rational(const std::string& text, int line = 1, int column = 1);

}  // namespace solnscope
