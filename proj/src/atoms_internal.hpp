#pragma once

// Per-atom primitives for the unscaled atom h (lambda is applied in funcat.cpp).
// Sets returned here are cylinders: their rows only touch the atom's support.

#include <string>
#include <vector>

#include "solnscope/funcat.hpp"
#include "solnscope/linegraph.hpp"

namespace solnscope::detail {

ExtendedValue h_eval(const Atom& a, const SVec& x);
ConvexSet h_dom(const Atom& a, std::size_t n);
// subgradients of h at x, zero off the support is NOT imposed here
ConvexSet h_subdiff(const Atom& a, const SVec& x, std::size_t n);
// {x : u in dh(x)}; u is read on the support only
ConvexSet h_conj(const Atom& a, const SVec& u, std::size_t n);
PolyBlock h_recession(const Atom& a, std::size_t n);
SetUnion h_range(const Atom& a, std::size_t n);
ConvexSet h_ri_range(const Atom& a, std::size_t n);
ConvexSet h_sublevel(const Atom& a, const Scalar& alpha, std::size_t n);
// line structure of v -> image under `dir` of dh*(v p + q)
AtomLine h_line(const Atom& a, const QVec& dir, const QVec& p, const QVec& q, std::size_t n);
std::vector<KKTPiece> h_kkt(const Atom& a, std::size_t n);

// text pieces for a single atom embedded in R^n, already including lambda
std::string h_text_conj(const Atom& a, std::size_t n);
std::string h_text_subdiff(const Atom& a, std::size_t n);
std::string h_text_conj_subdiff(const Atom& a, std::size_t n);
std::string h_text_recession(const Atom& a, std::size_t n);

}  // namespace solnscope::detail
