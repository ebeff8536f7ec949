#pragma once

// The one-row operator G(v) = a . df*(v a) as a piecewise monotone graph on R.

#include <string>
#include <vector>

#include "solnscope/scalar.hpp"
#include "solnscope/setalg.hpp"

namespace solnscope {

struct FuncExpr;

// Const: c    Lin: coef*v    Log: coef*log(beta*v + gamma)    Recip: coef/(beta*v + gamma)
struct PhiTerm {
    enum Kind { Const, Lin, Log, Recip } kind = Const;
    Scalar c;
    Q coef = 0, beta = 1, gamma = 0;
};

struct Phi {
    std::vector<PhiTerm> terms;

    static Phi constant(const Scalar& c);
    Phi& operator+=(const Phi& o);
    bool is_constant() const;
    Scalar at(const Scalar& v) const;
    // one-sided limit at v; from = +1 approaches from above, -1 from below
    ExtScalar limit(const ExtScalar& v, int from) const;
    // phi(v) + k*v = y; false when no closed form is available
    bool solve(const Scalar& y, const Q& k, Scalar& v) const;
    std::string str(const std::string& var = "v") const;
};

struct OpenPiece {
    ExtScalar lo, hi;
    Phi phi;
};

// what one atom contributes: isolated points where its conjugate subdifferential
// changes shape, and open v-intervals where the image is the single value phi(v)
struct AtomLine {
    std::vector<Scalar> specials;
    std::vector<OpenPiece> intervals;
};

struct GraphPiece {
    bool point = true;
    Scalar v0;            // point piece
    Interval1 image;      // point piece: G(v0)
    ExtScalar lo, hi;     // open piece
    Phi phi;              // open piece: G(v) = {phi(v)}
};

struct DualGraph {
    std::vector<GraphPiece> pieces;  // increasing in v

    bool empty() const { return pieces.empty(); }
    // ran G, as disjoint sorted intervals
    std::vector<Interval1> range() const;
    // ran(I + G)
    std::vector<Interval1> range_shifted() const;
    // the unique r with b in r + G(r)
    bool resolvent(const Scalar& b, Scalar& r) const;
    // all v with b in G(v), increasing; UnionNotFinite when a whole interval qualifies
    std::vector<Scalar> preimages(const Scalar& b) const;
    std::string str(const std::string& var = "v") const;
};

DualGraph build_dual_graph(const FuncExpr& f, const QVec& a);

std::vector<Interval1> merge_intervals(std::vector<Interval1> v);
std::string render_intervals(const std::vector<Interval1>& v);
bool intervals_contain(const std::vector<Interval1>& v, const Scalar& s);
bool intervals_whole(const std::vector<Interval1>& v);

}  // namespace solnscope
