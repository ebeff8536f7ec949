#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "solnscope/lp.hpp"
#include "solnscope/ratlin.hpp"
#include "solnscope/scalar.hpp"

namespace solnscope {

// Interval of the extended real line; open/closed ends, +-inf ends are always open.
struct Interval1 {
    bool empty = false;
    ExtScalar lo = ExtScalar::neg_inf(), hi = ExtScalar::pos_inf();
    bool lo_closed = false, hi_closed = false;

    static Interval1 none();
    static Interval1 whole();
    static Interval1 point(const Scalar& s);
    static Interval1 make(const ExtScalar& lo, bool lo_closed, const ExtScalar& hi, bool hi_closed);
    bool is_point() const;
    bool is_whole() const;
    bool contains(const Scalar& s) const;
    bool operator==(const Interval1& o) const;
    std::string str() const;
};

Interval1 interval_sum(const Interval1& a, const Interval1& b);
Interval1 interval_scale(const Q& s, const Interval1& a);
Interval1 interval_shift(const Interval1& a, const Scalar& s);
Interval1 interval_intersect(const Interval1& a, const Interval1& b);

// Non-polyhedral building block living on two coordinates (i, j):
//   ExpHypograph:  x_i - oi >= exp(x_j - oj)
//   Hyperbola:     (x_i - oi)(x_j - oj) >= 1,  x_i - oi > 0
struct AnalyticAtom {
    enum Kind { ExpHypograph, Hyperbola } kind = ExpHypograph;
    std::size_t i = 0, j = 1;
    Scalar oi, oj;
    bool operator==(const AnalyticAtom& o) const;
};

// Closed algebra of convex subsets of R^n. Every variant (empty, point,
// H-polyhedron, generated cone, product of intervals, translate, analytic atom)
// is normalised into one form: rational rows (possibly strict, symbolic rhs)
// intersected with analytic atoms whose coordinates no row touches.
class ConvexSet {
public:
    ConvexSet() = default;

    static ConvexSet empty(std::size_t n);
    static ConvexSet whole(std::size_t n);
    static ConvexSet point(const SVec& p);
    static ConvexSet point(const QVec& p);
    static ConvexSet polyhedron(std::size_t n, std::vector<LinRow> rows);
    // {x : G x <= g, E x = e}
    static ConvexSet polyhedron(const QMat& G, const SVec& g, const QMat& E, const SVec& e);
    static ConvexSet product(const std::vector<Interval1>& factors);
    static ConvexSet cone_gen(std::size_t n, const std::vector<QVec>& rays, const std::vector<QVec>& lineality);
    static ConvexSet subspace(const Subspace& S);
    static ConvexSet exp_hypograph(std::size_t n, std::size_t i, std::size_t j);
    static ConvexSet hyperbola_region(std::size_t n, std::size_t i, std::size_t j);
    static ConvexSet with_atoms(std::size_t n, std::vector<LinRow> rows, std::vector<AnalyticAtom> atoms);

    std::size_t ambient_dim() const { return n_; }
    bool is_empty() const { return empty_; }
    bool is_polyhedral() const { return atoms_.empty(); }
    const std::vector<LinRow>& rows() const { return rows_; }
    const std::vector<AnalyticAtom>& atoms() const { return atoms_; }

    ConvexSet translate(const SVec& offset) const;
    ConvexSet translate(const QVec& offset) const { return translate(to_svec(offset)); }
    // general intersection; throws UnsupportedIntersection when rows would touch atom coordinates
    ConvexSet intersect(const ConvexSet& o) const;
    // set lifted into R^n: coordinate k of this set becomes coordinate coords[k]; others free
    ConvexSet embed(const std::vector<std::size_t>& coords, std::size_t n) const;
    // linear map x -> s*x for rational s != 0
    ConvexSet scaled(const Q& s) const;
    bool contains(const SVec& x) const;
    bool contains(const QVec& x) const { return contains(to_svec(x)); }

private:
    void canonicalize();
    std::size_t n_ = 0;
    bool empty_ = true;
    std::vector<LinRow> rows_;
    std::vector<AnalyticAtom> atoms_;
};

struct AffineFlat {
    SVec anchor;
    Subspace directions;
    static AffineFlat through_origin(const Subspace& S);
    ConvexSet as_set() const;
};

// A finite list of convex sets whose union is the intended set.
struct SetUnion {
    std::size_t n = 0;
    std::vector<ConvexSet> members;
    static SetUnion of(const ConvexSet& s);
    bool is_empty() const;
    void push(const ConvexSet& s);  // drops empties and exact duplicates
    // convex hull when the union is known convex and a member contains all others; else nullopt
    std::optional<ConvexSet> as_single() const;
};

// recession cone; EmptySet for the empty set
ConvexSet recession_cone(const ConvexSet& S);
ConvexSet intersect_flat(const ConvexSet& S, const AffineFlat& F);
ConvexSet intersect_subspace(const ConvexSet& S, const Subspace& W);
bool is_bounded(const ConvexSet& S);
std::optional<SVec> is_singleton(const ConvexSet& S);
bool is_origin(const ConvexSet& S);
ConvexSet project_subspace(const ConvexSet& S, const Subspace& W);
ConvexSet normal_cone_box(const SVec& lower, const SVec& upper, const SVec& u);

// exact image {a . x : x in S}
Interval1 image_1d(const ConvexSet& S, const QVec& a);
// containment and equality
bool subset(const ConvexSet& S, const ConvexSet& T);
bool set_equal(const ConvexSet& S, const ConvexSet& T);
// affine hull as a flat; S must be polyhedral and nonempty
AffineFlat affine_hull(const ConvexSet& S);
// relative interior of a polyhedral set
ConvexSet relative_interior(const ConvexSet& S);
// tangent cone of S at x in S
ConvexSet tangent_cone(const ConvexSet& S, const SVec& x);
// minimum-norm point of a nonempty closed polyhedral set
SVec min_norm_point(const ConvexSet& S);
// Cartesian product of sets living in R^{n1}, R^{n2}, ...
ConvexSet cartesian(const std::vector<ConvexSet>& parts);
// union-level helpers
SetUnion intersect_subspace(const SetUnion& U, const Subspace& W);

// canonical ASCII rendering, e.g. "(-inf,0] x {1}"
std::string render(const ConvexSet& S);
std::string render(const SetUnion& U);
std::string render_point(const SVec& p);

}  // namespace solnscope
