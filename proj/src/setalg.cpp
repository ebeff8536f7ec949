#include "solnscope/setalg.hpp"

#include <algorithm>
#include <functional>

#include "solnscope/errors.hpp"

namespace solnscope {

// ---------------------------------------------------------------- Interval1

Interval1 Interval1::none() {
    Interval1 I;
    I.empty = true;
    return I;
}

Interval1 Interval1::whole() { return Interval1{}; }

Interval1 Interval1::point(const Scalar& s) { return make(ExtScalar(s), true, ExtScalar(s), true); }

Interval1 Interval1::make(const ExtScalar& lo, bool lo_closed, const ExtScalar& hi, bool hi_closed) {
    Interval1 I;
    I.lo = lo;
    I.hi = hi;
    I.lo_closed = lo.finite() && lo_closed;
    I.hi_closed = hi.finite() && hi_closed;
    int c = lo.compare(hi);
    if (lo.inf > 0 || hi.inf < 0 || c > 0 || (c == 0 && !(I.lo_closed && I.hi_closed))) return none();
    return I;
}

bool Interval1::is_point() const { return !empty && lo.finite() && hi.finite() && lo == hi; }

bool Interval1::is_whole() const { return !empty && lo.inf < 0 && hi.inf > 0; }

bool Interval1::contains(const Scalar& s) const {
    if (empty) return false;
    int a = lo.compare(ExtScalar(s));
    int b = ExtScalar(s).compare(hi);
    if (a > 0 || (a == 0 && !lo_closed)) return false;
    if (b > 0 || (b == 0 && !hi_closed)) return false;
    return true;
}

bool Interval1::operator==(const Interval1& o) const {
    if (empty || o.empty) return empty == o.empty;
    return lo == o.lo && hi == o.hi && lo_closed == o.lo_closed && hi_closed == o.hi_closed;
}

std::string Interval1::str() const {
    if (empty) return "empty";
    if (is_whole()) return "R";
    if (is_point()) return "{" + lo.str() + "}";
    std::string s = lo_closed ? "[" : "(";
    s += lo.str() + "," + hi.str();
    s += hi_closed ? "]" : ")";
    return s;
}

Interval1 interval_sum(const Interval1& a, const Interval1& b) {
    if (a.empty || b.empty) return Interval1::none();
    return Interval1::make(ext_add(a.lo, b.lo), a.lo_closed && b.lo_closed, ext_add(a.hi, b.hi),
                           a.hi_closed && b.hi_closed);
}

Interval1 interval_scale(const Q& s, const Interval1& a) {
    if (a.empty) return a;
    if (s == 0) return Interval1::point(Scalar(0));
    if (s > 0) return Interval1::make(ext_scale(s, a.lo), a.lo_closed, ext_scale(s, a.hi), a.hi_closed);
    return Interval1::make(ext_scale(s, a.hi), a.hi_closed, ext_scale(s, a.lo), a.lo_closed);
}

Interval1 interval_shift(const Interval1& a, const Scalar& s) { return interval_sum(a, Interval1::point(s)); }

Interval1 interval_intersect(const Interval1& a, const Interval1& b) {
    if (a.empty || b.empty) return Interval1::none();
    ExtScalar lo;
    bool lc;
    int c = a.lo.compare(b.lo);
    if (c > 0) {
        lo = a.lo;
        lc = a.lo_closed;
    } else if (c < 0) {
        lo = b.lo;
        lc = b.lo_closed;
    } else {
        lo = a.lo;
        lc = a.lo_closed && b.lo_closed;
    }
    ExtScalar hi;
    bool hc;
    c = a.hi.compare(b.hi);
    if (c < 0) {
        hi = a.hi;
        hc = a.hi_closed;
    } else if (c > 0) {
        hi = b.hi;
        hc = b.hi_closed;
    } else {
        hi = a.hi;
        hc = a.hi_closed && b.hi_closed;
    }
    return Interval1::make(lo, lc, hi, hc);
}

// ---------------------------------------------------------------- helpers

bool AnalyticAtom::operator==(const AnalyticAtom& o) const {
    return kind == o.kind && i == o.i && j == o.j && oi == o.oi && oj == o.oj;
}

namespace {

LinRow make_row(QVec a, Scalar b, Rel rel) {
    LinRow r;
    r.a = std::move(a);
    r.b = std::move(b);
    r.rel = rel;
    return r;
}

bool touches(const LinRow& r, const AnalyticAtom& at) { return r.a[at.i] != 0 || r.a[at.j] != 0; }

// eliminate the variables flagged in `drop` (indices into 0..N-1) and return rows over the kept ones
std::vector<LinRow> project_out(std::vector<LinRow> rows, std::size_t N, const std::vector<bool>& drop) {
    for (std::size_t k = 0; k < N; ++k) {
        if (!drop[k]) continue;
        rows = fm_eliminate(rows, k, N);
        if (!normalize_rows(rows, N)) {
            // trivially infeasible: encode as 0 <= -1
            LinRow bad = make_row(QVec(N, Q(0)), Scalar(-1), Rel::Le);
            return {bad};
        }
        rows = remove_redundant(rows, N);
    }
    std::vector<LinRow> out;
    for (auto& r : rows) {
        LinRow s;
        s.b = r.b;
        s.rel = r.rel;
        for (std::size_t k = 0; k < N; ++k)
            if (!drop[k]) s.a.push_back(r.a[k]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<LinRow> subspace_rows(const Subspace& W, const SVec& anchor) {
    std::vector<LinRow> rows;
    Subspace perp = orthogonal_complement(W);
    for (const auto& c : perp.basis) rows.push_back(make_row(c, dot(c, anchor), Rel::Eq));
    return rows;
}

// image of {p >= e^q} (or {pq >= 1, p > 0}) under (p, q) -> alpha p + beta q
Interval1 atom_image(AnalyticAtom::Kind kind, const Q& alpha, const Q& beta) {
    if (alpha == 0 && beta == 0) return Interval1::point(Scalar(0));
    if (kind == AnalyticAtom::ExpHypograph) {
        if (alpha == 0) return Interval1::whole();
        if (alpha < 0) return interval_scale(Q(-1), atom_image(kind, -alpha, -beta));
        if (beta > 0) return Interval1::whole();
        if (beta == 0) return Interval1::make(ExtScalar(0), false, ExtScalar::pos_inf(), false);
        // min of alpha e^q + beta q at e^q = -beta/alpha
        Q t = -beta / alpha;
        Scalar v = Scalar(-beta) + Scalar::log(Scalar(t)) * beta;
        return Interval1::make(ExtScalar(v), true, ExtScalar::pos_inf(), false);
    }
    // hyperbola region p > 0, q > 0, pq >= 1
    if (alpha < 0 && beta <= 0) return interval_scale(Q(-1), atom_image(kind, -alpha, -beta));
    if (alpha <= 0 && beta < 0) return interval_scale(Q(-1), atom_image(kind, -alpha, -beta));
    if ((alpha > 0 && beta < 0) || (alpha < 0 && beta > 0)) return Interval1::whole();
    if (alpha == 0 || beta == 0) return Interval1::make(ExtScalar(0), false, ExtScalar::pos_inf(), false);
    // 2 sqrt(alpha beta) must be rational
    Q ab = alpha * beta;
    Z num = ab.get_num(), den = ab.get_den();
    Z rn = sqrt(num), rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) throw UnsupportedSet("irrational support value of the hyperbola region");
    return Interval1::make(ExtScalar(Q(2) * Q(rn, rd)), true, ExtScalar::pos_inf(), false);
}

}  // namespace

// ---------------------------------------------------------------- ConvexSet

void ConvexSet::canonicalize() {
    if (empty_) {
        rows_.clear();
        atoms_.clear();
        return;
    }
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
        const auto& at = atoms_[a];
        if (at.i >= n_ || at.j >= n_ || at.i == at.j) throw DimensionError("analytic atom coordinates out of range");
        for (std::size_t b = a + 1; b < atoms_.size(); ++b) {
            const auto& o = atoms_[b];
            if (o.i == at.i || o.i == at.j || o.j == at.i || o.j == at.j)
                throw UnsupportedSet("analytic atoms sharing coordinates");
        }
    }
    if (!normalize_rows(rows_, n_)) {
        empty_ = true;
        rows_.clear();
        atoms_.clear();
        return;
    }
    for (const auto& r : rows_)
        for (const auto& at : atoms_)
            if (touches(r, at)) throw UnsupportedIntersection("linear constraint meets analytic atom coordinates");
    if (!lp_feasible(rows_, n_)) {
        empty_ = true;
        rows_.clear();
        atoms_.clear();
        return;
    }
    rows_ = remove_redundant(rows_, n_);
    // implicit equalities become equalities
    bool changed = false;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].rel != Rel::Le) continue;
        std::vector<LinRow> test = rows_;
        test[i].rel = Rel::Lt;
        if (!lp_feasible(test, n_)) {
            rows_[i].rel = Rel::Eq;
            changed = true;
        }
    }
    if (changed) rows_ = remove_redundant(rows_, n_);
    std::sort(rows_.begin(), rows_.end(), [](const LinRow& x, const LinRow& y) {
        if (x.rel != y.rel) return x.rel == Rel::Eq;
        return x.a > y.a;
    });
}

ConvexSet ConvexSet::empty(std::size_t n) {
    ConvexSet s;
    s.n_ = n;
    s.empty_ = true;
    return s;
}

ConvexSet ConvexSet::whole(std::size_t n) {
    ConvexSet s;
    s.n_ = n;
    s.empty_ = false;
    return s;
}

ConvexSet ConvexSet::point(const SVec& p) {
    std::vector<LinRow> rows;
    for (std::size_t i = 0; i < p.size(); ++i) rows.push_back(make_row(unit(p.size(), i), p[i], Rel::Eq));
    return polyhedron(p.size(), rows);
}

ConvexSet ConvexSet::point(const QVec& p) { return point(to_svec(p)); }

ConvexSet ConvexSet::polyhedron(std::size_t n, std::vector<LinRow> rows) { return with_atoms(n, std::move(rows), {}); }

ConvexSet ConvexSet::polyhedron(const QMat& G, const SVec& g, const QMat& E, const SVec& e) {
    std::size_t n = std::max(G.cols(), E.cols());
    if ((G.rows() && G.cols() != n) || (E.rows() && E.cols() != n) || g.size() != G.rows() || e.size() != E.rows())
        throw DimensionError("polyhedron H-representation dimension mismatch");
    std::vector<LinRow> rows;
    for (std::size_t i = 0; i < G.rows(); ++i) rows.push_back(make_row(G.row(i), g[i], Rel::Le));
    for (std::size_t i = 0; i < E.rows(); ++i) rows.push_back(make_row(E.row(i), e[i], Rel::Eq));
    return polyhedron(n, rows);
}

ConvexSet ConvexSet::with_atoms(std::size_t n, std::vector<LinRow> rows, std::vector<AnalyticAtom> atoms) {
    ConvexSet s;
    s.n_ = n;
    s.empty_ = false;
    s.rows_ = std::move(rows);
    s.atoms_ = std::move(atoms);
    s.canonicalize();
    return s;
}

ConvexSet ConvexSet::product(const std::vector<Interval1>& factors) {
    std::size_t n = factors.size();
    std::vector<LinRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& I = factors[i];
        if (I.empty) return empty(n);
        if (I.is_point()) {
            rows.push_back(make_row(unit(n, i), I.lo.v, Rel::Eq));
            continue;
        }
        if (I.lo.finite()) rows.push_back(make_row(scale(Q(-1), unit(n, i)), -I.lo.v, I.lo_closed ? Rel::Le : Rel::Lt));
        if (I.hi.finite()) rows.push_back(make_row(unit(n, i), I.hi.v, I.hi_closed ? Rel::Le : Rel::Lt));
    }
    return polyhedron(n, rows);
}

ConvexSet ConvexSet::cone_gen(std::size_t n, const std::vector<QVec>& rays, const std::vector<QVec>& lineality) {
    std::size_t k = rays.size(), l = lineality.size(), N = n + k + l;
    std::vector<LinRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
        QVec a(N, Q(0));
        a[i] = 1;
        for (std::size_t r = 0; r < k; ++r) a[n + r] = -rays[r][i];
        for (std::size_t r = 0; r < l; ++r) a[n + k + r] = -lineality[r][i];
        rows.push_back(make_row(a, Scalar(0), Rel::Eq));
    }
    for (std::size_t r = 0; r < k; ++r) rows.push_back(make_row(scale(Q(-1), unit(N, n + r)), Scalar(0), Rel::Le));
    std::vector<bool> drop(N, false);
    for (std::size_t v = n; v < N; ++v) drop[v] = true;
    return polyhedron(n, project_out(rows, N, drop));
}

ConvexSet ConvexSet::subspace(const Subspace& S) {
    return polyhedron(S.ambient_dim, subspace_rows(S, SVec(S.ambient_dim)));
}

ConvexSet ConvexSet::exp_hypograph(std::size_t n, std::size_t i, std::size_t j) {
    AnalyticAtom a;
    a.kind = AnalyticAtom::ExpHypograph;
    a.i = i;
    a.j = j;
    return with_atoms(n, {}, {a});
}

ConvexSet ConvexSet::hyperbola_region(std::size_t n, std::size_t i, std::size_t j) {
    AnalyticAtom a;
    a.kind = AnalyticAtom::Hyperbola;
    a.i = i;
    a.j = j;
    return with_atoms(n, {}, {a});
}

ConvexSet ConvexSet::translate(const SVec& o) const {
    if (o.size() != n_) throw DimensionError("translate offset dimension mismatch");
    if (empty_) return *this;
    ConvexSet s = *this;
    for (auto& r : s.rows_) r.b += dot(r.a, o);
    for (auto& a : s.atoms_) {
        a.oi += o[a.i];
        a.oj += o[a.j];
    }
    return s;
}

ConvexSet ConvexSet::intersect(const ConvexSet& o) const {
    if (o.n_ != n_) throw DimensionError("intersection dimension mismatch");
    if (empty_ || o.empty_) return empty(n_);
    std::vector<LinRow> rows = rows_;
    rows.insert(rows.end(), o.rows_.begin(), o.rows_.end());
    std::vector<AnalyticAtom> atoms = atoms_;
    for (const auto& a : o.atoms_) {
        bool dup = false;
        for (const auto& b : atoms)
            if (a == b) dup = true;
        if (!dup) atoms.push_back(a);
    }
    return with_atoms(n_, rows, atoms);
}

ConvexSet ConvexSet::embed(const std::vector<std::size_t>& coords, std::size_t n) const {
    if (coords.size() != n_) throw DimensionError("embed coordinate list mismatch");
    if (empty_) return empty(n);
    std::vector<LinRow> rows;
    for (const auto& r : rows_) {
        QVec a(n, Q(0));
        for (std::size_t k = 0; k < n_; ++k) a[coords[k]] = r.a[k];
        rows.push_back(make_row(a, r.b, r.rel));
    }
    std::vector<AnalyticAtom> atoms = atoms_;
    for (auto& a : atoms) {
        a.i = coords[a.i];
        a.j = coords[a.j];
    }
    return with_atoms(n, rows, atoms);
}

ConvexSet ConvexSet::scaled(const Q& s) const {
    if (s == 0) throw DomainViolation("set scaling by zero");
    if (empty_) return *this;
    if (s == 1) return *this;
    if (!atoms_.empty()) throw UnsupportedSet("scaling of an analytic atom");
    std::vector<LinRow> rows = rows_;
    for (auto& r : rows) {
        r.b *= s;
        if (s < 0) {
            for (auto& v : r.a) v = -v;
            r.b = -r.b;
        }
    }
    return polyhedron(n_, rows);
}

bool ConvexSet::contains(const SVec& x) const {
    if (x.size() != n_) throw DimensionError("membership dimension mismatch");
    if (empty_) return false;
    for (const auto& r : rows_) {
        int s = (dot(r.a, x) - r.b).sign();
        if (r.rel == Rel::Eq ? s != 0 : (r.rel == Rel::Le ? s > 0 : s >= 0)) return false;
    }
    for (const auto& a : atoms_) {
        Scalar p = x[a.i] - a.oi, q = x[a.j] - a.oj;
        if (a.kind == AnalyticAtom::ExpHypograph) {
            if ((p - Scalar::exp(q)).sign() < 0) return false;
        } else {
            if (p.sign() <= 0 || q.sign() <= 0) return false;
            if ((p * q - Scalar(1)).sign() < 0) return false;
        }
    }
    return true;
}

AffineFlat AffineFlat::through_origin(const Subspace& S) {
    AffineFlat F;
    F.anchor.assign(S.ambient_dim, Scalar());
    F.directions = S;
    return F;
}

ConvexSet AffineFlat::as_set() const {
    return ConvexSet::polyhedron(directions.ambient_dim, subspace_rows(directions, anchor));
}

// ---------------------------------------------------------------- SetUnion

SetUnion SetUnion::of(const ConvexSet& s) {
    SetUnion U;
    U.n = s.ambient_dim();
    U.push(s);
    return U;
}

bool SetUnion::is_empty() const { return members.empty(); }

void SetUnion::push(const ConvexSet& s) {
    if (s.is_empty()) return;
    for (const auto& m : members) {
        bool same = false;
        try {
            same = set_equal(m, s);
        } catch (const Error&) {
            same = false;
        }
        if (same) return;
    }
    members.push_back(s);
}

std::optional<ConvexSet> SetUnion::as_single() const {
    if (members.empty()) return ConvexSet::empty(n);
    if (members.size() == 1) return members[0];
    for (const auto& m : members) {
        bool all = true;
        for (const auto& o : members) {
            try {
                if (!subset(o, m)) all = false;
            } catch (const Error&) {
                all = false;
            }
            if (!all) break;
        }
        if (all) return m;
    }
    return std::nullopt;
}

SetUnion intersect_subspace(const SetUnion& U, const Subspace& W) {
    SetUnion out;
    out.n = U.n;
    for (const auto& m : U.members) out.push(intersect_subspace(m, W));
    return out;
}

// ---------------------------------------------------------------- operations

ConvexSet recession_cone(const ConvexSet& S) {
    if (S.is_empty()) throw EmptySet("recession cone of the empty set");
    std::size_t n = S.ambient_dim();
    std::vector<LinRow> rows;
    for (const auto& r : S.rows()) rows.push_back(make_row(r.a, Scalar(0), r.rel == Rel::Eq ? Rel::Eq : Rel::Le));
    for (const auto& a : S.atoms()) {
        rows.push_back(make_row(scale(Q(-1), unit(n, a.i)), Scalar(0), Rel::Le));
        if (a.kind == AnalyticAtom::ExpHypograph)
            rows.push_back(make_row(unit(n, a.j), Scalar(0), Rel::Le));
        else
            rows.push_back(make_row(scale(Q(-1), unit(n, a.j)), Scalar(0), Rel::Le));
    }
    return ConvexSet::polyhedron(n, rows);
}

ConvexSet intersect_flat(const ConvexSet& S, const AffineFlat& F) {
    std::size_t n = S.ambient_dim();
    if (F.anchor.size() != n || F.directions.ambient_dim != n) throw DimensionError("flat dimension mismatch");
    if (S.is_empty()) return S;
    std::vector<LinRow> frows = subspace_rows(F.directions, F.anchor);
    std::vector<LinRow> rows = S.rows();
    rows.insert(rows.end(), frows.begin(), frows.end());
    std::vector<AnalyticAtom> kept;
    for (const auto& at : S.atoms()) {
        bool hit = false;
        for (const auto& r : frows)
            if (touches(r, at)) hit = true;
        if (!hit) {
            kept.push_back(at);
            continue;
        }
        bool vi = false, vj = false;  // coordinate varies along the flat
        for (const auto& w : F.directions.basis) {
            if (w[at.i] != 0) vi = true;
            if (w[at.j] != 0) vj = true;
        }
        Scalar ci = F.anchor[at.i] - at.oi, cj = F.anchor[at.j] - at.oj;
        bool expk = at.kind == AnalyticAtom::ExpHypograph;
        if (!vi && !vj) {
            SVec probe(n);
            probe[at.i] = F.anchor[at.i];
            probe[at.j] = F.anchor[at.j];
            ConvexSet single = ConvexSet::with_atoms(n, {}, {at});
            if (!single.contains(probe)) return ConvexSet::empty(n);
        } else if (!vj) {
            if (expk) {
                rows.push_back(make_row(scale(Q(-1), unit(n, at.i)), -(at.oi + Scalar::exp(cj)), Rel::Le));
            } else {
                if (cj.sign() <= 0) return ConvexSet::empty(n);
                rows.push_back(make_row(scale(Q(-1), unit(n, at.i)), -(at.oi + Scalar(1) / cj), Rel::Le));
            }
        } else if (!vi) {
            if (ci.sign() <= 0) return ConvexSet::empty(n);
            if (expk) {
                rows.push_back(make_row(unit(n, at.j), at.oj + Scalar::log(ci), Rel::Le));
            } else {
                rows.push_back(make_row(scale(Q(-1), unit(n, at.j)), -(at.oj + Scalar(1) / ci), Rel::Le));
            }
        } else {
            throw UnsupportedIntersection("analytic atom meets a flat moving both of its coordinates");
        }
    }
    return ConvexSet::with_atoms(n, rows, kept);
}

ConvexSet intersect_subspace(const ConvexSet& S, const Subspace& W) {
    return intersect_flat(S, AffineFlat::through_origin(W));
}

AffineFlat affine_hull(const ConvexSet& S) {
    if (S.is_empty()) throw EmptySet("affine hull of the empty set");
    if (!S.is_polyhedral()) throw UnsupportedSet("affine hull of an analytic atom");
    std::size_t n = S.ambient_dim();
    std::vector<QVec> E;
    SVec e;
    for (const auto& r : S.rows())
        if (r.rel == Rel::Eq) {
            E.push_back(r.a);
            e.push_back(r.b);
        }
    AffineFlat F;
    if (E.empty()) {
        F.anchor.assign(n, Scalar());
        F.directions = Subspace::whole(n);
        return F;
    }
    QMat M = QMat::from_rows(E, n);
    F.anchor = pseudoinverse(M).apply(e);
    F.directions = kernel_basis(M);
    return F;
}

std::optional<SVec> is_singleton(const ConvexSet& S) {
    if (S.is_empty() || !S.is_polyhedral()) return std::nullopt;
    AffineFlat F = affine_hull(S);
    if (F.directions.dim() != 0) return std::nullopt;
    return F.anchor;
}

bool is_origin(const ConvexSet& S) {
    auto p = is_singleton(S);
    return p && is_zero(*p);
}

bool is_bounded(const ConvexSet& S) {
    if (S.is_empty()) return true;
    return is_origin(recession_cone(S));
}

ConvexSet relative_interior(const ConvexSet& S) {
    if (S.is_empty()) return S;
    if (!S.is_polyhedral()) throw UnsupportedSet("relative interior of an analytic atom");
    std::vector<LinRow> rows = S.rows();
    for (auto& r : rows)
        if (r.rel == Rel::Le) r.rel = Rel::Lt;
    return ConvexSet::polyhedron(S.ambient_dim(), rows);
}

ConvexSet project_subspace(const ConvexSet& S, const Subspace& W) {
    std::size_t n = S.ambient_dim();
    if (W.ambient_dim != n) throw DimensionError("projection dimension mismatch");
    if (S.is_empty()) return S;
    std::size_t k = W.dim();
    if (k == 0) return ConvexSet::point(SVec(n));
    // which coordinates does W keep, if it is axis aligned
    std::vector<bool> keep(n, false);
    bool axis = true;
    QMat P = projector(W);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Q v = P(i, j);
            if (i == j) {
                if (v == 1)
                    keep[i] = true;
                else if (v != 0)
                    axis = false;
            } else if (v != 0) {
                axis = false;
            }
        }
    if (!S.is_polyhedral()) {
        if (!axis) throw UnsupportedProjection("analytic atom projected along a non-coordinate subspace");
        std::vector<LinRow> rows;
        std::vector<bool> drop(n, false);
        for (std::size_t i = 0; i < n; ++i) drop[i] = !keep[i];
        // rows never touch atom coordinates, so they project on their own
        std::vector<LinRow> pr = project_out(S.rows(), n, drop);
        std::vector<std::size_t> kept_idx;
        for (std::size_t i = 0; i < n; ++i)
            if (keep[i]) kept_idx.push_back(i);
        for (auto& r : pr) {
            QVec a(n, Q(0));
            for (std::size_t t = 0; t < kept_idx.size(); ++t) a[kept_idx[t]] = r.a[t];
            rows.push_back(make_row(a, r.b, r.rel));
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!keep[i]) rows.push_back(make_row(unit(n, i), Scalar(0), Rel::Eq));
        std::vector<AnalyticAtom> atoms;
        for (const auto& a : S.atoms()) {
            bool ki = keep[a.i], kj = keep[a.j];
            if (ki && kj) {
                atoms.push_back(a);
            } else if (ki) {
                rows.push_back(make_row(scale(Q(-1), unit(n, a.i)), -a.oi, Rel::Lt));
            } else if (kj && a.kind == AnalyticAtom::Hyperbola) {
                rows.push_back(make_row(scale(Q(-1), unit(n, a.j)), -a.oj, Rel::Lt));
            }
        }
        return ConvexSet::with_atoms(n, rows, atoms);
    }
    // polyhedral: variables (x, z) with z = M x, M = (B^T B)^{-1} B^T; eliminate x
    QMat B = W.basis_matrix();
    QMat M = pseudoinverse(B);
    std::size_t N = n + k;
    std::vector<LinRow> rows;
    for (const auto& r : S.rows()) {
        QVec a(N, Q(0));
        for (std::size_t i = 0; i < n; ++i) a[i] = r.a[i];
        rows.push_back(make_row(a, r.b, r.rel));
    }
    for (std::size_t t = 0; t < k; ++t) {
        QVec a(N, Q(0));
        for (std::size_t i = 0; i < n; ++i) a[i] = -M(t, i);
        a[n + t] = 1;
        rows.push_back(make_row(a, Scalar(0), Rel::Eq));
    }
    std::vector<bool> drop(N, false);
    for (std::size_t i = 0; i < n; ++i) drop[i] = true;
    std::vector<LinRow> zr = project_out(rows, N, drop);
    // back to y = B z, i.e. z = M y on W
    std::vector<LinRow> out = subspace_rows(W, SVec(n));
    for (const auto& r : zr) {
        QVec a(n, Q(0));
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t i = 0; i < n; ++i) a[i] += r.a[t] * M(t, i);
        out.push_back(make_row(a, r.b, r.rel));
    }
    return ConvexSet::polyhedron(n, out);
}

ConvexSet normal_cone_box(const SVec& lower, const SVec& upper, const SVec& u) {
    std::size_t n = u.size();
    if (lower.size() != n || upper.size() != n) throw DimensionError("normal cone box dimension mismatch");
    std::vector<Interval1> f;
    for (std::size_t i = 0; i < n; ++i) {
        int a = (u[i] - lower[i]).sign(), b = (upper[i] - u[i]).sign();
        if (a < 0 || b < 0) return ConvexSet::empty(n);
        if (a == 0 && b == 0)
            f.push_back(Interval1::whole());
        else if (a == 0)
            f.push_back(Interval1::make(ExtScalar::neg_inf(), false, ExtScalar(0), true));
        else if (b == 0)
            f.push_back(Interval1::make(ExtScalar(0), true, ExtScalar::pos_inf(), false));
        else
            f.push_back(Interval1::point(Scalar(0)));
    }
    return ConvexSet::product(f);
}

Interval1 image_1d(const ConvexSet& S, const QVec& a) {
    std::size_t n = S.ambient_dim();
    if (a.size() != n) throw DimensionError("image functional dimension mismatch");
    if (S.is_empty()) return Interval1::none();
    QVec rest = a;
    Interval1 acc = Interval1::point(Scalar(0));
    for (const auto& at : S.atoms()) {
        rest[at.i] = 0;
        rest[at.j] = 0;
        Interval1 I = atom_image(at.kind, a[at.i], a[at.j]);
        acc = interval_sum(acc, interval_shift(I, at.oi * a[at.i] + at.oj * a[at.j]));
    }
    if (is_zero(rest)) return acc;
    const auto& rows = S.rows();
    auto side = [&](const QVec& c, ExtScalar& val, bool& closed) {
        LPResult r = lp_maximize(rows, c, n);
        if (r.status == LPResult::Unbounded) {
            val = ExtScalar::pos_inf();
            closed = false;
            return;
        }
        if (r.status != LPResult::Optimal) throw EmptySet("image of an empty set");
        val = ExtScalar(r.value);
        std::vector<LinRow> t = rows;
        t.push_back(make_row(c, r.value, Rel::Eq));
        closed = lp_feasible(t, n);
    };
    ExtScalar hi, lo;
    bool hc, lc;
    side(rest, hi, hc);
    side(scale(Q(-1), rest), lo, lc);
    lo = -lo;
    return interval_sum(acc, Interval1::make(lo, lc, hi, hc));
}

bool subset(const ConvexSet& S, const ConvexSet& T) {
    if (S.ambient_dim() != T.ambient_dim()) throw DimensionError("subset dimension mismatch");
    if (S.is_empty()) return true;
    if (T.is_empty()) return false;
    for (const auto& at : T.atoms()) {
        bool found = false;
        for (const auto& as : S.atoms())
            if (as == at) found = true;
        if (!found) throw UnsupportedSet("containment in an analytic atom not shared structurally");
    }
    for (const auto& r : T.rows()) {
        Interval1 I = image_1d(S, r.a);
        if (r.rel == Rel::Eq) {
            if (!(I.is_point() && I.lo.v == r.b)) return false;
            continue;
        }
        int c = I.hi.compare(ExtScalar(r.b));
        if (c > 0) return false;
        if (c == 0 && r.rel == Rel::Lt && I.hi_closed) return false;
    }
    return true;
}

bool set_equal(const ConvexSet& S, const ConvexSet& T) { return subset(S, T) && subset(T, S); }

ConvexSet tangent_cone(const ConvexSet& S, const SVec& x) {
    std::size_t n = S.ambient_dim();
    if (!S.contains(x)) throw DomainViolation("tangent cone at a point outside the set");
    std::vector<LinRow> rows;
    for (const auto& r : S.rows()) {
        if (r.rel == Rel::Eq) {
            rows.push_back(make_row(r.a, Scalar(0), Rel::Eq));
        } else if ((dot(r.a, x) - r.b).sign() == 0) {
            rows.push_back(make_row(r.a, Scalar(0), Rel::Le));
        }
    }
    for (const auto& a : S.atoms()) {
        Scalar p = x[a.i] - a.oi, q = x[a.j] - a.oj;
        if (a.kind == AnalyticAtom::ExpHypograph) {
            Scalar eq = Scalar::exp(q);
            if ((p - eq).sign() > 0) continue;
            // e^q d_j - d_i <= 0
            QVec c(n, Q(0));
            c[a.i] = -1;
            c[a.j] = eq.rat();
            rows.push_back(make_row(c, Scalar(0), Rel::Le));
        } else {
            if ((p * q - Scalar(1)).sign() > 0) continue;
            QVec c(n, Q(0));
            c[a.i] = -q.rat();
            c[a.j] = -p.rat();
            rows.push_back(make_row(c, Scalar(0), Rel::Le));
        }
    }
    return ConvexSet::polyhedron(n, rows);
}

SVec min_norm_point(const ConvexSet& S) {
    if (S.is_empty()) throw EmptySet("minimum-norm point of the empty set");
    if (!S.is_polyhedral()) throw UnsupportedSet("minimum-norm point of an analytic atom");
    std::size_t n = S.ambient_dim();
    std::vector<LinRow> eqs, ins;
    for (const auto& r : S.rows()) (r.rel == Rel::Eq ? eqs : ins).push_back(r);
    std::size_t m = ins.size();
    std::vector<std::size_t> pick;
    std::optional<SVec> best;
    // KKT by enumeration of linearly independent active sets, smallest first
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) -> bool {
        if (left == 0) {
            std::vector<QVec> M;
            SVec rhs;
            for (const auto& e : eqs) {
                M.push_back(e.a);
                rhs.push_back(e.b);
            }
            for (auto p : pick) {
                M.push_back(ins[p].a);
                rhs.push_back(ins[p].b);
            }
            SVec x(n);
            if (!M.empty()) {
                QMat A = QMat::from_rows(M, n);
                if (rank(A) != M.size()) return false;
                x = pseudoinverse(A).apply(rhs);
                // multipliers: x = -A^T lambda
                QMat AAt = A * A.transpose();
                SVec lam = pseudoinverse(AAt).apply(A.apply(x));
                for (std::size_t t = eqs.size(); t < M.size(); ++t)
                    if (lam[t].sign() > 0) return false;  // lambda = -lam must be >= 0
            }
            for (const auto& r : ins)
                if ((dot(r.a, x) - r.b).sign() > 0) return false;
            best = x;
            return true;
        }
        for (std::size_t i = start; i + left <= m; ++i) {
            pick.push_back(i);
            if (rec(i + 1, left - 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (std::size_t sz = 0; sz <= std::min(m, n); ++sz) {
        pick.clear();
        if (rec(0, sz)) return *best;
    }
    throw Error("minimum-norm enumeration found no KKT point");
}

ConvexSet cartesian(const std::vector<ConvexSet>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.ambient_dim();
    std::vector<LinRow> rows;
    std::vector<AnalyticAtom> atoms;
    std::size_t off = 0;
    for (const auto& p : parts) {
        if (p.is_empty()) return ConvexSet::empty(n);
        for (const auto& r : p.rows()) {
            QVec a(n, Q(0));
            for (std::size_t k = 0; k < p.ambient_dim(); ++k) a[off + k] = r.a[k];
            rows.push_back(make_row(a, r.b, r.rel));
        }
        for (auto at : p.atoms()) {
            at.i += off;
            at.j += off;
            atoms.push_back(at);
        }
        off += p.ambient_dim();
    }
    return ConvexSet::with_atoms(n, rows, atoms);
}

}  // namespace solnscope
