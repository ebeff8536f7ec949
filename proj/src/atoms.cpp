#include <optional>

#include "atoms_internal.hpp"
#include "solnscope/errors.hpp"

namespace solnscope::detail {

namespace {

LinRow row(QVec a, Scalar b, Rel rel) {
    LinRow r;
    r.a = std::move(a);
    r.b = std::move(b);
    r.rel = rel;
    return r;
}

QVec e(std::size_t n, std::size_t i) { return unit(n, i); }
QVec neg(const QVec& v) { return scale(Q(-1), v); }

Scalar smax(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0 ? a : b; }

Scalar affine(const Atom& a, const SVec& x) { return dot(a.w, x) + Scalar(a.c); }

// t with u = t w on the support of w
std::optional<Scalar> par(const SVec& u, const QVec& w) {
    std::size_t k0 = w.size();
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] != 0) {
            k0 = k;
            break;
        }
    if (k0 == w.size()) return std::nullopt;
    Scalar t = u[k0] / w[k0];
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] != 0 && u[k] != t * w[k]) return std::nullopt;
    return t;
}

std::optional<Q> parq(const QVec& u, const QVec& w) {
    auto t = par(to_svec(u), w);
    if (!t) return std::nullopt;
    return t->rat();
}

// {g : g_S = t w_S, t in T}; rows only on the support of w
std::vector<LinRow> ray_rows(std::size_t n, const QVec& w, const Interval1& T) {
    std::vector<LinRow> rows;
    std::size_t k0 = n;
    for (std::size_t k = 0; k < n; ++k)
        if (w[k] != 0) {
            if (k0 == n) {
                k0 = k;
                continue;
            }
            QVec a(n, Q(0));
            a[k] = w[k0];
            a[k0] = -w[k];
            rows.push_back(row(a, Scalar(0), Rel::Eq));
        }
    if (k0 == n) throw DomainViolation("zero affine form");
    if (T.empty) {
        rows.push_back(row(QVec(n, Q(0)), Scalar(-1), Rel::Le));
        return rows;
    }
    // t = g_k0 / w_k0
    QVec a = e(n, k0);
    a[k0] = Q(1) / w[k0];
    if (T.is_point()) {
        rows.push_back(row(a, T.lo.v, Rel::Eq));
        return rows;
    }
    if (T.hi.finite()) rows.push_back(row(a, T.hi.v, T.hi_closed ? Rel::Le : Rel::Lt));
    if (T.lo.finite()) rows.push_back(row(neg(a), -T.lo.v, T.lo_closed ? Rel::Le : Rel::Lt));
    return rows;
}

ConvexSet ray_set(std::size_t n, const QVec& w, const Interval1& T) { return ConvexSet::polyhedron(n, ray_rows(n, w, T)); }

Interval1 open_iv(const ExtScalar& lo, const ExtScalar& hi) { return Interval1::make(lo, false, hi, false); }
Interval1 closed_iv(const Scalar& lo, const Scalar& hi) { return Interval1::make(lo, true, hi, true); }

ConvexSet coord_set(std::size_t n, std::size_t i, const Interval1& I) {
    std::vector<Interval1> f(n, Interval1::whole());
    f[i] = I;
    return ConvexSet::product(f);
}

AnalyticAtom expdiff_atom(const Atom& a) {
    AnalyticAtom at;
    at.kind = AnalyticAtom::ExpHypograph;
    at.i = a.i;
    at.j = a.j;
    return at;
}

std::optional<Q> rational_sqrt(const Q& x) {
    if (x < 0) return std::nullopt;
    Z num = x.get_num(), den = x.get_den();
    Z rn = sqrt(num), rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Q(rn, rd);
}

// v-interval where alpha*v + beta lies in the open interval (lo, hi); alpha != 0
Interval1 preimage_open(const Q& alpha, const Q& beta, const ExtScalar& lo, const ExtScalar& hi) {
    auto map = [&](const ExtScalar& t) -> ExtScalar {
        if (!t.finite()) return alpha > 0 ? t : -t;
        return ExtScalar((t.v - Scalar(beta)) / alpha);
    };
    ExtScalar a = map(lo), b = map(hi);
    if (alpha < 0) std::swap(a, b);
    return open_iv(a, b);
}

Interval1 whole_line() { return Interval1::whole(); }

}  // namespace

// ---------------------------------------------------------------- evaluation

ExtendedValue h_eval(const Atom& a, const SVec& x) {
    switch (a.kind) {
        case Atom::Exp: return Scalar::exp(affine(a, x));
        case Atom::NegLog: {
            Scalar s = affine(a, x);
            if (s.sign() <= 0) return ExtScalar::pos_inf();
            return -Scalar::log(s);
        }
        case Atom::Hinge: return smax(affine(a, x), Scalar(0));
        case Atom::HingeAbs: {
            Scalar v = x[a.i].sign() < 0 ? -x[a.i] : x[a.i];
            return smax(v - Scalar(a.c), Scalar(0));
        }
        case Atom::HingeExpDiff: return smax(Scalar::exp(x[a.j]) - x[a.i], Scalar(0));
        case Atom::QuadShift: {
            Scalar d = x[a.i] - Scalar(a.c);
            return d * d / Q(2);
        }
        case Atom::IndHyperbola: {
            ConvexSet C = ConvexSet::hyperbola_region(x.size(), a.i, a.j);
            return C.contains(x) ? ExtScalar(0) : ExtScalar::pos_inf();
        }
    }
    return ExtScalar::pos_inf();
}

ConvexSet h_dom(const Atom& a, std::size_t n) {
    if (a.kind == Atom::NegLog) return ConvexSet::polyhedron(n, {row(neg(a.w), Scalar(a.c), Rel::Lt)});
    if (a.kind == Atom::IndHyperbola) return ConvexSet::hyperbola_region(n, a.i, a.j);
    return ConvexSet::whole(n);
}

ConvexSet h_subdiff(const Atom& a, const SVec& x, std::size_t n) {
    if (h_eval(a, x).inf > 0) throw DomainViolation("subdifferential outside the domain");
    std::vector<LinRow> rows;
    switch (a.kind) {
        case Atom::Exp: return ray_set(n, a.w, Interval1::point(Scalar::exp(affine(a, x))));
        case Atom::NegLog: return ray_set(n, a.w, Interval1::point(Scalar(-1) / affine(a, x)));
        case Atom::Hinge: {
            int s = affine(a, x).sign();
            if (s > 0) return ray_set(n, a.w, Interval1::point(Scalar(1)));
            if (s < 0) return ray_set(n, a.w, Interval1::point(Scalar(0)));
            return ray_set(n, a.w, closed_iv(0, 1));
        }
        case Atom::HingeAbs: {
            int sx = x[a.i].sign();
            Scalar ax = sx < 0 ? -x[a.i] : x[a.i];
            int s = (ax - Scalar(a.c)).sign();
            if (a.c == 0 && sx == 0) return coord_set(n, a.i, closed_iv(-1, 1));
            if (s < 0) return coord_set(n, a.i, Interval1::point(0));
            if (s > 0) return coord_set(n, a.i, Interval1::point(sx));
            return coord_set(n, a.i, sx > 0 ? closed_iv(0, 1) : closed_iv(-1, 0));
        }
        case Atom::HingeExpDiff: {
            Scalar E = Scalar::exp(x[a.j]);
            int s = (E - x[a.i]).sign();
            if (s < 0) return ConvexSet::polyhedron(n, {row(e(n, a.i), Scalar(0), Rel::Eq), row(e(n, a.j), Scalar(0), Rel::Eq)});
            if (s > 0) {
                rows.push_back(row(e(n, a.i), Scalar(-1), Rel::Eq));
                rows.push_back(row(e(n, a.j), E, Rel::Eq));
                return ConvexSet::polyhedron(n, rows);
            }
            // {(-t, t E) : t in [0,1]}
            QVec c = e(n, a.j);
            c[a.i] = E.rat();
            rows.push_back(row(c, Scalar(0), Rel::Eq));
            rows.push_back(row(e(n, a.i), Scalar(0), Rel::Le));
            rows.push_back(row(neg(e(n, a.i)), Scalar(1), Rel::Le));
            return ConvexSet::polyhedron(n, rows);
        }
        case Atom::QuadShift: return coord_set(n, a.i, Interval1::point(x[a.i] - Scalar(a.c)));
        case Atom::IndHyperbola: {
            Scalar p = x[a.i], q = x[a.j];
            if ((p * q - Scalar(1)).sign() > 0)
                return ConvexSet::polyhedron(n, {row(e(n, a.i), Scalar(0), Rel::Eq), row(e(n, a.j), Scalar(0), Rel::Eq)});
            // -t (q, p), t >= 0
            QVec c(n, Q(0));
            c[a.i] = p.rat();
            c[a.j] = -q.rat();
            rows.push_back(row(c, Scalar(0), Rel::Eq));
            rows.push_back(row(e(n, a.i), Scalar(0), Rel::Le));
            return ConvexSet::polyhedron(n, rows);
        }
    }
    return ConvexSet::empty(n);
}

ConvexSet h_conj(const Atom& a, const SVec& u, std::size_t n) {
    std::vector<LinRow> rows;
    switch (a.kind) {
        case Atom::Exp: {
            auto t = par(u, a.w);
            if (!t || t->sign() <= 0) return ConvexSet::empty(n);
            return ConvexSet::polyhedron(n, {row(a.w, Scalar::log(*t) - Scalar(a.c), Rel::Eq)});
        }
        case Atom::NegLog: {
            auto t = par(u, a.w);
            if (!t || t->sign() >= 0) return ConvexSet::empty(n);
            return ConvexSet::polyhedron(n, {row(a.w, Scalar(-1) / *t - Scalar(a.c), Rel::Eq)});
        }
        case Atom::Hinge: {
            auto t = par(u, a.w);
            if (!t) return ConvexSet::empty(n);
            int s0 = t->sign(), s1 = (*t - Scalar(1)).sign();
            if (s0 < 0 || s1 > 0) return ConvexSet::empty(n);
            if (s0 == 0) return ConvexSet::polyhedron(n, {row(a.w, Scalar(-a.c), Rel::Le)});
            if (s1 == 0) return ConvexSet::polyhedron(n, {row(neg(a.w), Scalar(a.c), Rel::Le)});
            return ConvexSet::polyhedron(n, {row(a.w, Scalar(-a.c), Rel::Eq)});
        }
        case Atom::HingeAbs: {
            const Scalar& t = u[a.i];
            int sm = (t + Scalar(1)).sign(), s0 = t.sign(), sp = (t - Scalar(1)).sign();
            Scalar c = a.c;
            if (sm < 0 || sp > 0) return ConvexSet::empty(n);
            if (sm == 0) return coord_set(n, a.i, Interval1::make(ExtScalar::neg_inf(), false, -c, true));
            if (sp == 0) return coord_set(n, a.i, Interval1::make(c, true, ExtScalar::pos_inf(), false));
            if (s0 == 0) return coord_set(n, a.i, closed_iv(-c, c));
            return coord_set(n, a.i, Interval1::point(s0 < 0 ? -c : c));
        }
        case Atom::HingeExpDiff: {
            const Scalar &ui = u[a.i], &uj = u[a.j];
            if (ui.is_zero() && uj.is_zero()) return ConvexSet::with_atoms(n, {}, {expdiff_atom(a)});
            if (uj.sign() <= 0) return ConvexSet::empty(n);
            int sm = (ui + Scalar(1)).sign(), s0 = ui.sign();
            if (sm < 0 || s0 >= 0) return ConvexSet::empty(n);
            if (sm == 0) {
                rows.push_back(row(e(n, a.j), Scalar::log(uj), Rel::Eq));
                rows.push_back(row(e(n, a.i), uj, Rel::Le));
                return ConvexSet::polyhedron(n, rows);
            }
            Scalar ratio = -(uj / ui);
            rows.push_back(row(e(n, a.i), ratio, Rel::Eq));
            rows.push_back(row(e(n, a.j), Scalar::log(ratio), Rel::Eq));
            return ConvexSet::polyhedron(n, rows);
        }
        case Atom::QuadShift: return coord_set(n, a.i, Interval1::point(Scalar(a.c) + u[a.i]));
        case Atom::IndHyperbola: {
            const Scalar &ui = u[a.i], &uj = u[a.j];
            if (ui.is_zero() && uj.is_zero()) return ConvexSet::hyperbola_region(n, a.i, a.j);
            if (ui.sign() >= 0 || uj.sign() >= 0) return ConvexSet::empty(n);
            auto p = rational_sqrt((uj / ui).rat());
            if (!p) throw UnsupportedProblem("irrational maximizer on the hyperbola boundary");
            rows.push_back(row(e(n, a.i), Scalar(*p), Rel::Eq));
            rows.push_back(row(e(n, a.j), Scalar(Q(1) / *p), Rel::Eq));
            return ConvexSet::polyhedron(n, rows);
        }
    }
    return ConvexSet::empty(n);
}

PolyBlock h_recession(const Atom& a, std::size_t n) {
    PolyBlock B;
    QVec zero(n, Q(0));
    switch (a.kind) {
        case Atom::Exp:
            B.domain.push_back(row(a.w, Scalar(0), Rel::Le));
            B.pieces = {zero};
            break;
        case Atom::NegLog:
            B.domain.push_back(row(neg(a.w), Scalar(0), Rel::Le));
            B.pieces = {zero};
            break;
        case Atom::Hinge: B.pieces = {a.w, zero}; break;
        case Atom::HingeAbs: B.pieces = {e(n, a.i), neg(e(n, a.i))}; break;
        case Atom::HingeExpDiff:
            B.domain.push_back(row(e(n, a.j), Scalar(0), Rel::Le));
            B.pieces = {zero, neg(e(n, a.i))};
            break;
        case Atom::QuadShift:
            B.domain.push_back(row(e(n, a.i), Scalar(0), Rel::Eq));
            B.pieces = {zero};
            break;
        case Atom::IndHyperbola:
            B.domain.push_back(row(neg(e(n, a.i)), Scalar(0), Rel::Le));
            B.domain.push_back(row(neg(e(n, a.j)), Scalar(0), Rel::Le));
            B.pieces = {zero};
            break;
    }
    return B;
}

SetUnion h_range(const Atom& a, std::size_t n) {
    SetUnion U;
    U.n = n;
    switch (a.kind) {
        case Atom::Exp: U.push(ray_set(n, a.w, open_iv(ExtScalar(0), ExtScalar::pos_inf()))); break;
        case Atom::NegLog: U.push(ray_set(n, a.w, open_iv(ExtScalar::neg_inf(), ExtScalar(0)))); break;
        case Atom::Hinge: U.push(ray_set(n, a.w, closed_iv(0, 1))); break;
        case Atom::HingeAbs: U.push(coord_set(n, a.i, closed_iv(-1, 1))); break;
        case Atom::HingeExpDiff: {
            std::vector<LinRow> rows = {row(e(n, a.i), Scalar(0), Rel::Lt), row(neg(e(n, a.i)), Scalar(1), Rel::Le),
                                        row(neg(e(n, a.j)), Scalar(0), Rel::Lt)};
            U.push(ConvexSet::polyhedron(n, rows));
            U.push(ConvexSet::polyhedron(n, {row(e(n, a.i), Scalar(0), Rel::Eq), row(e(n, a.j), Scalar(0), Rel::Eq)}));
            break;
        }
        case Atom::QuadShift: U.push(ConvexSet::whole(n)); break;
        case Atom::IndHyperbola: {
            U.push(ConvexSet::polyhedron(n, {row(e(n, a.i), Scalar(0), Rel::Lt), row(e(n, a.j), Scalar(0), Rel::Lt)}));
            U.push(ConvexSet::polyhedron(n, {row(e(n, a.i), Scalar(0), Rel::Eq), row(e(n, a.j), Scalar(0), Rel::Eq)}));
            break;
        }
    }
    return U;
}

ConvexSet h_ri_range(const Atom& a, std::size_t n) {
    switch (a.kind) {
        case Atom::Exp:
        case Atom::NegLog:
        case Atom::QuadShift: return *h_range(a, n).as_single();
        case Atom::Hinge: return ray_set(n, a.w, open_iv(ExtScalar(0), ExtScalar(1)));
        case Atom::HingeAbs: return coord_set(n, a.i, open_iv(ExtScalar(-1), ExtScalar(1)));
        case Atom::HingeExpDiff:
            return ConvexSet::polyhedron(n, {row(e(n, a.i), Scalar(0), Rel::Lt), row(neg(e(n, a.i)), Scalar(1), Rel::Lt),
                                             row(neg(e(n, a.j)), Scalar(0), Rel::Lt)});
        case Atom::IndHyperbola:
            return ConvexSet::polyhedron(n, {row(e(n, a.i), Scalar(0), Rel::Lt), row(e(n, a.j), Scalar(0), Rel::Lt)});
    }
    return ConvexSet::empty(n);
}

ConvexSet h_sublevel(const Atom& a, const Scalar& alpha, std::size_t n) {
    int sa = alpha.sign();
    if (a.kind != Atom::NegLog && sa < 0) return ConvexSet::empty(n);
    switch (a.kind) {
        case Atom::Exp:
            if (sa <= 0) return ConvexSet::empty(n);
            return ConvexSet::polyhedron(n, {row(a.w, Scalar::log(alpha) - Scalar(a.c), Rel::Le)});
        case Atom::NegLog:
            return ConvexSet::polyhedron(n, {row(neg(a.w), Scalar(a.c) - Scalar::exp(-alpha), Rel::Le)});
        case Atom::Hinge: return ConvexSet::polyhedron(n, {row(a.w, alpha - Scalar(a.c), Rel::Le)});
        case Atom::HingeAbs: return coord_set(n, a.i, closed_iv(-(alpha + Scalar(a.c)), alpha + Scalar(a.c)));
        case Atom::HingeExpDiff: {
            AnalyticAtom at = expdiff_atom(a);
            at.oi = -alpha;
            return ConvexSet::with_atoms(n, {}, {at});
        }
        case Atom::QuadShift: {
            auto r = rational_sqrt(Q(2) * alpha.rat());
            if (!r) throw UnsupportedSet("irrational sublevel radius");
            return coord_set(n, a.i, closed_iv(Scalar(a.c - *r), Scalar(a.c + *r)));
        }
        case Atom::IndHyperbola: return ConvexSet::hyperbola_region(n, a.i, a.j);
    }
    return ConvexSet::empty(n);
}

// ---------------------------------------------------------------- line structure

AtomLine h_line(const Atom& a, const QVec& dir, const QVec& p, const QVec& q, std::size_t n) {
    AtomLine L;
    std::vector<std::size_t> S = a.support(n);
    bool p_zero = true;
    for (auto k : S)
        if (p[k] != 0) p_zero = false;
    if (p_zero) {
        ConvexSet C = h_conj(a, to_svec(q), n);
        if (C.is_empty()) return L;
        QVec d(n, Q(0));
        for (auto k : S) d[k] = dir[k];
        Interval1 I = image_1d(C, d);
        if (!I.is_point()) throw UnsupportedProblem("non-monotone image on a constant piece");
        L.intervals.push_back({ExtScalar::neg_inf(), ExtScalar::pos_inf(), Phi::constant(I.lo.v)});
        return L;
    }
    auto add_special = [&](const Q& v) { L.specials.push_back(Scalar(v)); };
    auto add_interval = [&](const Interval1& I, const Phi& phi) {
        if (I.empty || I.is_point()) return;
        if (I.lo.finite()) L.specials.push_back(I.lo.v);
        if (I.hi.finite()) L.specials.push_back(I.hi.v);
        L.intervals.push_back({I.lo, I.hi, phi});
    };
    switch (a.kind) {
        case Atom::Exp:
        case Atom::NegLog:
        case Atom::Hinge: {
            auto pi = parq(p, a.w);
            auto th = parq(q, a.w);
            if (pi && th) {
                auto ka = parq(dir, a.w);
                if (!ka) throw UnsupportedProblem("image direction not aligned with the affine form");
                Q kappa = *ka;
                Phi phi;
                if (a.kind == Atom::Exp) {
                    phi.terms.push_back({PhiTerm::Log, Scalar(), kappa, *pi, *th});
                    phi.terms.push_back({PhiTerm::Const, Scalar(-kappa * a.c), 0, 1, 0});
                    Interval1 I = *pi > 0 ? open_iv(ExtScalar(Q(-*th / *pi)), ExtScalar::pos_inf())
                                          : open_iv(ExtScalar::neg_inf(), ExtScalar(Q(-*th / *pi)));
                    add_interval(I, phi);
                } else if (a.kind == Atom::NegLog) {
                    phi.terms.push_back({PhiTerm::Recip, Scalar(), -kappa, *pi, *th});
                    phi.terms.push_back({PhiTerm::Const, Scalar(-kappa * a.c), 0, 1, 0});
                    Interval1 I = *pi < 0 ? open_iv(ExtScalar(Q(-*th / *pi)), ExtScalar::pos_inf())
                                          : open_iv(ExtScalar::neg_inf(), ExtScalar(Q(-*th / *pi)));
                    add_interval(I, phi);
                } else {
                    add_special((Q(0) - *th) / *pi);
                    add_special((Q(1) - *th) / *pi);
                    add_interval(preimage_open(*pi, *th, ExtScalar(0), ExtScalar(1)),
                                 Phi::constant(Scalar(-kappa * a.c)));
                }
            } else if (!pi) {
                // single v with v p + q parallel to w: solve [p, -w] (v, t) = -q on the support
                std::vector<QVec> rows;
                QVec rhs;
                for (auto k : S) {
                    rows.push_back({p[k], -a.w[k]});
                    rhs.push_back(-q[k]);
                }
                QVec sol;
                if (solve_min_norm(QMat::from_rows(rows, 2), rhs, sol)) add_special(sol[0]);
            }
            break;
        }
        case Atom::HingeAbs: {
            Q pi = p[a.i], th = q[a.i];
            for (int t = -1; t <= 1; ++t) add_special((Q(t) - th) / pi);
            add_interval(preimage_open(pi, th, ExtScalar(-1), ExtScalar(0)), Phi::constant(Scalar(-dir[a.i] * a.c)));
            add_interval(preimage_open(pi, th, ExtScalar(0), ExtScalar(1)), Phi::constant(Scalar(dir[a.i] * a.c)));
            break;
        }
        case Atom::QuadShift: {
            Phi phi = Phi::constant(Scalar(dir[a.i] * (a.c + q[a.i])));
            phi.terms.push_back({PhiTerm::Lin, Scalar(), dir[a.i] * p[a.i], 1, 0});
            L.intervals.push_back({ExtScalar::neg_inf(), ExtScalar::pos_inf(), phi});
            break;
        }
        case Atom::HingeExpDiff: {
            Q pi = p[a.i], qi = q[a.i], pj = p[a.j], qj = q[a.j];
            // u = 0
            if (pi != 0 && qj * pi == qi * pj) add_special(-qi / pi);
            if (pi == 0 && pj != 0 && qi == 0) add_special(-qj / pj);
            if (pi != 0) {
                add_special((Q(-1) - qi) / pi);
                add_special(-qi / pi);
            }
            if (pj != 0) add_special(-qj / pj);
            // u_i in (-1,0), u_j > 0
            Interval1 Ri = pi != 0 ? preimage_open(pi, qi, ExtScalar(-1), ExtScalar(0))
                                   : ((qi > -1 && qi < 0) ? whole_line() : Interval1::none());
            Interval1 Rj = pj != 0 ? preimage_open(pj, qj, ExtScalar(0), ExtScalar::pos_inf())
                                   : (qj > 0 ? whole_line() : Interval1::none());
            Interval1 R = interval_intersect(Ri, Rj);
            if (!R.empty && !R.is_point()) {
                Phi phi;
                Q di = dir[a.i], dj = dir[a.j];
                if (pi == 0) {
                    Q beta = -pj / qi, gamma = -qj / qi;
                    phi = Phi::constant(Scalar(di * gamma));
                    phi.terms.push_back({PhiTerm::Lin, Scalar(), di * beta, 1, 0});
                    phi.terms.push_back({PhiTerm::Log, Scalar(), dj, beta, gamma});
                } else if (pj == 0) {
                    phi = Phi::constant(Scalar::log(Scalar(qj)) * dj);
                    phi.terms.push_back({PhiTerm::Recip, Scalar(), -di * qj, pi, qi});
                    phi.terms.push_back({PhiTerm::Log, Scalar(), -dj, -pi, -qi});
                } else {
                    throw UnsupportedProblem("dual line crosses the hinge-exp region in both coordinates");
                }
                add_interval(R, phi);
            }
            // u_i = -1 identically, u_j > 0
            if (pi == 0 && qi == -1 && pj != 0) {
                Phi phi;
                phi.terms.push_back({PhiTerm::Log, Scalar(), dir[a.j], pj, qj});
                add_interval(preimage_open(pj, qj, ExtScalar(0), ExtScalar::pos_inf()), phi);
            }
            break;
        }
        case Atom::IndHyperbola: {
            Q pi = p[a.i], qi = q[a.i], pj = p[a.j], qj = q[a.j];
            if (pi != 0 && qj * pi == qi * pj) add_special(-qi / pi);
            if (pi == 0 && pj != 0 && qi == 0) add_special(-qj / pj);
            Interval1 Ri = pi != 0 ? preimage_open(pi, qi, ExtScalar::neg_inf(), ExtScalar(0))
                                   : (qi < 0 ? whole_line() : Interval1::none());
            Interval1 Rj = pj != 0 ? preimage_open(pj, qj, ExtScalar::neg_inf(), ExtScalar(0))
                                   : (qj < 0 ? whole_line() : Interval1::none());
            Interval1 R = interval_intersect(Ri, Rj);
            if (!R.empty && !R.is_point()) throw UnsupportedProblem("dual line through the hyperbola's normal fan");
            break;
        }
    }
    return L;
}

// ---------------------------------------------------------------- KKT pieces

std::vector<KKTPiece> h_kkt(const Atom& a, std::size_t n) {
    std::vector<KKTPiece> out;
    QVec zero(n, Q(0));
    auto piece = [&](std::vector<LinRow> region, QVec g0, QVec g1) {
        KKTPiece k;
        k.region = std::move(region);
        k.G = QMat(n, n);
        k.g0 = std::move(g0);
        k.g1 = std::move(g1);
        out.push_back(std::move(k));
    };
    switch (a.kind) {
        case Atom::Hinge:
            piece({row(a.w, Scalar(-a.c), Rel::Lt)}, zero, zero);
            piece({row(a.w, Scalar(-a.c), Rel::Eq)}, zero, a.w);
            piece({row(neg(a.w), Scalar(a.c), Rel::Lt)}, a.w, zero);
            break;
        case Atom::HingeAbs: {
            QVec ei = e(n, a.i), mi = neg(ei);
            if (a.c == 0) {
                piece({row(ei, Scalar(0), Rel::Lt)}, mi, zero);
                piece({row(ei, Scalar(0), Rel::Eq)}, mi, scale(Q(2), ei));
                piece({row(mi, Scalar(0), Rel::Lt)}, ei, zero);
            } else {
                piece({row(ei, Scalar(-a.c), Rel::Lt)}, mi, zero);
                piece({row(ei, Scalar(-a.c), Rel::Eq)}, zero, mi);
                piece({row(ei, Scalar(a.c), Rel::Lt), row(mi, Scalar(a.c), Rel::Lt)}, zero, zero);
                piece({row(ei, Scalar(a.c), Rel::Eq)}, zero, ei);
                piece({row(mi, Scalar(-a.c), Rel::Lt)}, ei, zero);
            }
            break;
        }
        case Atom::QuadShift: {
            KKTPiece k;
            k.G = QMat(n, n);
            k.G(a.i, a.i) = 1;
            k.g0 = scale(-a.c, e(n, a.i));
            k.g1 = zero;
            out.push_back(std::move(k));
            break;
        }
        default: throw UnsupportedProblem("atom has no piecewise-linear KKT description");
    }
    return out;
}

}  // namespace solnscope::detail
