#include "solnscope/linegraph.hpp"

#include <algorithm>
#include <optional>

#include "atoms_internal.hpp"
#include "solnscope/errors.hpp"
#include "solnscope/funcat.hpp"

namespace solnscope {

namespace {

ExtScalar arg_at(const PhiTerm& t, const ExtScalar& v) {
    return ext_add(ext_scale(t.beta, v), ExtScalar(t.gamma));
}

std::string arg_str(const PhiTerm& t, const std::string& var) {
    std::string s;
    if (t.beta == 1)
        s = var;
    else if (t.beta == -1)
        s = "-" + var;
    else
        s = qstr(t.beta) + "*" + var;
    if (t.gamma > 0) s += " + " + qstr(t.gamma);
    if (t.gamma < 0) s += " - " + qstr(-t.gamma);
    return s;
}

bool simple_arg(const PhiTerm& t) { return t.gamma == 0 && (t.beta == 1 || t.beta == -1); }

ExtScalar ext_log(const ExtScalar& x) {
    if (x.inf > 0) return x;
    int s = x.v.sign();
    if (s < 0) throw DomainViolation("log of a negative number");
    if (s == 0) return ExtScalar::neg_inf();
    return Scalar::log(x.v);
}

}  // namespace

// ---------------------------------------------------------------- Phi

Phi Phi::constant(const Scalar& c) {
    Phi p;
    PhiTerm t;
    t.kind = PhiTerm::Const;
    t.c = c;
    p.terms.push_back(t);
    return p;
}

Phi& Phi::operator+=(const Phi& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

bool Phi::is_constant() const {
    return std::all_of(terms.begin(), terms.end(), [](const PhiTerm& t) { return t.kind == PhiTerm::Const || t.coef == 0; });
}

Scalar Phi::at(const Scalar& v) const {
    Scalar s(0);
    for (const auto& t : terms) {
        Scalar arg = v * t.beta + Scalar(t.gamma);
        switch (t.kind) {
            case PhiTerm::Const: s += t.c; break;
            case PhiTerm::Lin: s += v * t.coef; break;
            case PhiTerm::Log:
                if (t.coef != 0) s += Scalar::log(arg) * t.coef;
                break;
            case PhiTerm::Recip:
                if (t.coef != 0) s += Scalar(t.coef) / arg;
                break;
        }
    }
    return s;
}

ExtScalar Phi::limit(const ExtScalar& v, int from) const {
    ExtScalar s(0);
    for (const auto& t : terms) {
        if (t.kind != PhiTerm::Const && t.coef == 0) continue;
        ExtScalar term;
        switch (t.kind) {
            case PhiTerm::Const: term = t.c; break;
            case PhiTerm::Lin: term = ext_scale(t.coef, v); break;
            case PhiTerm::Log: term = ext_scale(t.coef, ext_log(arg_at(t, v))); break;
            case PhiTerm::Recip: {
                ExtScalar a = arg_at(t, v);
                if (!a.finite()) {
                    term = ExtScalar(0);
                } else if (a.v.is_zero()) {
                    // argument approaches 0 with the sign of beta * from
                    int sg = (t.beta > 0 ? 1 : -1) * from * (t.coef > 0 ? 1 : -1);
                    term = sg > 0 ? ExtScalar::pos_inf() : ExtScalar::neg_inf();
                } else {
                    term = Scalar(t.coef) / a.v;
                }
                break;
            }
        }
        s = ext_add(s, term);
    }
    return s;
}

bool Phi::solve(const Scalar& y, const Q& k, Scalar& v) const {
    Scalar C(0);
    Q L = k;
    const PhiTerm* nl = nullptr;
    for (const auto& t : terms) {
        if (t.kind == PhiTerm::Const)
            C += t.c;
        else if (t.kind == PhiTerm::Lin)
            L += t.coef;
        else if (t.coef != 0) {
            if (nl) return false;
            nl = &t;
        }
    }
    Scalar rhs = y - C;
    try {
        if (!nl) {
            if (L == 0) return false;
            v = rhs / L;
            return true;
        }
        if (L != 0) return false;
        Scalar arg;
        if (nl->kind == PhiTerm::Log) {
            arg = Scalar::exp(rhs / nl->coef);
        } else {
            if (rhs.is_zero()) return false;
            arg = Scalar(nl->coef) / rhs;
        }
        v = (arg - Scalar(nl->gamma)) / nl->beta;
        return true;
    } catch (const UnsupportedSet&) {
        return false;
    }
}

std::string Phi::str(const std::string& var) const {
    Scalar C(0);
    std::vector<std::string> parts;
    for (const auto& t : terms) {
        if (t.kind == PhiTerm::Const) {
            C += t.c;
            continue;
        }
        if (t.coef == 0) continue;
        std::string body;
        Q m = abs(t.coef);
        bool neg = t.coef < 0;
        switch (t.kind) {
            case PhiTerm::Lin: body = (m == 1 ? "" : qstr(m) + "*") + var; break;
            case PhiTerm::Log: body = (m == 1 ? "" : qstr(m) + "*") + "log(" + arg_str(t, var) + ")"; break;
            case PhiTerm::Recip:
                body = qstr(m) + "/" + (simple_arg(t) && t.beta == 1 ? arg_str(t, var) : "(" + arg_str(t, var) + ")");
                break;
            default: break;
        }
        parts.push_back((neg ? "-" : "+") + body);
    }
    std::string s;
    for (const auto& p : parts) {
        if (s.empty())
            s = p[0] == '-' ? p : p.substr(1);
        else
            s += std::string(" ") + p[0] + " " + p.substr(1);
    }
    if (!C.is_zero() || s.empty()) {
        std::string cs = C.str();
        if (s.empty())
            s = cs;
        else if (cs[0] == '-')
            s += " - " + cs.substr(1);
        else
            s += " + " + cs;
    }
    return s;
}

// ---------------------------------------------------------------- intervals

std::vector<Interval1> merge_intervals(std::vector<Interval1> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](const Interval1& I) { return I.empty; }), v.end());
    std::sort(v.begin(), v.end(), [](const Interval1& a, const Interval1& b) {
        int c = a.lo.compare(b.lo);
        if (c != 0) return c < 0;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval1> out;
    for (const auto& I : v) {
        if (!out.empty()) {
            Interval1& J = out.back();
            int c = I.lo.compare(J.hi);
            if (c < 0 || (c == 0 && (I.lo_closed || J.hi_closed))) {
                int d = I.hi.compare(J.hi);
                if (d > 0 || (d == 0 && I.hi_closed)) {
                    J.hi = I.hi;
                    J.hi_closed = d > 0 ? I.hi_closed : (J.hi_closed || I.hi_closed);
                }
                continue;
            }
        }
        out.push_back(I);
    }
    return out;
}

std::string render_intervals(const std::vector<Interval1>& v) {
    if (v.empty()) return "empty";
    std::string s;
    for (const auto& I : v) s += (s.empty() ? "" : " U ") + I.str();
    return s;
}

bool intervals_contain(const std::vector<Interval1>& v, const Scalar& s) {
    return std::any_of(v.begin(), v.end(), [&](const Interval1& I) { return I.contains(s); });
}

bool intervals_whole(const std::vector<Interval1>& v) { return v.size() == 1 && v[0].is_whole(); }

// ---------------------------------------------------------------- graph

namespace {

Interval1 open_image(const GraphPiece& p, bool shifted) {
    ExtScalar a = p.phi.limit(p.lo, +1), b = p.phi.limit(p.hi, -1);
    if (shifted) {
        a = ext_add(a, p.lo);
        b = ext_add(b, p.hi);
    }
    if (!shifted && p.phi.is_constant()) return Interval1::point(a.v);
    if (a > b) std::swap(a, b);
    return Interval1::make(a, false, b, false);
}

}  // namespace

std::vector<Interval1> DualGraph::range() const {
    std::vector<Interval1> out;
    for (const auto& p : pieces) out.push_back(p.point ? p.image : open_image(p, false));
    return merge_intervals(out);
}

std::vector<Interval1> DualGraph::range_shifted() const {
    std::vector<Interval1> out;
    for (const auto& p : pieces) out.push_back(p.point ? interval_shift(p.image, p.v0) : open_image(p, true));
    return merge_intervals(out);
}

bool DualGraph::resolvent(const Scalar& b, Scalar& r) const {
    for (const auto& p : pieces) {
        if (p.point) {
            if (interval_shift(p.image, p.v0).contains(b)) {
                r = p.v0;
                return true;
            }
            continue;
        }
        if (!open_image(p, true).contains(b)) continue;
        if (!p.phi.solve(b, Q(1), r)) throw UnsupportedProblem("no closed form for the resolvent on " + p.phi.str());
        return true;
    }
    return false;
}

std::vector<Scalar> DualGraph::preimages(const Scalar& b) const {
    std::vector<Scalar> out;
    for (const auto& p : pieces) {
        if (p.point) {
            if (p.image.contains(b)) out.push_back(p.v0);
            continue;
        }
        if (p.phi.is_constant()) {
            if (p.phi.at(Scalar(0)) == b) throw UnionNotFinite("a whole interval of multipliers qualifies");
            continue;
        }
        if (!open_image(p, false).contains(b)) continue;
        Scalar v;
        if (!p.phi.solve(b, Q(0), v)) throw UnsupportedProblem("no closed form for the preimage of " + p.phi.str());
        out.push_back(v);
    }
    return out;
}

std::string DualGraph::str(const std::string& var) const {
    if (pieces.empty()) return "empty";
    std::vector<std::string> parts;
    std::vector<Interval1> cover;
    for (const auto& p : pieces) {
        if (p.point) {
            parts.push_back(p.image.str() + " if " + var + " = " + p.v0.str());
            cover.push_back(Interval1::point(p.v0));
        } else {
            Interval1 D = Interval1::make(p.lo, false, p.hi, false);
            std::string val = "{" + p.phi.str(var) + "}";
            parts.push_back(val + (D.is_whole() ? std::string() : " if " + var + " in " + D.str()));
            cover.push_back(D);
        }
    }
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
    if (!intervals_whole(merge_intervals(cover))) s += "; empty otherwise";
    return s;
}

DualGraph build_dual_graph(const FuncExpr& f, const QVec& a) {
    if (a.size() != f.n) throw DimensionError("row dimension");
    if (!f.separable()) throw UnsupportedProblem("atoms with overlapping coordinates are outside the catalog");
    std::size_t n = f.n;
    DualGraph G;
    auto point_piece = [&](const Scalar& v0) {
        SVec u(n);
        for (std::size_t k = 0; k < n; ++k) u[k] = Scalar(a[k]) * v0;
        ConvexSet X = conj_subdiff(f, u);
        if (X.is_empty()) return;
        GraphPiece p;
        p.point = true;
        p.v0 = v0;
        p.image = image_1d(X, a);
        G.pieces.push_back(p);
    };

    // coordinates no atom reads: u_k = c_k must hold
    std::vector<bool> used(n, false);
    for (const auto& t : f.terms)
        for (auto k : t.support(n)) used[k] = true;
    std::optional<Q> forced;
    for (std::size_t k = 0; k < n; ++k) {
        if (used[k]) continue;
        if (a[k] == 0) {
            if (f.lin[k] != 0) return G;
            continue;
        }
        Q v = f.lin[k] / a[k];
        if (forced && *forced != v) return G;
        forced = v;
    }
    if (forced) {
        point_piece(Scalar(*forced));
        return G;
    }

    std::vector<AtomLine> lines;
    std::vector<Scalar> specials;
    for (const auto& t : f.terms) {
        QVec p = scale(Q(1) / t.lambda, a), q = scale(Q(-1) / t.lambda, f.lin);
        lines.push_back(detail::h_line(t, a, p, q, n));
        specials.insert(specials.end(), lines.back().specials.begin(), lines.back().specials.end());
    }
    std::sort(specials.begin(), specials.end(), [](const Scalar& x, const Scalar& y) { return x < y; });
    specials.erase(std::unique(specials.begin(), specials.end()), specials.end());

    std::vector<ExtScalar> cuts = {ExtScalar::neg_inf()};
    for (const auto& s : specials) cuts.push_back(s);
    cuts.push_back(ExtScalar::pos_inf());
    for (std::size_t g = 0; g + 1 < cuts.size(); ++g) {
        if (g > 0) point_piece(cuts[g].v);
        const ExtScalar &lo = cuts[g], &hi = cuts[g + 1];
        Phi phi;
        bool all = true;
        for (const auto& L : lines) {
            const OpenPiece* hit = nullptr;
            for (const auto& I : L.intervals)
                if (I.lo <= lo && hi <= I.hi) {
                    hit = &I;
                    break;
                }
            if (!hit) {
                all = false;
                break;
            }
            phi += hit->phi;
        }
        if (!all) continue;
        GraphPiece p;
        p.point = false;
        p.lo = lo;
        p.hi = hi;
        p.phi = phi;
        G.pieces.push_back(p);
    }
    return G;
}

}  // namespace solnscope
