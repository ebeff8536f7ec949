#include <sstream>

#include "solnscope/errors.hpp"
#include "solnscope/setalg.hpp"

namespace solnscope {

namespace {

std::string var(std::size_t i) { return "x" + std::to_string(i + 1); }

std::string lin_expr(const QVec& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Q c = a[i];
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        Q m = abs(c);
        if (m != 1) s += qstr(m) + "*";
        s += var(i);
    }
    return s.empty() ? "0" : s;
}

std::string shifted(std::size_t i, const Scalar& o) {
    if (o.is_zero()) return var(i);
    Scalar neg = -o;
    std::string t = neg.str();
    if (t[0] == '-') return "(" + var(i) + " - " + t.substr(1) + ")";
    return "(" + var(i) + " + " + t + ")";
}

std::string row_str(const LinRow& r) {
    QVec a = r.a;
    Scalar b = r.b;
    bool flip = false;
    for (const auto& c : a)
        if (c != 0) {
            flip = c < 0;
            break;
        }
    if (flip) {
        for (auto& c : a) c = -c;
        b = -b;
    }
    std::string op;
    switch (r.rel) {
        case Rel::Eq: op = " = "; break;
        case Rel::Le: op = flip ? " >= " : " <= "; break;
        case Rel::Lt: op = flip ? " > " : " < "; break;
    }
    return lin_expr(a) + op + b.str();
}

std::string atom_str(const AnalyticAtom& at) {
    if (at.kind == AnalyticAtom::ExpHypograph) {
        std::string lhs = at.oi.is_zero() ? var(at.i) : var(at.i) + " - " + at.oi.str();
        if (!at.oi.is_zero() && at.oi.sign() < 0) lhs = var(at.i) + " + " + (-at.oi).str();
        std::string ex = at.oj.is_zero() ? var(at.j) : shifted(at.j, at.oj);
        return lhs + " >= e^" + ex;
    }
    return shifted(at.i, at.oi) + "*" + shifted(at.j, at.oj) + " >= 1, " + shifted(at.i, at.oi) + " > 0";
}

// S equals the product of its coordinate images
bool product_by_projection(const ConvexSet& S, std::vector<Interval1>& f) {
    std::size_t n = S.ambient_dim();
    f.clear();
    for (std::size_t i = 0; i < n; ++i) f.push_back(image_1d(S, unit(n, i)));
    return set_equal(S, ConvexSet::product(f));
}

bool as_product(const ConvexSet& S, std::vector<Interval1>& f) {
    std::size_t n = S.ambient_dim();
    f.assign(n, Interval1::whole());
    for (const auto& r : S.rows()) {
        std::size_t nz = 0, idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (r.a[i] != 0) {
                ++nz;
                idx = i;
            }
        if (nz != 1) return product_by_projection(S, f);
        Q c = r.a[idx];
        Scalar v = r.b / c;
        Interval1 I;
        if (r.rel == Rel::Eq)
            I = Interval1::point(v);
        else if (c > 0)
            I = Interval1::make(ExtScalar::neg_inf(), false, ExtScalar(v), r.rel == Rel::Le);
        else
            I = Interval1::make(ExtScalar(v), r.rel == Rel::Le, ExtScalar::pos_inf(), false);
        f[idx] = interval_intersect(f[idx], I);
    }
    return true;
}

QVec primitive(QVec w) {
    Z l = 1;
    for (const auto& c : w)
        if (c != 0) l = lcm(l, Z(c.get_den()));
    Z g = 0;
    for (auto& c : w) {
        c *= Q(l);
        if (c != 0) g = gcd(g, Z(c.get_num()));
    }
    if (g != 0)
        for (auto& c : w) c /= Q(g);
    return w;
}

}  // namespace

std::string render(const ConvexSet& S) {
    std::size_t n = S.ambient_dim();
    if (S.is_empty()) return "empty";
    if (S.is_polyhedral()) {
        if (auto p = is_singleton(S)) {
            if (n == 1) return "{" + (*p)[0].str() + "}";
            return "{" + vec_str(*p) + "}";
        }
        std::vector<Interval1> f;
        if (as_product(S, f)) {
            bool all = true;
            for (const auto& I : f)
                if (!I.is_whole()) all = false;
            if (all) return n == 1 ? "R" : "R^" + std::to_string(n);
            std::string s;
            for (std::size_t i = 0; i < n; ++i) s += (i ? " x " : "") + f[i].str();
            return s;
        }
        AffineFlat F = affine_hull(S);
        if (F.directions.dim() == 1) {
            QVec w = primitive(F.directions.basis[0]);
            // x = anchor + t w with anchor orthogonal to w
            Q ww = dot(w, w);
            Interval1 I = interval_scale(Q(1) / ww, interval_shift(image_1d(S, w), -dot(w, F.anchor)));
            std::string s = "{";
            if (!is_zero(F.anchor)) s += vec_str(F.anchor) + " + ";
            s += "t*" + vec_str(w) + ": t in " + I.str() + "}";
            return s;
        }
    }
    std::vector<std::string> parts;
    for (const auto& at : S.atoms()) parts.push_back(atom_str(at));
    for (const auto& r : S.rows()) parts.push_back(row_str(r));
    std::string head = "(";
    for (std::size_t i = 0; i < n; ++i) head += (i ? "," : "") + var(i);
    head += ")";
    std::string s = "{" + head + ":";
    if (parts.empty()) s += " true";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : " ") + parts[i];
    return s + "}";
}

std::string render(const SetUnion& U) {
    if (U.members.empty()) return "empty";
    std::string s;
    for (std::size_t i = 0; i < U.members.size(); ++i) s += (i ? " U " : "") + render(U.members[i]);
    return s;
}

std::string render_point(const SVec& p) { return vec_str(p); }

}  // namespace solnscope
