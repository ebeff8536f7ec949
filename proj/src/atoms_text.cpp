#include "atoms_internal.hpp"
#include "solnscope/errors.hpp"

namespace solnscope::detail {

namespace {

std::string nm(char p, std::size_t i, std::size_t n) {
    if (n == 1) return std::string(1, p);
    return std::string(1, p) + std::to_string(i + 1);
}

// "u = (0,0)" or "u in (0,1) x {0}"
std::string region(char p, const ConvexSet& R) {
    std::string v(1, p);
    if (auto pt = is_singleton(R)) {
        if (R.ambient_dim() == 1) return v + " = " + (*pt)[0].str();
        return v + " = " + vec_str(*pt);
    }
    return v + " in " + render(R);
}

// product with factor strings on chosen coordinates and `rest` elsewhere
std::string product(std::size_t n, const std::vector<std::pair<std::size_t, std::string>>& f, const std::string& rest) {
    std::vector<std::string> parts(n, rest);
    for (const auto& [k, s] : f) parts[k] = s;
    std::string out;
    for (std::size_t k = 0; k < n; ++k) out += (k ? " x " : "") + parts[k];
    return out;
}

// tuple "(a,b,0)" with entries on chosen coordinates, zero elsewhere
std::string tuple(std::size_t n, const std::vector<std::pair<std::size_t, std::string>>& f) {
    std::vector<std::string> parts(n, "0");
    for (const auto& [k, s] : f) parts[k] = s;
    if (n == 1) return parts[0];
    std::string out = "(";
    for (std::size_t k = 0; k < n; ++k) out += (k ? "," : "") + parts[k];
    return out + ")";
}

ConvexSet coord_region(std::size_t n, const std::vector<std::pair<std::size_t, Interval1>>& f, bool others_zero) {
    std::vector<Interval1> fac(n, others_zero ? Interval1::point(Scalar(0)) : Interval1::whole());
    for (const auto& [k, I] : f) fac[k] = I;
    return ConvexSet::product(fac);
}

ExtScalar ext(const ExtScalar& e) { return e; }
template <class T>
ExtScalar ext(const T& t) {
    return ExtScalar(Q(t));
}

template <class A, class B>
Interval1 iv(const A& lo, bool lc, const B& hi, bool hc) {
    return Interval1::make(ext(lo), lc, ext(hi), hc);
}
const ExtScalar NINF = ExtScalar::neg_inf();
const ExtScalar PINF = ExtScalar::pos_inf();

bool unit_form(const Atom& a, std::size_t& i) {
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < a.w.size(); ++k)
        if (a.w[k] != 0) {
            ++cnt;
            i = k;
        }
    return cnt == 1 && a.w[i] == 1;
}

std::string times(const Q& l, const std::string& s) {
    if (l == 1) return s;
    return qstr(l) + "*" + s;
}

std::string plus_const(const std::string& s, const Q& c) {
    if (c == 0) return s;
    return s + (c < 0 ? " - " + qstr(-c) : " + " + qstr(c));
}

std::string affine_str(const Atom& a, std::size_t n, char var = 'x') {
    std::string s;
    for (std::size_t k = 0; k < n; ++k) {
        if (a.w[k] == 0) continue;
        Q c = a.w[k];
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (abs(c) != 1) s += qstr(abs(c)) + "*";
        s += nm(var, k, n);
    }
    return plus_const(s, a.c);
}

std::string cases(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "; " : "") + v[k];
    return out;
}

std::string exp_arg(const std::string& s) {
    if (s.find_first_of(" /*") == std::string::npos) return "e^" + s;
    return "e^(" + s + ")";
}

}  // namespace

std::string h_text_conj(const Atom& a, std::size_t n) {
    const Q& l = a.lambda;
    std::size_t i = a.i;
    switch (a.kind) {
        case Atom::Exp:
        case Atom::NegLog:
        case Atom::Hinge: {
            if (!unit_form(a, i)) return "conjugate of " + a.dsl() + " (see the subdifferential rows)";
            std::string u = nm('u', i, n);
            if (a.kind == Atom::Exp) {
                std::string arg = l == 1 ? u : u + "/" + qstr(l);
                std::string inner = "log(" + arg + ") - 1";
                if (a.c != 0) inner += (a.c > 0 ? " - " + qstr(a.c) : " + " + qstr(-a.c));
                return cases({"0 if " + region('u', ConvexSet::point(SVec(n))),
                              u + "*(" + inner + ") if " + region('u', coord_region(n, {{i, iv(0, false, PINF, false)}}, true)),
                              "+inf otherwise"});
            }
            if (a.kind == Atom::NegLog) {
                std::string s = "-" + qstr(l) + " + " + qstr(l) + "*log(-" + qstr(l) + "/" + u + ")";
                if (l == 1) s = "-1 - log(-" + u + ")";
                if (a.c != 0) s += (a.c > 0 ? " - " : " + ") + qstr(abs(a.c)) + "*" + u;
                return cases({s + " if " + region('u', coord_region(n, {{i, iv(NINF, false, 0, false)}}, true)), "+inf otherwise"});
            }
            std::string val = a.c == 0 ? "0" : (a.c > 0 ? "-" : "") + times(abs(a.c), u);
            return cases({val + " if " + region('u', coord_region(n, {{i, iv(0, true, l, true)}}, true)), "+inf otherwise"});
        }
        case Atom::HingeAbs: {
            std::string u = nm('u', i, n);
            std::string val = a.c == 0 ? "0" : times(a.c, "|" + u + "|");
            return cases({val + " if " + region('u', coord_region(n, {{i, iv(-l, true, l, true)}}, true)), "+inf otherwise"});
        }
        case Atom::HingeExpDiff: {
            std::string ui = nm('u', a.i, n), uj = nm('u', a.j, n);
            return cases({uj + "*log(-" + uj + "/" + ui + ") - " + uj + " if " +
                              region('u', coord_region(n, {{a.i, iv(-l, true, 0, false)}, {a.j, iv(0, false, PINF, false)}}, true)),
                          "0 if " + region('u', ConvexSet::point(SVec(n))), "+inf otherwise"});
        }
        case Atom::QuadShift: {
            std::string u = nm('u', i, n);
            std::string s = u + "^2/" + (l == 1 ? std::string("2") : qstr(2 * l));
            if (a.c != 0) s += (a.c > 0 ? " + " : " - ") + times(abs(a.c), u);
            if (n == 1) return s;
            return cases({s + " if " + region('u', coord_region(n, {{i, Interval1::whole()}}, true)), "+inf otherwise"});
        }
        case Atom::IndHyperbola: {
            std::string ui = nm('u', a.i, n), uj = nm('u', a.j, n);
            return cases({"-2*sqrt(" + ui + "*" + uj + ") if " +
                              region('u', coord_region(n, {{a.i, iv(NINF, false, 0, true)}, {a.j, iv(NINF, false, 0, true)}}, true)),
                          "+inf otherwise"});
        }
    }
    return "";
}

std::string h_text_subdiff(const Atom& a, std::size_t n) {
    const Q& l = a.lambda;
    std::size_t i = a.i;
    switch (a.kind) {
        case Atom::Exp: {
            std::string g = times(l, exp_arg(affine_str(a, n)));
            std::vector<std::pair<std::size_t, std::string>> f;
            for (std::size_t k = 0; k < n; ++k)
                if (a.w[k] != 0) f.push_back({k, a.w[k] == 1 ? g : qstr(a.w[k]) + "*" + g});
            return "{" + tuple(n, f) + "}";
        }
        case Atom::NegLog: {
            std::string den = "(" + affine_str(a, n) + ")";
            if (affine_str(a, n).find(' ') == std::string::npos) den = affine_str(a, n);
            std::vector<std::pair<std::size_t, std::string>> f;
            for (std::size_t k = 0; k < n; ++k)
                if (a.w[k] != 0) f.push_back({k, "-" + qstr(l * a.w[k]) + "/" + den});
            return "{" + tuple(n, f) + "} if " + affine_str(a, n) + " > 0";
        }
        case Atom::Hinge: {
            if (!unit_form(a, i)) {
                std::string s = affine_str(a, n);
                return cases({"{" + qstr(l) + "*w} if " + s + " > 0", "{0} if " + s + " < 0", "[0," + qstr(l) + "]*w if " + s + " = 0"});
            }
            std::string one = qstr(l);
            Q c = -a.c;
            return cases({"{" + tuple(n, {{i, one}}) + "} if " + region('x', coord_region(n, {{i, iv(c, false, PINF, false)}}, false)),
                          "{" + tuple(n, {}) + "} if " + region('x', coord_region(n, {{i, iv(NINF, false, c, false)}}, false)),
                          product(n, {{i, "[0," + one + "]"}}, "{0}") + " if " +
                              region('x', coord_region(n, {{i, Interval1::point(Scalar(c))}}, false))});
        }
        case Atom::HingeAbs: {
            std::string one = qstr(l), mone = qstr(-l);
            Q c = a.c;
            if (c == 0)
                return cases({"{" + tuple(n, {{i, mone}}) + "} if " + region('x', coord_region(n, {{i, iv(NINF, false, 0, false)}}, false)),
                              product(n, {{i, "[" + mone + "," + one + "]"}}, "{0}") + " if " +
                                  region('x', coord_region(n, {{i, Interval1::point(Scalar(0))}}, false)),
                              "{" + tuple(n, {{i, one}}) + "} if " + region('x', coord_region(n, {{i, iv(0, false, PINF, false)}}, false))});
            return cases({"{" + tuple(n, {{i, mone}}) + "} if " + region('x', coord_region(n, {{i, iv(NINF, false, -c, false)}}, false)),
                          product(n, {{i, "[" + mone + ",0]"}}, "{0}") + " if " +
                              region('x', coord_region(n, {{i, Interval1::point(Scalar(-c))}}, false)),
                          "{" + tuple(n, {}) + "} if " + region('x', coord_region(n, {{i, iv(-c, false, c, false)}}, false)),
                          product(n, {{i, "[0," + one + "]"}}, "{0}") + " if " +
                              region('x', coord_region(n, {{i, Interval1::point(Scalar(c))}}, false)),
                          "{" + tuple(n, {{i, one}}) + "} if " + region('x', coord_region(n, {{i, iv(c, false, PINF, false)}}, false))});
        }
        case Atom::HingeExpDiff: {
            std::string xi = nm('x', a.i, n), ex = exp_arg(nm('x', a.j, n));
            std::string ml = l == 1 ? "-1" : qstr(-l), sc = l == 1 ? ex : qstr(l) + "*" + ex;
            std::string t = l == 1 ? "t" : qstr(l) + "*t";
            return cases({"{" + tuple(n, {{a.i, ml}, {a.j, sc}}) + "} if " + ex + " > " + xi,
                          "{" + tuple(n, {}) + "} if " + ex + " < " + xi,
                          "{" + tuple(n, {{a.i, "-" + t}, {a.j, t + "*" + ex}}) + ": t in [0,1]} if " + ex + " = " + xi});
        }
        case Atom::QuadShift: {
            std::string s = plus_const(nm('x', i, n), -a.c);
            if (l != 1) s = qstr(l) + "*(" + s + ")";
            return "{" + tuple(n, {{i, s}}) + "}";
        }
        case Atom::IndHyperbola: {
            std::string xi = nm('x', a.i, n), xj = nm('x', a.j, n);
            return cases({"{" + tuple(n, {}) + "} if " + xi + "*" + xj + " > 1",
                          "{-t*" + tuple(n, {{a.i, xj}, {a.j, xi}}) + ": t >= 0} if " + xi + "*" + xj + " = 1"});
        }
    }
    return "";
}

std::string h_text_conj_subdiff(const Atom& a, std::size_t n) {
    const Q& l = a.lambda;
    std::size_t i = a.i;
    auto set_at = [&](const SVec& u) { return render(h_conj(a, u, n)); };
    auto uvec = [&](std::size_t k, const Q& v) {
        SVec u(n);
        u[k] = Scalar(v);
        return u;
    };
    switch (a.kind) {
        case Atom::Exp:
        case Atom::NegLog: {
            if (!unit_form(a, i)) {
                std::string s = affine_str(a, n);
                if (a.kind == Atom::Exp) return cases({"{x: " + s + " = log(t/" + qstr(l) + ")} if u = t*w, t > 0", "empty otherwise"});
                return cases({"{x: " + s + " = -" + qstr(l) + "/t} if u = t*w, t < 0", "empty otherwise"});
            }
            std::string u = nm('u', i, n);
            std::string v;
            if (a.kind == Atom::Exp) {
                v = "log(" + (l == 1 ? u : u + "/" + qstr(l)) + ")";
                if (a.c != 0) v = plus_const(v, -a.c);
            } else {
                v = "-" + qstr(l) + "/" + u;
                if (a.c != 0) v = plus_const(v, -a.c);
            }
            Interval1 R = a.kind == Atom::Exp ? iv(0, false, PINF, false) : iv(NINF, false, 0, false);
            std::string val = n == 1 ? "{" + v + "}" : product(n, {{i, "{" + v + "}"}}, "R");
            return cases({val + " if " + region('u', coord_region(n, {{i, R}}, true)), "empty otherwise"});
        }
        case Atom::Hinge:
        case Atom::HingeAbs: {
            if (a.kind == Atom::Hinge && !unit_form(a, i)) {
                std::string s = affine_str(a, n);
                return cases({"{x: " + s + " <= 0} if u = 0", "{x: " + s + " = 0} if u = t*w, t in (0," + qstr(l) + ")",
                              "{x: " + s + " >= 0} if u = " + qstr(l) + "*w", "empty otherwise"});
            }
            std::vector<std::string> out;
            std::vector<Q> pts = a.kind == Atom::Hinge ? std::vector<Q>{0, 1} : std::vector<Q>{-1, 0, 1};
            if (a.kind == Atom::HingeAbs && a.c == 0) pts = {-1, 1};
            for (std::size_t k = 0; k < pts.size(); ++k) {
                Q t = pts[k];
                out.push_back(set_at(uvec(i, t)) + " if " + region('u', coord_region(n, {{i, Interval1::point(Scalar(t * l))}}, true)));
                if (k + 1 < pts.size()) {
                    Q mid = (t + pts[k + 1]) / 2;
                    out.push_back(set_at(uvec(i, mid)) + " if " +
                                  region('u', coord_region(n, {{i, iv(t * l, false, pts[k + 1] * l, false)}}, true)));
                }
            }
            out.push_back("empty otherwise");
            return cases(out);
        }
        case Atom::HingeExpDiff: {
            std::string ui = nm('u', a.i, n), uj = nm('u', a.j, n);
            std::string ml = qstr(-l);
            std::string r = "-" + uj + "/" + ui;
            std::string pt = tuple(n, {{a.i, r}, {a.j, "log(" + r + ")"}});
            std::string first = product(n, {{a.i, "(-inf," + uj + "]"}, {a.j, "{log(" + uj + ")}"}}, "R") + " if " +
                                ui + " = " + ml + ", " + uj + " > 0";
            if (n > 2) first += ", other coordinates 0";
            return cases({first, "{" + pt + "} if " + region('u', coord_region(n, {{a.i, iv(-l, false, 0, false)}, {a.j, iv(0, false, PINF, false)}}, true)),
                          set_at(SVec(n)) + " if " + region('u', ConvexSet::point(SVec(n))), "empty otherwise"});
        }
        case Atom::QuadShift: {
            std::string v = plus_const(l == 1 ? nm('u', i, n) : nm('u', i, n) + "/" + qstr(l), a.c);
            std::string val = n == 1 ? "{" + v + "}" : product(n, {{i, "{" + v + "}"}}, "R");
            if (n == 1) return val;
            return cases({val + " if " + region('u', coord_region(n, {{i, Interval1::whole()}}, true)), "empty otherwise"});
        }
        case Atom::IndHyperbola: {
            std::string ui = nm('u', a.i, n), uj = nm('u', a.j, n);
            return cases({set_at(SVec(n)) + " if " + region('u', ConvexSet::point(SVec(n))),
                          "{" + tuple(n, {{a.i, "sqrt(" + uj + "/" + ui + ")"}, {a.j, "sqrt(" + ui + "/" + uj + ")"}}) + "} if " +
                              region('u', coord_region(n, {{a.i, iv(NINF, false, 0, false)}, {a.j, iv(NINF, false, 0, false)}}, true)),
                          "empty otherwise"});
        }
    }
    return "";
}

std::string h_text_recession(const Atom& a, std::size_t n) {
    const Q& l = a.lambda;
    std::size_t i = a.i;
    auto dom_text = [&](const std::vector<LinRow>& rows, const std::string& val) {
        ConvexSet D = ConvexSet::polyhedron(n, rows);
        return cases({val + " if " + region('d', D), "+inf otherwise"});
    };
    PolyBlock B = h_recession(a, n);
    switch (a.kind) {
        case Atom::Exp:
        case Atom::NegLog:
        case Atom::QuadShift:
        case Atom::IndHyperbola: return dom_text(B.domain, "0");
        case Atom::Hinge: {
            std::string s;
            Atom b = a;
            b.c = 0;
            s = affine_str(b, n, 'd');
            return times(l, "max{" + s + ",0}");
        }
        case Atom::HingeAbs: return times(l, "|" + nm('d', i, n) + "|");
        case Atom::HingeExpDiff: {
            std::string di = nm('d', a.i, n);
            return cases({"0 if " + region('d', coord_region(n, {{a.i, iv(0, true, PINF, false)}, {a.j, iv(NINF, false, 0, true)}}, false)),
                          (l == 1 ? "-" + di : qstr(l) + "*(-" + di + ")") + " if " +
                              region('d', coord_region(n, {{a.i, iv(NINF, false, 0, false)}, {a.j, iv(NINF, false, 0, true)}}, false)),
                          "+inf otherwise"});
        }
    }
    return "";
}

}  // namespace solnscope::detail
