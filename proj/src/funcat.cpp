#include "solnscope/funcat.hpp"

#include <algorithm>
#include <set>

#include "atoms_internal.hpp"
#include "solnscope/errors.hpp"

namespace solnscope {

using namespace detail;

namespace {

LinRow mkrow(QVec a, Scalar b, Rel rel) {
    LinRow r;
    r.a = std::move(a);
    r.b = std::move(b);
    r.rel = rel;
    return r;
}

std::string var(std::size_t k) { return "x" + std::to_string(k + 1); }

std::string affine_dsl(const QVec& w, const Q& c) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0) continue;
        Q a = w[k];
        if (s.empty())
            s += a < 0 ? "-" : "";
        else
            s += a < 0 ? " - " : " + ";
        if (abs(a) != 1) s += qstr(abs(a)) + "*";
        s += var(k);
    }
    if (s.empty()) return qstr(c);
    if (c > 0) s += " + " + qstr(c);
    if (c < 0) s += " - " + qstr(-c);
    return s;
}

void require_separable(const FuncExpr& f) {
    if (!f.separable()) throw UnsupportedProblem("atoms with overlapping coordinates are outside the catalog");
}

// coordinates read by no atom
std::vector<std::size_t> free_coords(const FuncExpr& f) {
    std::vector<bool> used(f.n, false);
    for (const auto& a : f.terms)
        for (auto k : a.support(f.n)) used[k] = true;
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < f.n; ++k)
        if (!used[k]) out.push_back(k);
    return out;
}

ConvexSet zero_on(std::size_t n, const std::vector<std::size_t>& coords) {
    std::vector<LinRow> rows;
    for (auto k : coords) rows.push_back(mkrow(unit(n, k), Scalar(0), Rel::Eq));
    return ConvexSet::polyhedron(n, rows);
}

SVec scaled_shift(const SVec& u, const QVec& c, const Q& lambda) {
    SVec out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = (u[k] - Scalar(c[k])) / lambda;
    return out;
}

}  // namespace

// ---------------------------------------------------------------- atoms

std::vector<std::size_t> Atom::support(std::size_t n) const {
    switch (kind) {
        case Exp:
        case NegLog:
        case Hinge: {
            std::vector<std::size_t> s;
            for (std::size_t k = 0; k < n && k < w.size(); ++k)
                if (w[k] != 0) s.push_back(k);
            return s;
        }
        case HingeAbs:
        case QuadShift: return {i};
        case HingeExpDiff:
        case IndHyperbola: return {i, j};
    }
    return {};
}

std::string Atom::dsl() const {
    std::string body;
    switch (kind) {
        case Exp: body = "exp(" + affine_dsl(w, c) + ")"; break;
        case NegLog: body = "neglog(" + affine_dsl(w, c) + ")"; break;
        case Hinge: body = "hinge(" + affine_dsl(w, c) + ")"; break;
        case HingeAbs:
            if (c == 0 && from_abs)
                body = "abs(" + var(i) + ")";
            else
                body = "hinge(abs(" + var(i) + ")" + (c == 0 ? std::string() : " - " + qstr(c)) + ")";
            break;
        case HingeExpDiff: body = "hinge_expdiff(" + var(i) + "," + var(j) + ")"; break;
        case QuadShift: body = "quadshift(" + var(i) + "," + qstr(c) + ")"; break;
        case IndHyperbola: body = "ind_hyperbola(" + var(i) + "," + var(j) + ")"; break;
    }
    if (lambda != 1) return qstr(lambda) + "*" + body;
    return body;
}

Atom atom_exp(const QVec& w, const Q& c) {
    Atom a;
    a.kind = Atom::Exp;
    a.w = w;
    a.c = c;
    if (is_zero(w)) throw DomainViolation("exp of a constant");
    return a;
}

Atom atom_neglog(const QVec& w, const Q& c) {
    Atom a = atom_exp(w, c);
    a.kind = Atom::NegLog;
    return a;
}

Atom atom_hinge(const QVec& w, const Q& c) {
    Atom a = atom_exp(w, c);
    a.kind = Atom::Hinge;
    return a;
}

Atom atom_hinge_abs(std::size_t n, std::size_t i, const Q& c) {
    if (c < 0) throw DomainViolation("hinge(abs(x) - c) needs c >= 0");
    Atom a;
    a.kind = Atom::HingeAbs;
    a.w = unit(n, i);
    a.i = i;
    a.c = c;
    return a;
}

Atom atom_abs(std::size_t n, std::size_t i) {
    Atom a = atom_hinge_abs(n, i, 0);
    a.from_abs = true;
    return a;
}

Atom atom_hinge_expdiff(std::size_t n, std::size_t i, std::size_t j) {
    if (i == j) throw DomainViolation("hinge_expdiff needs two distinct coordinates");
    Atom a;
    a.kind = Atom::HingeExpDiff;
    a.w = QVec(n, Q(0));
    a.i = i;
    a.j = j;
    return a;
}

Atom atom_quadshift(std::size_t n, std::size_t i, const Q& c) {
    Atom a;
    a.kind = Atom::QuadShift;
    a.w = unit(n, i);
    a.i = i;
    a.c = c;
    return a;
}

Atom atom_ind_hyperbola(std::size_t n, std::size_t i, std::size_t j) {
    Atom a = atom_hinge_expdiff(n, i, j);
    a.kind = Atom::IndHyperbola;
    return a;
}

// ---------------------------------------------------------------- expressions

FuncExpr FuncExpr::linear(const QVec& c) {
    FuncExpr f;
    f.n = c.size();
    f.lin = c;
    return f;
}

FuncExpr FuncExpr::norm_1(std::size_t n) {
    FuncExpr f = linear(QVec(n, Q(0)));
    for (std::size_t k = 0; k < n; ++k) f.terms.push_back(atom_abs(n, k));
    f.norm1 = true;
    return f;
}

FuncExpr FuncExpr::single(std::size_t n, const Atom& a) {
    FuncExpr f = linear(QVec(n, Q(0)));
    f.add(a);
    return f;
}

FuncExpr& FuncExpr::add(const Atom& a) {
    if (a.lambda <= 0) throw DomainViolation("atom weights must be positive");
    if (a.w.size() != n && !a.w.empty()) throw DimensionError("atom dimension does not match the expression");
    terms.push_back(a);
    if (terms.back().w.empty()) terms.back().w = QVec(n, Q(0));
    norm1 = false;
    return *this;
}

bool FuncExpr::separable() const {
    std::set<std::size_t> seen;
    for (const auto& a : terms)
        for (auto k : a.support(n))
            if (!seen.insert(k).second) return false;
    return true;
}

bool FuncExpr::polyhedral() const {
    return std::all_of(terms.begin(), terms.end(), [](const Atom& a) { return a.polyhedral(); });
}

// ---------------------------------------------------------------- evaluation

ExtendedValue eval(const FuncExpr& f, const SVec& x) {
    if (x.size() != f.n) throw DimensionError("point dimension");
    Scalar total = dot(f.lin, x);
    for (const auto& a : f.terms) {
        ExtendedValue v = h_eval(a, x);
        if (!v.finite()) return ExtScalar::pos_inf();
        total += v.v * a.lambda;
    }
    return total;
}

ExtendedValue eval(const FuncExpr& f, const QVec& x) { return eval(f, to_svec(x)); }

ConvexSet dom(const FuncExpr& f) {
    ConvexSet D = ConvexSet::whole(f.n);
    for (const auto& a : f.terms) D = D.intersect(h_dom(a, f.n));
    return D;
}

ConvexSet subdiff(const FuncExpr& f, const SVec& x) {
    require_separable(f);
    if (!eval(f, x).finite()) throw DomainViolation("subdifferential outside the domain");
    ConvexSet G = zero_on(f.n, free_coords(f));
    for (const auto& a : f.terms) G = G.intersect(h_subdiff(a, x, f.n).scaled(a.lambda));
    return G.translate(f.lin);
}

ConvexSet subdiff(const FuncExpr& f, const QVec& x) { return subdiff(f, to_svec(x)); }

ConvexSet conj_subdiff(const FuncExpr& f, const SVec& u) {
    require_separable(f);
    if (u.size() != f.n) throw DimensionError("dual point dimension");
    for (auto k : free_coords(f))
        if (!(u[k] - Scalar(f.lin[k])).is_zero()) return ConvexSet::empty(f.n);
    ConvexSet X = ConvexSet::whole(f.n);
    for (const auto& a : f.terms) {
        X = X.intersect(h_conj(a, scaled_shift(u, f.lin, a.lambda), f.n));
        if (X.is_empty()) return X;
    }
    return X;
}

ConvexSet conj_subdiff(const FuncExpr& f, const QVec& u) { return conj_subdiff(f, to_svec(u)); }

// ---------------------------------------------------------------- recession

std::vector<PolyBlock> recession_blocks(const FuncExpr& f) {
    std::vector<PolyBlock> out;
    if (!is_zero(f.lin)) out.push_back({{}, {f.lin}});
    for (const auto& a : f.terms) {
        PolyBlock B = h_recession(a, f.n);
        for (auto& p : B.pieces) p = scale(a.lambda, p);
        out.push_back(std::move(B));
    }
    return out;
}

ExtendedValue recession(const FuncExpr& f, const SVec& d) {
    Scalar total(0);
    for (const auto& B : recession_blocks(f)) {
        for (const auto& r : B.domain) {
            int s = (dot(r.a, d) - r.b).sign();
            if (s > 0 || (s == 0 && r.rel == Rel::Lt) || (s != 0 && r.rel == Rel::Eq)) return ExtScalar::pos_inf();
        }
        Scalar best = dot(B.pieces[0], d);
        for (std::size_t p = 1; p < B.pieces.size(); ++p) {
            Scalar v = dot(B.pieces[p], d);
            if (v > best) best = v;
        }
        total += best;
    }
    return total;
}

namespace {

// rows over (d, s_1..s_K): domain rows, s_k >= piece . d
std::vector<LinRow> lifted_recession_rows(const std::vector<PolyBlock>& blocks, std::size_t n) {
    std::size_t K = blocks.size(), N = n + K;
    std::vector<LinRow> rows;
    for (std::size_t k = 0; k < K; ++k) {
        for (const auto& r : blocks[k].domain) {
            QVec a(N, Q(0));
            std::copy(r.a.begin(), r.a.end(), a.begin());
            rows.push_back(mkrow(a, r.b, r.rel));
        }
        for (const auto& p : blocks[k].pieces) {
            QVec a(N, Q(0));
            std::copy(p.begin(), p.end(), a.begin());
            a[n + k] = -1;
            rows.push_back(mkrow(a, Scalar(0), Rel::Le));
        }
    }
    return rows;
}

std::vector<LinRow> drop_tail(const std::vector<LinRow>& rows, std::size_t n) {
    std::vector<LinRow> out;
    for (const auto& r : rows) out.push_back(mkrow(QVec(r.a.begin(), r.a.begin() + n), r.b, r.rel));
    return out;
}

std::vector<LinRow> eliminate_tail(std::vector<LinRow> rows, std::size_t n, std::size_t N) {
    for (std::size_t k = n; k < N; ++k) {
        rows = fm_eliminate(rows, k, N);
        normalize_rows(rows, N);
        rows = remove_redundant(rows, N);
    }
    return drop_tail(rows, n);
}

}  // namespace

ConvexSet recession_cone_fn(const FuncExpr& f) {
    auto blocks = recession_blocks(f);
    std::size_t n = f.n, N = n + blocks.size();
    auto rows = lifted_recession_rows(blocks, n);
    QVec sum(N, Q(0));
    for (std::size_t k = n; k < N; ++k) sum[k] = 1;
    rows.push_back(mkrow(sum, Scalar(0), Rel::Le));
    return ConvexSet::polyhedron(n, eliminate_tail(rows, n, N));
}

bool recession_nonnegative(const FuncExpr& f) {
    auto blocks = recession_blocks(f);
    std::size_t n = f.n, N = n + blocks.size();
    auto rows = lifted_recession_rows(blocks, n);
    for (std::size_t k = 0; k < n; ++k) {
        QVec a(N, Q(0));
        a[k] = 1;
        rows.push_back(mkrow(a, Scalar(1), Rel::Le));
        a[k] = -1;
        rows.push_back(mkrow(a, Scalar(1), Rel::Le));
    }
    QVec obj(N, Q(0));
    for (std::size_t k = n; k < N; ++k) obj[k] = -1;
    LPResult r = lp_maximize(rows, obj, N);
    if (r.status != LPResult::Optimal) throw UnsupportedProblem("recession LP did not solve");
    return r.value.sign() <= 0;
}

ConvexSet recession_kernel(const FuncExpr& f) {
    if (recession_nonnegative(f)) return recession_cone_fn(f);
    auto blocks = recession_blocks(f);
    QVec L(f.n, Q(0));
    std::vector<LinRow> rows;
    for (const auto& B : blocks) {
        if (B.pieces.size() != 1) throw UnsupportedSet("kernel of a recession function that changes sign");
        L = add(L, B.pieces[0]);
        rows.insert(rows.end(), B.domain.begin(), B.domain.end());
    }
    rows.push_back(mkrow(L, Scalar(0), Rel::Eq));
    return ConvexSet::polyhedron(f.n, rows);
}

// ---------------------------------------------------------------- ranges

SetUnion range_subdiff(const FuncExpr& f) {
    require_separable(f);
    std::size_t n = f.n;
    std::vector<ConvexSet> acc = {zero_on(n, free_coords(f))};
    for (const auto& a : f.terms) {
        SetUnion U = h_range(a, n);
        std::vector<ConvexSet> next;
        for (const auto& base : acc)
            for (const auto& m : U.members) {
                ConvexSet c = base.intersect(m.scaled(a.lambda));
                if (!c.is_empty()) next.push_back(c);
            }
        acc = std::move(next);
        if (acc.size() > 4096) throw SizeLimit("too many range members");
    }
    SetUnion out;
    out.n = n;
    for (const auto& c : acc) out.push(c.translate(f.lin));
    return out;
}

ConvexSet ri_range_subdiff(const FuncExpr& f) {
    require_separable(f);
    ConvexSet R = zero_on(f.n, free_coords(f));
    for (const auto& a : f.terms) R = R.intersect(h_ri_range(a, f.n).scaled(a.lambda));
    return R.translate(f.lin);
}

// ---------------------------------------------------------------- sublevel sets

std::vector<std::vector<AffinePiece>> max_affine_blocks(const FuncExpr& f) {
    std::vector<std::vector<AffinePiece>> out;
    std::size_t n = f.n;
    QVec zero(n, Q(0));
    if (!is_zero(f.lin)) out.push_back({{f.lin, 0}});
    for (const auto& a : f.terms) {
        const Q& l = a.lambda;
        switch (a.kind) {
            case Atom::Hinge: out.push_back({{scale(l, a.w), l * a.c}, {zero, 0}}); break;
            case Atom::HingeAbs: {
                QVec ei = scale(l, unit(n, a.i));
                if (a.c == 0)
                    out.push_back({{ei, 0}, {scale(Q(-1), ei), 0}});
                else
                    out.push_back({{ei, -l * a.c}, {scale(Q(-1), ei), -l * a.c}, {zero, 0}});
                break;
            }
            default: throw UnsupportedProblem("not a polyhedral function");
        }
    }
    return out;
}

ConvexSet sublevel(const FuncExpr& f, const Scalar& alpha) {
    std::size_t n = f.n;
    if (f.polyhedral()) {
        auto blocks = max_affine_blocks(f);
        std::size_t N = n + blocks.size();
        std::vector<LinRow> rows;
        QVec sum(N, Q(0));
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            sum[n + k] = 1;
            for (const auto& p : blocks[k]) {
                QVec a(N, Q(0));
                std::copy(p.a.begin(), p.a.end(), a.begin());
                a[n + k] = -1;
                rows.push_back(mkrow(a, Scalar(-p.b), Rel::Le));
            }
        }
        rows.push_back(mkrow(sum, alpha, Rel::Le));
        return ConvexSet::polyhedron(n, eliminate_tail(rows, n, N));
    }
    if (f.terms.size() == 1 && is_zero(f.lin)) {
        const Atom& a = f.terms[0];
        return h_sublevel(a, alpha / a.lambda, n);
    }
    // sum of atoms on disjoint coordinates, all but one contributing a minimum 0 level set:
    // only supported when every other atom is an indicator
    std::vector<const Atom*> valued;
    ConvexSet S = ConvexSet::whole(n);
    for (const auto& a : f.terms) {
        if (a.kind == Atom::IndHyperbola)
            S = S.intersect(h_dom(a, n));
        else
            valued.push_back(&a);
    }
    if (valued.size() == 1 && is_zero(f.lin)) return S.intersect(h_sublevel(*valued[0], alpha / valued[0]->lambda, n));
    if (valued.empty()) {
        if (is_zero(f.lin)) return alpha.sign() >= 0 ? S : ConvexSet::empty(n);
        return S.intersect(ConvexSet::polyhedron(n, {mkrow(f.lin, alpha, Rel::Le)}));
    }
    throw UnsupportedSet("sublevel set of a sum mixing analytic atoms");
}

// ---------------------------------------------------------------- KKT pieces

std::vector<KKTPiece> kkt_pieces(const Atom& a, std::size_t n) {
    auto pieces = h_kkt(a, n);
    for (auto& p : pieces) {
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) p.G(r, c) *= a.lambda;
        p.g0 = scale(a.lambda, p.g0);
        p.g1 = scale(a.lambda, p.g1);
    }
    return pieces;
}

bool has_kkt_pieces(const FuncExpr& f) {
    return std::all_of(f.terms.begin(), f.terms.end(), [](const Atom& a) {
        return a.kind == Atom::Hinge || a.kind == Atom::HingeAbs || a.kind == Atom::QuadShift;
    });
}

// ---------------------------------------------------------------- text

namespace {

std::string lin_text(const QVec& c, char p) {
    std::size_t n = c.size();
    std::string s;
    for (std::size_t k = 0; k < n; ++k) {
        if (c[k] == 0) continue;
        std::string v = n == 1 ? std::string(1, p) : std::string(1, p) + std::to_string(k + 1);
        Q a = c[k];
        if (s.empty())
            s += a < 0 ? "-" : "";
        else
            s += a < 0 ? " - " : " + ";
        if (abs(a) != 1) s += qstr(abs(a)) + "*";
        s += v;
    }
    return s.empty() ? "0" : s;
}

template <class F>
std::string compose(const FuncExpr& f, F per_atom, const std::string& linear_only) {
    if (f.terms.empty()) return linear_only;
    if (f.terms.size() == 1 && is_zero(f.lin)) return per_atom(f.terms[0]);
    std::string out;
    for (const auto& a : f.terms) out += (out.empty() ? "" : " | ") + a.dsl() + ": " + per_atom(a);
    if (!is_zero(f.lin)) out += " | shifted by " + vec_str(f.lin);
    return out;
}

}  // namespace

static std::string cube(std::size_t n) { return n == 1 ? "[-1,1]" : "[-1,1]^" + std::to_string(n); }

std::string describe_conj(const FuncExpr& f) {
    std::size_t n = f.n;
    if (f.norm1) return "0 if u in " + cube(n) + "; +inf otherwise";
    return compose(
        f, [&](const Atom& a) { return h_text_conj(a, n); }, "iota_{" + vec_str(f.lin) + "}");
}

std::string describe_subdiff(const FuncExpr& f) {
    std::size_t n = f.n;
    if (f.norm1) return "product over i of ({sign(x_i)} if x_i != 0; [-1,1] if x_i = 0)";
    return compose(
        f, [&](const Atom& a) { return h_text_subdiff(a, n); }, "{" + vec_str(f.lin) + "}");
}

std::string describe_conj_subdiff(const FuncExpr& f) {
    std::size_t n = f.n;
    std::string whole = n == 1 ? "R" : "R^" + std::to_string(n);
    std::string at = n == 1 ? "u = " + qstr(f.lin[0]) : "u = " + vec_str(f.lin);
    if (f.norm1)
        return "product over i of ([0,+inf) if u_i = 1; {0} if |u_i| < 1; (-inf,0] if u_i = -1) if u in " + cube(n) + "; empty otherwise";
    return compose(
        f, [&](const Atom& a) { return h_text_conj_subdiff(a, n); }, whole + " if " + at + "; empty otherwise");
}

std::string describe_recession(const FuncExpr& f) {
    std::size_t n = f.n;
    if (f.norm1) return "||d||_1";
    return compose(
        f, [&](const Atom& a) { return h_text_recession(a, n); }, lin_text(f.lin, 'd'));
}

std::string to_dsl(const FuncExpr& f) {
    if (f.norm1) return "norm1()";
    std::string s;
    if (!is_zero(f.lin)) {
        s = "lin(";
        for (std::size_t k = 0; k < f.n; ++k) s += (k ? "," : "") + qstr(f.lin[k]);
        s += ")";
    }
    for (const auto& a : f.terms) s += (s.empty() ? "" : " + ") + a.dsl();
    if (s.empty()) {
        s = "lin(";
        for (std::size_t k = 0; k < f.n; ++k) s += (k ? "," : "") + std::string("0");
        s += ")";
    }
    return s;
}

}  // namespace solnscope
