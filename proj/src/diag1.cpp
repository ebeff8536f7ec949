#include "solnscope/diag1.hpp"

#include "solnscope/errors.hpp"
#include "solnscope/oracle.hpp"

namespace solnscope {

std::string to_string(ExistReason r) {
    switch (r) {
        case ExistReason::ViabilityFail: return "ViabilityFail";
        case ExistReason::NotInRange: return "NotInRange";
        case ExistReason::MaximalMonotone: return "MaximalMonotone";
        case ExistReason::SpecificB: return "SpecificB";
    }
    return "";
}

namespace {

LinRow mkrow(QVec a, Scalar b, Rel rel) {
    LinRow r;
    r.a = std::move(a);
    r.b = std::move(b);
    r.rel = rel;
    return r;
}

SVec neg(const SVec& v) {
    SVec o(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) o[k] = -v[k];
    return o;
}

void check_dims(const FuncExpr& f, const QMat& A, const QVec& b) {
    if (A.cols() != f.n) throw DimensionError("A has " + std::to_string(A.cols()) + " columns, f lives in R^" + std::to_string(f.n));
    if (A.rows() != b.size()) throw DimensionError("b has the wrong length");
}

bool pure_norm1(const FuncExpr& f) {
    if (f.norm1) return true;
    if (!is_zero(f.lin) || f.terms.size() != f.n) return false;
    std::vector<bool> seen(f.n, false);
    for (const auto& a : f.terms) {
        if (a.kind != Atom::HingeAbs || a.c != 0 || a.lambda != 1 || seen[a.i]) return false;
        seen[a.i] = true;
    }
    return true;
}

// exact piecewise KKT sweep for polyhedral atoms plus quadratic shifts
std::optional<SVec> kkt_minimizer(const FuncExpr& f, const QMat& A, const QVec& b) {
    std::size_t n = f.n, K = f.terms.size(), N = n + K;
    std::vector<std::vector<KKTPiece>> P;
    std::size_t combos = 1;
    for (const auto& a : f.terms) {
        P.push_back(kkt_pieces(a, n));
        combos *= P.back().size();
        if (combos > 200000) throw SizeLimit("too many KKT piece combinations");
    }
    QMat AtA = A.transpose() * A;
    QVec Atb = A.transpose() * b;
    std::vector<std::size_t> idx(K, 0);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t cc = c;
        for (std::size_t k = 0; k < K; ++k) {
            idx[k] = cc % P[k].size();
            cc /= P[k].size();
        }
        std::vector<LinRow> rows;
        QMat H = AtA;
        QVec rhs = sub(Atb, f.lin);
        std::vector<QVec> g1cols;
        for (std::size_t k = 0; k < K; ++k) {
            const KKTPiece& p = P[k][idx[k]];
            for (const auto& r : p.region) {
                QVec a(N, Q(0));
                std::copy(r.a.begin(), r.a.end(), a.begin());
                rows.push_back(mkrow(a, r.b, r.rel));
            }
            H = H + p.G;
            rhs = sub(rhs, p.g0);
            QVec t(N, Q(0));
            t[n + k] = 1;
            if (is_zero(p.g1)) {
                rows.push_back(mkrow(t, Scalar(0), Rel::Eq));
            } else {
                rows.push_back(mkrow(t, Scalar(1), Rel::Le));
                rows.push_back(mkrow(scale(Q(-1), t), Scalar(0), Rel::Le));
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            QVec a(N, Q(0));
            for (std::size_t i = 0; i < n; ++i) a[i] = H(j, i);
            for (std::size_t k = 0; k < K; ++k) a[n + k] = P[k][idx[k]].g1[j];
            rows.push_back(mkrow(a, Scalar(rhs[j]), Rel::Eq));
        }
        SVec z;
        if (lp_feasible_point(rows, N, z)) return SVec(z.begin(), z.begin() + n);
    }
    return std::nullopt;
}

struct Residual {
    SVec r;
    std::string route;
};

// residual r = b - Ax* by the first applicable route, skipping `avoid`
std::optional<Residual> find_residual(const FuncExpr& f, const QMat& A, const QVec& b, const std::string& avoid, bool& any_route) {
    any_route = true;
    std::size_t n = f.n;
    if (avoid != "sign-pattern" && pure_norm1(f) && n <= 8) {
        auto L = lasso_enumerate(A, b);
        if (L.solutions.empty()) throw PreconditionFail("sign-pattern enumeration found no KKT point");
        return Residual{to_svec(sub(b, L.Ax)), "sign-pattern"};
    }
    if (avoid != "piecewise-kkt" && has_kkt_pieces(f) && f.separable()) {
        auto x = kkt_minimizer(f, A, b);
        if (!x) return std::nullopt;
        SVec Ax = A.apply(*x);
        SVec r(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = Scalar(b[i]) - Ax[i];
        return Residual{r, "piecewise-kkt"};
    }
    if (avoid != "dual-graph" && A.rows() == 1) {
        DualGraph G = build_dual_graph(f, A.row(0));
        Scalar r;
        if (!G.resolvent(Scalar(b[0]), r)) return std::nullopt;
        return Residual{SVec{r}, "dual-graph"};
    }
    any_route = false;
    return std::nullopt;
}

ConvexSet fiber(const FuncExpr& f, const QMat& A, const SVec& r, const QVec& b) {
    SVec ATr = A.transpose().apply(r);
    ConvexSet S = conj_subdiff(f, ATr);
    SVec target(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) target[i] = Scalar(b[i]) - r[i];
    AffineFlat F;
    F.anchor = pseudoinverse(A).apply(target);
    F.directions = kernel_basis(A);
    return intersect_flat(S, F);
}

}  // namespace

std::optional<P1Solution> solve_p1(const FuncExpr& f, const QMat& A, const QVec& b) {
    check_dims(f, A, b);
    bool any = false;
    auto res = find_residual(f, A, b, "", any);
    if (!any) throw UnsupportedProblem("no exact solution route for this function and m > 1");
    if (!res) return std::nullopt;
    ConvexSet X = fiber(f, A, res->r, b);
    if (X.is_empty()) return std::nullopt;
    if (!X.is_polyhedral()) throw UnsupportedSet("solution set is not polyhedral; no canonical point");
    P1Solution s;
    s.route = res->route;
    s.residual_r = res->r;
    s.x_star = min_norm_point(X);
    s.Ax_star = A.apply(s.x_star);
    s.x_r_star = pseudoinverse(A).apply(s.Ax_star);
    s.x_k_star = sub(s.x_star, s.x_r_star);
    return s;
}

ConvexSet solution_set_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A) {
    SVec ATr = A.transpose().apply(sol.residual_r);
    ConvexSet S = conj_subdiff(f, ATr);
    AffineFlat F;
    F.anchor = sol.x_star;
    F.directions = kernel_basis(A);
    return intersect_flat(S, F);
}

bool fermat_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A, const QVec& b) {
    SVec Ax = A.apply(sol.x_star);
    SVec g(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) g[i] = Scalar(b[i]) - Ax[i];
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != sol.residual_r[i]) return false;
    return subdiff(f, sol.x_star).contains(A.transpose().apply(g));
}

P1Existence existence_p1(const FuncExpr& f, const QMat& A, const QVec& b) {
    check_dims(f, A, b);
    P1Existence E;
    Subspace R = rowspace_basis(A);
    E.ran_cap_ranAT = intersect_subspace(range_subdiff(f), R);
    ConvexSet ri = ri_range_subdiff(f);
    E.zero_in_ri = ri.contains(SVec(f.n));
    E.ri_cap_ranAT = intersect_subspace(ri, R);
    std::optional<std::string> graph_error;
    if (A.rows() == 1) {
        try {
            E.graph = build_dual_graph(f, A.row(0));
            E.ran_shifted = E.graph->range_shifted();
            E.maximal = intervals_whole(E.ran_shifted);
        } catch (const UnsupportedProblem& e) {
            graph_error = e.what();
        }
    }
    if (E.ran_cap_ranAT.is_empty()) {
        E.yes = false;
        E.reason = ExistReason::ViabilityFail;
        E.step = "a";
        return E;
    }
    if (E.zero_in_ri || !E.ri_cap_ranAT.is_empty()) {
        E.yes = true;
        E.reason = ExistReason::MaximalMonotone;
        E.step = E.zero_in_ri ? "b" : "c";
        if (!E.maximal) E.maximal = true;
        return E;
    }
    E.step = "d";
    if (A.rows() == 1) {
        if (!E.graph) throw Undecidable("no range description for I + A df* A^T: " + *graph_error);
        if (*E.maximal) {
            E.yes = true;
            E.reason = ExistReason::MaximalMonotone;
        } else if (intervals_contain(E.ran_shifted, Scalar(b[0]))) {
            E.yes = true;
            E.reason = ExistReason::SpecificB;
        } else {
            E.yes = false;
            E.reason = ExistReason::NotInRange;
        }
        return E;
    }
    try {
        auto s = solve_p1(f, A, b);
        E.yes = s.has_value();
        E.reason = E.yes ? ExistReason::SpecificB : ExistReason::NotInRange;
    } catch (const UnsupportedProblem& e) {
        throw Undecidable(std::string("no range description for I + A df* A^T: ") + e.what());
    }
    return E;
}

P1Compactness compactness_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A) {
    P1Compactness C;
    Subspace K = kernel_basis(A);
    C.conj_at_ATr = conj_subdiff(f, A.transpose().apply(sol.residual_r));
    C.recession = recession_cone(C.conj_at_ATr);
    C.rec_cap_kerA = intersect_subspace(C.recession, K);
    C.yes = is_origin(C.rec_cap_kerA);
    C.proj_kerA_rec = project_subspace(C.recession, K);
    C.sufficient = is_origin(C.proj_kerA_rec);
    C.inconclusive = C.yes && !C.sufficient;
    return C;
}

P1Uniqueness uniqueness_p1(const P1Solution& sol, const FuncExpr& f, const QMat& A) {
    P1Uniqueness U;
    Subspace K = kernel_basis(A);
    ConvexSet S = conj_subdiff(f, A.transpose().apply(sol.residual_r)).translate(neg(sol.x_star));
    U.shifted_cap_kerA = intersect_subspace(S, K);
    U.yes = is_origin(U.shifted_cap_kerA);
    U.proj_shifted = project_subspace(S, K);
    U.sufficient = is_origin(U.proj_shifted);
    U.inconclusive = U.yes && !U.sufficient;
    return U;
}

MoreauCheck moreau_check(const FuncExpr& f, const QMat& A, const QVec& b) {
    MoreauCheck M;
    P1Existence E = existence_p1(f, A, b);
    if (!E.yes) {
        M.failed_premise = E.reason == ExistReason::ViabilityFail ? "ran df cap ran A^T is empty"
                                                                  : "b is not in ran(I + A df* A^T)";
        return M;
    }
    auto sol = solve_p1(f, A, b);
    if (!sol) throw PreconditionFail("existence holds but no minimizer was produced");
    M.Ax_star = sol->Ax_star;
    // the resolvent by a second route where one exists
    bool any = false;
    std::optional<Residual> J;
    try {
        J = find_residual(f, A, b, sol->route, any);
    } catch (const UnsupportedProblem&) {
        any = false;
    }
    M.resolvent = (any && J) ? J->r : sol->residual_r;
    std::size_t m = A.rows();
    SVec y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = Scalar(b[i]) - M.resolvent[i];
    // y solves y in (A df* A^T)(b - y)
    if (fiber(f, A, M.resolvent, b).is_empty()) return M;
    M.lhs = y;
    M.ok = true;
    for (std::size_t i = 0; i < m; ++i)
        if (M.lhs[i] != M.Ax_star[i]) M.ok = false;
    return M;
}

ConnectCheck connect_check(const P1Solution& sol, const FuncExpr& f, const QMat& A) {
    ConnectCheck C;
    Subspace K = kernel_basis(A);
    ConvexSet S = conj_subdiff(f, A.transpose().apply(sol.residual_r));
    C.rec_conj = intersect_subspace(recession_cone(S), K);
    C.ker_rec = intersect_subspace(recession_kernel(f), K);
    C.cone_fn = intersect_subspace(recession_cone_fn(f), K);
    ExtendedValue fx = eval(f, sol.x_star);
    C.slev_rec = intersect_subspace(recession_cone(sublevel(f, fx.v)), K);
    C.ok = set_equal(C.rec_conj, C.ker_rec) && set_equal(C.ker_rec, C.cone_fn) && set_equal(C.cone_fn, C.slev_rec);
    return C;
}

}  // namespace solnscope
