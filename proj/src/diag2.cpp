#include "solnscope/diag2.hpp"

#include "solnscope/errors.hpp"

namespace solnscope {

std::string to_string(P2Reason r) {
    switch (r) {
        case P2Reason::BNotInRange: return "BNotInRange";
        case P2Reason::ViabilityFail: return "ViabilityFail";
        case P2Reason::NoCertificate: return "NoCertificate";
        case P2Reason::Yes: return "Yes";
    }
    return "";
}

std::string to_string(Influence i) {
    switch (i) {
        case Influence::NoEffect: return "NoEffect";
        case Influence::StrictIncrease: return "StrictIncrease";
        case Influence::NotApplicable: return "NotApplicable";
    }
    return "";
}

namespace {

void check_dims(const FuncExpr& f, const QMat& A, const QVec& b) {
    if (A.cols() != f.n) throw DimensionError("A has " + std::to_string(A.cols()) + " columns, f lives in R^" + std::to_string(f.n));
    if (A.rows() != b.size()) throw DimensionError("b has the wrong length");
}

SVec neg(const SVec& v) {
    SVec o(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) o[k] = -v[k];
    return o;
}

AffineFlat feasible_flat(const QMat& A, const QVec& b) {
    AffineFlat F;
    F.anchor = to_svec(pseudoinverse(A) * b);
    F.directions = kernel_basis(A);
    return F;
}

// a point strictly inside (lo, hi)
Scalar interior_point(const ExtScalar& lo, const ExtScalar& hi) {
    if (lo.finite() && hi.finite()) return (lo.v + hi.v) / Q(2);
    if (lo.finite()) return lo.v + Scalar(1);
    if (hi.finite()) return hi.v - Scalar(1);
    return Scalar(0);
}

std::optional<Scalar> first_multiplier(const DualGraph& G, const Scalar& b, bool& interval_hit) {
    interval_hit = false;
    for (const auto& p : G.pieces) {
        if (p.point) {
            if (p.image.contains(b)) return p.v0;
            continue;
        }
        if (p.phi.is_constant()) {
            if (p.phi.at(Scalar(0)) == b) {
                interval_hit = true;
                return interior_point(p.lo, p.hi);
            }
            continue;
        }
        ExtScalar l = p.phi.limit(p.lo, +1), h = p.phi.limit(p.hi, -1);
        if (!Interval1::make(l, false, h, false).contains(b)) continue;
        Scalar v;
        if (!p.phi.solve(b, Q(0), v)) throw Undecidable("no closed form for the preimage of " + p.phi.str());
        return v;
    }
    return std::nullopt;
}

// polyhedral f, any m: an LP minimizer over Ax = b, then a multiplier from the subdifferential there
std::optional<DualCertificate> polyhedral_certificate(const FuncExpr& f, const QMat& A, const QVec& b) {
    std::size_t n = f.n, m = A.rows();
    auto blocks = max_affine_blocks(f);
    std::size_t N = n + blocks.size();
    std::vector<LinRow> rows;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        for (const auto& p : blocks[k]) {
            LinRow r;
            r.a.assign(N, Q(0));
            std::copy(p.a.begin(), p.a.end(), r.a.begin());
            r.a[n + k] = -1;
            r.b = Scalar(Q(-p.b));
            rows.push_back(r);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        LinRow r;
        r.a.assign(N, Q(0));
        for (std::size_t j = 0; j < n; ++j) r.a[j] = A(i, j);
        r.b = Scalar(b[i]);
        r.rel = Rel::Eq;
        rows.push_back(r);
    }
    QVec c(N, Q(0));
    for (std::size_t j = 0; j < n; ++j) c[j] = -f.lin[j];
    for (std::size_t k = 0; k < blocks.size(); ++k) c[n + k] = -1;
    LPResult L = lp_maximize(rows, c, N);
    if (L.status != LPResult::Optimal) return std::nullopt;
    SVec x(L.x.begin(), L.x.begin() + n);
    ConvexSet D = subdiff(f, x);
    std::vector<LinRow> vrows;
    for (const auto& r : D.rows()) {
        LinRow s;
        s.a = A * r.a;
        s.b = r.b;
        s.rel = r.rel;
        vrows.push_back(s);
    }
    SVec v;
    if (!lp_feasible_point(vrows, m, v)) throw PreconditionFail("LP optimum without a multiplier");
    return DualCertificate{v, A.transpose().apply(v)};
}

}  // namespace

std::optional<QVec> range_component(const QMat& A, const QVec& b) {
    if (A.rows() != b.size()) throw DimensionError("b has the wrong length");
    QVec x = pseudoinverse(A) * b;
    if (A * x != b) return std::nullopt;
    return x;
}

std::optional<DualCertificate> certificate_search(const FuncExpr& f, const QMat& A, const QVec& b) {
    check_dims(f, A, b);
    if (!range_component(A, b)) throw PreconditionFail("b is not in ran A");
    if (A.rows() == 1) {
        DualGraph G = build_dual_graph(f, A.row(0));
        bool interval_hit = false;
        auto v = first_multiplier(G, Scalar(b[0]), interval_hit);
        if (!v) return std::nullopt;
        SVec vv{*v};
        return DualCertificate{vv, A.transpose().apply(vv)};
    }
    if (f.polyhedral()) return polyhedral_certificate(f, A, b);
    throw Undecidable("multiplier search for m > 1 covers polyhedral functions only");
}

P2SolutionSet solution_set_p2(const FuncExpr& f, const QMat& A, const QVec& b, const DualCertificate& cert) {
    check_dims(f, A, b);
    P2SolutionSet S;
    S.X = intersect_flat(conj_subdiff(f, cert.witness), feasible_flat(A, b));
    S.C.n = f.n;
    if (A.rows() == 1) {
        DualGraph G = build_dual_graph(f, A.row(0));
        try {
            for (const auto& v : G.preimages(Scalar(b[0]))) S.multipliers.push_back(SVec{v});
        } catch (const UnionNotFinite&) {
            S.multipliers = {cert.v};
            S.C_complete = false;
        } catch (const UnsupportedProblem&) {
            S.multipliers = {cert.v};
            S.C_complete = false;
        }
    } else {
        S.multipliers = {cert.v};
        S.C_complete = false;
    }
    for (const auto& v : S.multipliers) S.C.push(conj_subdiff(f, A.transpose().apply(v)));
    return S;
}

P2Verdict uniqueness_p2(const P2SolutionSet& S, const SVec& x_star, const QMat& A) {
    P2Verdict V;
    V.witness.n = A.cols();
    if (S.X.is_empty()) {
        V.vacuous = true;
        return V;
    }
    Subspace K = kernel_basis(A);
    V.yes = true;
    for (const auto& M : S.C.members) {
        ConvexSet D = intersect_subspace(M.translate(neg(x_star)), K);
        if (!D.is_empty() && !is_origin(D)) V.yes = false;
        V.witness.push(D);
    }
    return V;
}

P2Verdict compactness_p2(const P2SolutionSet& S, const QMat& A) {
    P2Verdict V;
    V.witness.n = A.cols();
    if (S.X.is_empty()) {
        V.vacuous = true;
        return V;
    }
    Subspace K = kernel_basis(A);
    V.yes = true;
    for (const auto& M : S.C.members) {
        ConvexSet R = intersect_subspace(recession_cone(M), K);
        if (!is_origin(R)) V.yes = false;
        V.witness.push(R);
    }
    return V;
}

Exactness exactness_check(const FuncExpr& f, const QMat& A, const QVec& b) {
    check_dims(f, A, b);
    Exactness E;
    if (A.rows() == 1) {
        DualGraph G = build_dual_graph(f, A.row(0));
        E.dom = G.range();
        E.exact = intervals_contain(E.dom, Scalar(b[0]));
        E.in_resolvent_range = intervals_contain(G.range_shifted(), Scalar(b[0]));
        Scalar r;
        try {
            if (*E.in_resolvent_range && G.resolvent(Scalar(b[0]), r)) {
                E.prox = Scalar(b[0]) - r;
                E.exact_at_prox = intervals_contain(E.dom, *E.prox);
            }
        } catch (const UnsupportedProblem&) {
            // no closed form for the resolvent; prox stays unset
        }
        return E;
    }
    if (!f.polyhedral()) throw Undecidable("exactness of the infimal postcomposition is decided for m = 1 or polyhedral f");
    E.exact = range_component(A, b) && polyhedral_certificate(f, A, b).has_value();
    return E;
}

P2Report analyze_p2(const FuncExpr& f, const QMat& A, const QVec& b) {
    check_dims(f, A, b);
    P2Report R;
    R.ran_cap_ranAT = intersect_subspace(range_subdiff(f), rowspace_basis(A));
    ConvexSet conj0 = conj_subdiff(f, SVec(f.n));
    R.min_f_attained = !conj0.is_empty();
    if (A.rows() == 1) {
        try {
            R.graph = build_dual_graph(f, A.row(0));
        } catch (const UnsupportedProblem&) {
        }
    }
    R.x_r_star = range_component(A, b);
    R.b_in_range = R.x_r_star.has_value();
    if (!R.b_in_range) {
        R.reason = P2Reason::BNotInRange;
        return R;
    }
    R.b_in_A_conj0 = !intersect_flat(conj0, feasible_flat(A, b)).is_empty();
    if (R.ran_cap_ranAT.is_empty()) {
        R.reason = P2Reason::ViabilityFail;
        return R;
    }
    R.cert = certificate_search(f, A, b);
    if (!R.cert) {
        R.reason = P2Reason::NoCertificate;
        return R;
    }
    R.solution = solution_set_p2(f, A, b, *R.cert);
    if (R.solution->X.is_empty()) throw PreconditionFail("multiplier found but the solution set is empty");
    if (!R.solution->X.is_polyhedral()) throw UnsupportedSet("solution set is not polyhedral; no canonical point");
    if (!subdiff(f, min_norm_point(R.solution->X)).contains(R.cert->witness))
        throw PreconditionFail("multiplier fails A^T v in df(x*)");
    R.x_star = min_norm_point(R.solution->X);
    R.yes = true;
    R.reason = P2Reason::Yes;
    R.influence = R.b_in_A_conj0 ? Influence::NoEffect : Influence::StrictIncrease;
    return R;
}

Influence constraint_influence(const FuncExpr& f, const QMat& A, const QVec& b) {
    return analyze_p2(f, A, b).influence;
}

}  // namespace solnscope
