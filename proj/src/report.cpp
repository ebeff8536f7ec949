#include "solnscope/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "solnscope/diag1.hpp"
#include "solnscope/diag2.hpp"
#include "solnscope/errors.hpp"
#include "solnscope/oracle.hpp"

namespace solnscope {

using json = nlohmann::ordered_json;

bool ReportDocument::undecidable() const {
    return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.undecidable; });
}

const ReportRow* ReportDocument::find(const std::string& key) const {
    for (const auto& r : rows)
        if (r.key == key) return &r;
    return nullptr;
}

namespace {

const char* kNotMaterialized = "not materialized (m > 1)";

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string error_text(const std::exception& e) {
    if (auto* t = dynamic_cast<const Error*>(&e)) return std::string(t->kind()) + ": " + t->what();
    return e.what();
}

template <class T>
struct Lazy {
    std::optional<T> v;
    std::string err;

    template <class F>
    void run(F f) {
        try {
            v.emplace(f());
        } catch (const Undecidable& e) {
            err = e.what();
        } catch (const std::exception& e) {
            err = error_text(e);
        }
    }
    const T& get() const {
        if (!v) throw Undecidable(err);
        return *v;
    }
};

struct Verdict {
    std::optional<bool> yes;
    std::string text;
    json cert = json::object();
};

class Builder {
public:
    Builder(ReportDocument& d) : d_(d) {}

    void group(const std::string& g) { g_ = g; }

    template <class F>
    void row(const std::string& key, const std::string& label, F f) {
        if (!enabled()) return;
        ReportRow r{key, label, g_, "", std::nullopt, "", false};
        try {
            r.value = f();
        } catch (const std::exception& e) {
            r.value = undecidable_text(e);
            r.undecidable = true;
        }
        d_.rows.push_back(r);
    }

    template <class F>
    void verdict(const std::string& key, const std::string& label, F f) {
        if (!enabled()) return;
        ReportRow r{key, label, g_, "", std::nullopt, key, false};
        json cert;
        try {
            Verdict v = f();
            r.value = v.text;
            r.verdict = v.yes;
            cert = v.cert;
        } catch (const std::exception& e) {
            r.value = undecidable_text(e);
            r.undecidable = true;
            cert = json{{"undecidable", r.value.substr(std::string("undecidable: ").size())}};
        }
        d_.certificates[key] = cert;
        d_.rows.push_back(r);
    }

private:
    static std::string undecidable_text(const std::exception& e) {
        if (dynamic_cast<const Undecidable*>(&e)) return std::string("undecidable: ") + e.what();
        return "undecidable: " + error_text(e);
    }
    bool enabled() const {
        const auto& c = d_.spec.checks;
        if (c.empty() || g_ == "samples") return true;
        return std::find(c.begin(), c.end(), g_) != c.end();
    }
    ReportDocument& d_;
    std::string g_;
};

SVec neg(const SVec& v) {
    SVec o(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) o[k] = -v[k];
    return o;
}

// points of a closed polyhedral X on segments from x0 towards LP vertices of X cut by a box
std::vector<SVec> sample_points(const ConvexSet& X, const SVec& x0, std::uint64_t seed, int count) {
    std::size_t n = X.ambient_dim();
    double B = 10;
    for (const auto& s : x0) B = std::max(B, std::ceil(std::fabs(s.to_double())) + 10);
    std::vector<LinRow> rows = X.rows();
    for (std::size_t k = 0; k < n; ++k) {
        LinRow up, dn;
        up.a = unit(n, k);
        up.b = Scalar(Q(static_cast<long>(B)));
        dn.a = scale(Q(-1), unit(n, k));
        dn.b = Scalar(Q(static_cast<long>(B)));
        rows.push_back(up);
        rows.push_back(dn);
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3), step(0, 8);
    std::vector<SVec> out;
    for (int s = 0; s < count; ++s) {
        QVec c(n);
        for (auto& q : c) q = coef(rng);
        LPResult L = lp_maximize(rows, c, n);
        if (L.status != LPResult::Optimal) continue;
        Q t(step(rng), 8);
        SVec p(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = x0[k] + (L.x[k] - x0[k]) * t;
        out.push_back(p);
    }
    return out;
}

json set_json(const ConvexSet& S) { return render(S); }
json set_json(const SetUnion& S) { return render(S); }

void build_p1(Builder& B, ReportDocument& doc, const RunOptions& opt) {
    const FuncExpr& f = doc.spec.f;
    const QMat& A = doc.spec.A;
    const QVec& b = doc.spec.b;
    std::size_t m = A.rows(), n = f.n;
    Subspace K = kernel_basis(A);

    Lazy<P1Existence> E;
    E.run([&] { return existence_p1(f, A, b); });
    Lazy<std::optional<P1Solution>> S;
    S.run([&] {
        if (!E.get().yes) return std::optional<P1Solution>();
        auto s = solve_p1(f, A, b);
        if (!s) throw PreconditionFail("existence holds but no minimizer was produced");
        return s;
    });
    Lazy<ConvexSet> X;
    X.run([&] {
        const auto& s = S.get();
        return s ? solution_set_p1(*s, f, A) : ConvexSet::empty(n);
    });
    auto sol = [&]() -> const std::optional<P1Solution>& { return S.get(); };
    Lazy<std::optional<P1Compactness>> Cm;
    Cm.run([&] { return sol() ? std::optional<P1Compactness>(compactness_p1(*sol(), f, A)) : std::nullopt; });
    Lazy<std::optional<P1Uniqueness>> Un;
    Un.run([&] { return sol() ? std::optional<P1Uniqueness>(uniqueness_p1(*sol(), f, A)) : std::nullopt; });
    auto slev = [&] { return sublevel(f, eval(f, sol()->x_star).v); };
    auto conj_ATr = [&] { return conj_subdiff(f, A.transpose().apply(sol()->residual_r)); };
    const std::string dash = "---";

    B.group("existence");
    B.verdict("existence", "existence", [&] {
        const auto& e = E.get();
        Verdict v{e.yes, yn(e.yes) + " (" + to_string(e.reason) + ")"};
        v.cert = json{{"reason", to_string(e.reason)},
                      {"decided_by", e.step},
                      {"ran_df_cap_ran_AT", set_json(e.ran_cap_ranAT)},
                      {"ri_ran_df_cap_ran_AT", set_json(e.ri_cap_ranAT)},
                      {"zero_in_ri_ran_df", e.zero_in_ri}};
        if (e.graph) v.cert["ran_I_plus_A_df_conj_AT"] = render_intervals(e.ran_shifted);
        return v;
    });
    B.row("x_r", "x_r*", [&] { return sol() ? render_point(sol()->x_r_star) : dash; });
    B.row("X", "X", [&] { return render(X.get()); });
    B.row("residual", "r = b - Ax*", [&] { return sol() ? render_point(sol()->residual_r) : dash; });
    B.row("conj", "f*(u)", [&] { return describe_conj(f); });
    B.row("subdiff", "df(x)", [&] { return describe_subdiff(f); });
    B.row("conj_subdiff", "df*(u)", [&] { return describe_conj_subdiff(f); });
    B.row("ran_cap", "ran df cap ran A^T", [&] { return render(E.get().ran_cap_ranAT); });
    B.row("graph", "A df* A^T (y)", [&] { return m == 1 ? build_dual_graph(f, A.row(0)).str("y") : std::string(kNotMaterialized); });
    B.row("ran_shifted", "ran(I + A df* A^T)",
          [&] { return m == 1 ? render_intervals(build_dual_graph(f, A.row(0)).range_shifted()) : std::string(kNotMaterialized); });
    B.verdict("maximality", "maximality of A df* A^T", [&] {
        const auto& e = E.get();
        if (!e.maximal) return Verdict{std::nullopt, "not evaluated", json{{"reason", "no range description for m > 1"}}};
        Verdict v{*e.maximal, yn(*e.maximal)};
        if (e.graph)
            v.cert = json{{"ran_I_plus_A_df_conj_AT", render_intervals(e.ran_shifted)}};
        else
            v.cert = json{{"ri_ran_df_cap_ran_AT", set_json(e.ri_cap_ranAT)}, {"zero_in_ri_ran_df", e.zero_in_ri}};
        return v;
    });
    B.row("ri_cap", "ri ran df cap ran A^T", [&] { return render(E.get().ri_cap_ranAT); });
    B.verdict("zero_in_ri", "0 in ri ran df", [&] {
        const auto& e = E.get();
        return Verdict{e.zero_in_ri, yn(e.zero_in_ri), json{{"ri_ran_df", render(ri_range_subdiff(f))}}};
    });

    B.group("compactness");
    B.verdict("compactness", "compactness", [&] {
        const auto& c = Cm.get();
        if (!c) return Verdict{false, "no (X empty)", json{{"solution_set", "empty"}}};
        std::string t = yn(c->yes);
        if (c->inconclusive) t += " (projection test fails)";
        return Verdict{c->yes, t,
                       json{{"rec_cap_kerA", set_json(c->rec_cap_kerA)},
                            {"proj_kerA_rec", set_json(c->proj_kerA_rec)},
                            {"projection_test", c->sufficient}}};
    });
    B.row("recession", "f_inf(d)", [&] { return describe_recession(f); });
    B.row("slev_rec", "(slev_x* f)_inf", [&] { return sol() ? render(recession_cone(slev())) : dash; });
    B.row("ker_rec", "ker f_inf", [&] { return render(recession_kernel(f)); });
    B.row("R_f", "R_f", [&] { return render(recession_cone_fn(f)); });
    B.row("ker_rec_kerA", "ker f_inf cap ker A", [&] { return render(intersect_subspace(recession_kernel(f), K)); });
    B.row("R_f_kerA", "R_f cap ker A", [&] { return render(intersect_subspace(recession_cone_fn(f), K)); });
    B.row("conj_ATr", "df*(A^T r)", [&] { return sol() ? render(conj_ATr()) : dash; });
    B.row("conj_ATr_rec", "(df*(A^T r))_inf", [&] { return Cm.get() ? render(Cm.get()->recession) : dash; });
    B.row("conj_ATr_rec_kerA", "(df*(A^T r))_inf cap ker A", [&] { return Cm.get() ? render(Cm.get()->rec_cap_kerA) : dash; });
    B.row("proj_rec", "P_kerA((df*(A^T r))_inf)", [&] { return Cm.get() ? render(Cm.get()->proj_kerA_rec) : dash; });

    B.group("uniqueness");
    B.verdict("uniqueness", "uniqueness", [&] {
        const auto& u = Un.get();
        if (!u) return Verdict{false, "no (X empty)", json{{"solution_set", "empty"}}};
        std::string t = yn(u->yes);
        if (u->inconclusive) t += " (projection test fails)";
        return Verdict{u->yes, t,
                       json{{"shifted_cap_kerA", set_json(u->shifted_cap_kerA)},
                            {"proj_shifted", set_json(u->proj_shifted)},
                            {"projection_test", u->sufficient}}};
    });
    B.row("x_star", "x* (chosen)", [&] { return sol() ? render_point(sol()->x_star) : dash; });
    B.row("slev", "slev_x* f", [&] { return sol() ? render(slev()) : dash; });
    B.row("tangent", "T_slev(x*) = D_f(x*)", [&] { return sol() ? render(tangent_cone(slev(), sol()->x_star)) : dash; });
    B.row("tangent_kerA", "T_slev(x*) cap ker A",
          [&] { return sol() ? render(intersect_subspace(tangent_cone(slev(), sol()->x_star), K)) : dash; });
    B.row("shift_r", "(df*(A^T r) - x_r*) cap ker A",
          [&] { return sol() ? render(intersect_subspace(conj_ATr().translate(neg(sol()->x_r_star)), K)) : dash; });
    B.row("shift_x", "(df*(A^T r) - x*) cap ker A", [&] { return Un.get() ? render(Un.get()->shifted_cap_kerA) : dash; });
    B.row("proj_conj", "(P_kerA o df*)(A^T r)", [&] { return sol() ? render(project_subspace(conj_ATr(), K)) : dash; });
    B.row("proj_shift", "P_kerA(df*(A^T r) - x*)", [&] { return Un.get() ? render(Un.get()->proj_shifted) : dash; });

    B.group("moreau");
    B.verdict("moreau", "b - (I + A df* A^T)^-1(b) = Ax*", [&] {
        MoreauCheck M = moreau_check(f, A, b);
        if (!M.failed_premise.empty())
            return Verdict{std::nullopt, "not applicable (" + M.failed_premise + ")", json{{"failed_premise", M.failed_premise}}};
        return Verdict{M.ok, yn(M.ok),
                       json{{"resolvent", render_point(M.resolvent)}, {"b_minus_resolvent", render_point(M.lhs)}, {"Ax_star", render_point(M.Ax_star)}}};
    });

    B.group("connect");
    B.verdict("connect", "recession sets agree on ker A", [&] {
        if (!sol()) return Verdict{std::nullopt, "not applicable (X empty)", json{{"solution_set", "empty"}}};
        ConnectCheck C = connect_check(*sol(), f, A);
        std::string t = yn(C.ok);
        if (C.ok) t += ": " + render(C.rec_conj);
        return Verdict{C.ok, t,
                       json{{"conj_rec_kerA", set_json(C.rec_conj)},
                            {"ker_rec_kerA", set_json(C.ker_rec)},
                            {"R_f_kerA", set_json(C.cone_fn)},
                            {"slev_rec_kerA", set_json(C.slev_rec)}}};
    });

    if (opt.seed) {
        B.group("samples");
        B.verdict("samples", "sampled members of X", [&] {
            if (!sol()) return Verdict{std::nullopt, "not applicable (X empty)", json{{"seed", *opt.seed}}};
            const ConvexSet& XS = X.get();
            if (!XS.is_polyhedral()) return Verdict{std::nullopt, "not sampled (X is not polyhedral)", json{{"seed", *opt.seed}}};
            auto pts = sample_points(XS, sol()->x_star, *opt.seed, 20);
            bool ok = true;
            for (const auto& p : pts) {
                P1Solution s = *sol();
                s.x_star = p;
                if (!XS.contains(p) || !fermat_p1(s, f, A, b)) ok = false;
            }
            return Verdict{ok, yn(ok) + " (" + std::to_string(pts.size()) + " points satisfy the optimality condition)",
                           json{{"seed", *opt.seed}, {"points", pts.size()}}};
        });
    }

    if (opt.oracle_verify) {
        char buf[200];
        if (f.norm1 && n <= 8) {
            auto L = lasso_enumerate(A, b);
            bool agree = sol() && L.Ax == to_qvec(sol()->Ax_star);
            doc.oracle.push_back("sign-pattern enumeration: " + std::to_string(L.solutions.size()) + " KKT points, Ax = " + vec_str(L.Ax) +
                                 ", agrees with exact: " + yn(agree));
        }
        try {
            auto R = prox_grad(f, A, b, 20000, 0);
            if (sol() && !R.candidates.empty()) {
                double gap = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    double ax = 0;
                    for (std::size_t j = 0; j < n; ++j) ax += A(i, j).get_d() * R.candidates[0][j];
                    gap = std::max(gap, std::fabs(ax - sol()->Ax_star[i].to_double()));
                }
                std::snprintf(buf, sizeof buf, "proximal gradient: max |Ax - Ax*| = %.3e, agrees within 1e-6: %s", gap, gap <= 1e-6 ? "yes" : "no");
            } else {
                std::snprintf(buf, sizeof buf, "proximal gradient: objective %.6g, divergent: %s", R.value, R.divergent ? "yes" : "no");
            }
            doc.oracle.push_back(buf);
        } catch (const NoProx&) {
            doc.oracle.push_back("proximal gradient: no proximal map for this function");
        }
        if (n <= 2) {
            GridSpec g;
            g.lo.assign(n, -8.0);
            g.hi.assign(n, 8.0);
            auto R = grid_minimize(p1_objective(f, A, b), g);
            std::snprintf(buf, sizeof buf, "grid: %zu candidates, value %.6g, boundary hit: %s, divergent: %s", R.candidates.size(), R.value,
                          R.boundary_hit ? "yes" : "no", R.divergent ? "yes" : "no");
            doc.oracle.push_back(buf);
        }
    }
}

void build_p2(Builder& B, ReportDocument& doc, const RunOptions& opt) {
    const FuncExpr& f = doc.spec.f;
    const QMat& A = doc.spec.A;
    const QVec& b = doc.spec.b;
    std::size_t m = A.rows(), n = f.n;
    Subspace K = kernel_basis(A);
    const std::string dash = "---";

    Lazy<P2Report> R;
    R.run([&] { return analyze_p2(f, A, b); });
    Lazy<Exactness> Ex;
    Ex.run([&] { return exactness_check(f, A, b); });
    auto rep = [&]() -> const P2Report& { return R.get(); };
    auto C_text = [&] {
        if (!rep().solution) return std::string("empty");
        std::string s = render(rep().solution->C);
        if (!rep().solution->C_complete) s += " (one multiplier shown)";
        return s;
    };

    B.group("existence");
    B.verdict("existence", "existence", [&] {
        const auto& r = rep();
        std::string detail;
        switch (r.reason) {
            case P2Reason::BNotInRange: detail = "b not in ran A"; break;
            case P2Reason::ViabilityFail: detail = "dom(A |> df) = empty"; break;
            case P2Reason::NoCertificate: detail = "b not in dom(A |> df)"; break;
            case P2Reason::Yes: break;
        }
        Verdict v{r.yes, r.yes ? "yes" : "no (" + to_string(r.reason) + ": " + detail + ")"};
        v.cert = json{{"reason", to_string(r.reason)}, {"b_in_ran_A", r.b_in_range}, {"ran_df_cap_ran_AT", set_json(r.ran_cap_ranAT)}};
        if (r.cert) {
            v.cert["multiplier"] = render_point(r.cert->v);
            v.cert["A_T_v"] = render_point(r.cert->witness);
        }
        return v;
    });
    B.row("x_r", "x_r* = A^+ b", [&] { return rep().x_r_star ? render_point(to_svec(*rep().x_r_star)) : dash; });
    B.row("X", "X", [&] { return rep().solution ? render(rep().solution->X) : std::string("empty"); });
    B.row("A_dom", "A(dom f)", [&] { return m == 1 ? image_1d(dom(f), A.row(0)).str() : std::string(kNotMaterialized); });
    B.row("conj_subdiff", "df*(u)", [&] { return describe_conj_subdiff(f); });
    B.row("graph", "A df* A^T (v)", [&] { return m == 1 ? build_dual_graph(f, A.row(0)).str("v") : std::string(kNotMaterialized); });
    B.row("dom_pc", "dom(A |> df)", [&] { return m == 1 ? render_intervals(Ex.get().dom) : std::string(kNotMaterialized); });
    B.row("ran_cap", "ran df cap ran A^T", [&] { return render(rep().ran_cap_ranAT); });

    B.row("multiplier", "dual certificate v", [&] {
        const auto& r = rep();
        return r.cert ? render_point(r.cert->v) + ", A^T v = " + render_point(r.cert->witness) : dash;
    });
    B.row("C", "U df*(A^T v), v in (A |> df)(b)", C_text);

    B.group("exactness");
    B.verdict("b_in_dom", "b in dom(A |> df)", [&] {
        const auto& e = Ex.get();
        json c = m == 1 ? json{{"dom_A_pc_df", render_intervals(e.dom)}} : json{{"method", "LP minimizer with multiplier"}};
        return Verdict{e.exact, yn(e.exact), c};
    });
    B.verdict("exact", "exactness of A |> f at b", [&] {
        const auto& e = Ex.get();
        return Verdict{e.exact, yn(e.exact), json{{"criterion", "b in dom(A |> df)"}, {"holds", e.exact}}};
    });
    B.verdict("in_res", "b in ran(I + d(A |> f))", [&] {
        const auto& e = Ex.get();
        if (!e.in_resolvent_range) return Verdict{std::nullopt, std::string(kNotMaterialized), json{{"reason", "m > 1"}}};
        return Verdict{*e.in_resolvent_range, yn(*e.in_resolvent_range), json{{"criterion", "b - v in (A df* A^T)(v) for some v"}}};
    });
    B.row("prox", "prox_{A |> f}(b)", [&] {
        const auto& e = Ex.get();
        if (e.prox) return "(" + e.prox->str() + ")";
        if (e.in_resolvent_range && *e.in_resolvent_range) return std::string("exists, no closed form");
        return dash;
    });
    B.verdict("exact_prox", "exactness of A |> f at prox(b)", [&] {
        const auto& e = Ex.get();
        if (!e.prox) return Verdict{std::nullopt, dash, json{{"reason", "prox not available in closed form"}}};
        return Verdict{e.exact_at_prox, yn(e.exact_at_prox), json{{"prox", e.prox->str()}}};
    });

    B.group("influence");
    B.verdict("b_in_conj0", "b in (A o df*)(0)", [&] {
        const auto& r = rep();
        return Verdict{r.b_in_A_conj0, yn(r.b_in_A_conj0), json{{"df_conj_at_0", render(conj_subdiff(f, SVec(n)))}}};
    });
    B.verdict("min_f", "(A |> f)(b) = min f", [&] {
        const auto& r = rep();
        bool y = r.influence == Influence::NoEffect;
        return Verdict{y, yn(y), json{{"influence", to_string(r.influence)}, {"min_f_attained", r.min_f_attained}}};
    });
    B.verdict("influence", "constraint influence", [&] {
        const auto& r = rep();
        return Verdict{std::nullopt, to_string(r.influence),
                       json{{"solvable", r.yes}, {"b_in_A_df_conj_0", r.b_in_A_conj0}, {"min_f_attained", r.min_f_attained}}};
    });

    Lazy<std::optional<P2Verdict>> U, Cp;
    U.run([&] { return rep().solution ? std::optional<P2Verdict>(uniqueness_p2(*rep().solution, *rep().x_star, A)) : std::nullopt; });
    Cp.run([&] { return rep().solution ? std::optional<P2Verdict>(compactness_p2(*rep().solution, A)) : std::nullopt; });

    B.group("uniqueness");
    B.verdict("uniqueness", "uniqueness", [&] {
        const auto& u = U.get();
        if (!u) return Verdict{false, "no (X empty)", json{{"solution_set", "empty"}}};
        return Verdict{u->yes, yn(u->yes), json{{"C_minus_x_cap_kerA", set_json(u->witness)}, {"C_complete", rep().solution->C_complete}}};
    });
    B.row("x_star", "x* (chosen)", [&] { return rep().x_star ? render_point(*rep().x_star) : dash; });
    B.row("C_u", "C = U df*(A^T v), v in (A |> df)(b)", C_text);
    B.row("C_shift", "(C - x*) cap ker A", [&] { return U.get() ? render(U.get()->witness) : std::string("empty"); });
    B.row("C_shift_r", "(C - x_r*) cap ker A", [&] {
        const auto& r = rep();
        if (!r.solution) return std::string("empty");
        SetUnion W;
        W.n = n;
        for (const auto& M : r.solution->C.members) W.push(intersect_subspace(M.translate(neg(to_svec(*r.x_r_star))), K));
        return render(W);
    });

    B.group("compactness");
    B.verdict("compactness", "compactness", [&] {
        const auto& c = Cp.get();
        if (!c) return Verdict{false, "no (X empty)", json{{"solution_set", "empty"}}};
        return Verdict{c->yes, yn(c->yes), json{{"C_rec_cap_kerA", set_json(c->witness)}}};
    });
    B.row("C_rec", "(C)_inf cap ker A", [&] { return Cp.get() ? render(Cp.get()->witness) : std::string("empty"); });

    if (opt.seed) {
        B.group("samples");
        B.verdict("samples", "sampled members of X", [&] {
            const auto& r = rep();
            if (!r.solution) return Verdict{std::nullopt, "not applicable (X empty)", json{{"seed", *opt.seed}}};
            const ConvexSet& XS = r.solution->X;
            if (!XS.is_polyhedral()) return Verdict{std::nullopt, "not sampled (X is not polyhedral)", json{{"seed", *opt.seed}}};
            auto pts = sample_points(XS, *r.x_star, *opt.seed, 20);
            ExtendedValue fx = eval(f, *r.x_star);
            bool ok = true;
            for (const auto& p : pts) {
                SVec Ap = A.apply(p);
                for (std::size_t i = 0; i < m; ++i)
                    if (Ap[i] != Scalar(b[i])) ok = false;
                if (eval(f, p) != fx) ok = false;
            }
            return Verdict{ok, yn(ok) + " (" + std::to_string(pts.size()) + " points feasible with the optimal value)",
                           json{{"seed", *opt.seed}, {"points", pts.size()}}};
        });
    }

    if (opt.oracle_verify) doc.oracle.push_back("no numerical reference for the constrained problem");
}

}  // namespace

ReportDocument run_report(const ProblemSpec& spec, const RunOptions& opt) {
    ReportDocument doc;
    doc.spec = spec;
    Builder B(doc);
    if (spec.kind == ProblemKind::Regularized)
        build_p1(B, doc, opt);
    else
        build_p2(B, doc, opt);
    return doc;
}

std::string render_text(const ReportDocument& doc) {
    const ProblemSpec& s = doc.spec;
    std::string out = "solnscope report\n";
    if (!s.name.empty()) out += "name: " + s.name + "\n";
    out += std::string("kind: ") + (s.kind == ProblemKind::Regularized ? "regularized" : "constrained") + "\n";
    out += "function: " + s.function + "\n";
    out += "A: " + render_matrix(s.A) + "\n";
    out += "b: " + render_vector(s.b) + "\n";
    std::size_t w = 0;
    for (const auto& r : doc.rows) w = std::max(w, r.label.size());
    std::string group;
    for (const auto& r : doc.rows) {
        if (r.group != group) {
            group = r.group;
            out += "\n[" + group + "]\n";
        }
        out += r.label + std::string(w - r.label.size(), ' ') + " | " + r.value + "\n";
    }
    if (!doc.oracle.empty()) {
        out += "\n[oracle]\n";
        for (const auto& l : doc.oracle) out += l + "\n";
    }
    return out;
}

json render_json(const ReportDocument& doc) {
    const ProblemSpec& s = doc.spec;
    json A = json::array();
    for (std::size_t i = 0; i < s.A.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.A.cols(); ++j) row.push_back(qstr(s.A(i, j)));
        A.push_back(row);
    }
    json b = json::array();
    for (const auto& q : s.b) b.push_back(qstr(q));
    json rows = json::array();
    for (const auto& r : doc.rows) {
        json j{{"key", r.key}, {"label", r.label}, {"group", r.group}, {"value", r.value}};
        j["verdict"] = r.verdict ? json(*r.verdict) : json(nullptr);
        j["certificate"] = r.certificate.empty() ? json(nullptr) : json(r.certificate);
        j["undecidable"] = r.undecidable;
        rows.push_back(j);
    }
    json out{{"format", "solnscope-report/1"},
             {"spec",
              {{"name", s.name},
               {"kind", s.kind == ProblemKind::Regularized ? "regularized" : "constrained"},
               {"function", s.function},
               {"A", A},
               {"b", b}}},
             {"rows", rows},
             {"certificates", doc.certificates},
             {"undecidable", doc.undecidable()}};
    if (!doc.oracle.empty()) out["oracle"] = doc.oracle;
    return out;
}

}  // namespace solnscope
