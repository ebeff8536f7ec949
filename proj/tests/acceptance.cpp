// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solnscope/diag1.hpp"
#include "solnscope/diag2.hpp"
#include "solnscope/dsl.hpp"
#include "solnscope/errors.hpp"
#include "solnscope/oracle.hpp"
#include "solnscope/report.hpp"
#include "support.hpp"

using namespace solnscope;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void fail(const std::string& why) {
        pass = false;
        if (notes.size() < 6) notes.push_back(why);
    }
    void expect(bool c, const std::string& why) {
        if (!c) fail(why);
    }
};

// first word of a verdict cell: "yes (MaximalMonotone)" -> "yes"
std::string word(const std::string& v) { return v.substr(0, v.find_first_of(" :(")); }

// table transcriptions: key -> cell, with "yes"/"no" cells compared on the verdict word
using Column = std::vector<std::pair<std::string, std::string>>;

void compare_column(Outcome& O, const std::string& stem, const Column& col) {
    ReportDocument doc = run_report(testing::load_spec(stem));
    for (const auto& [key, expect] : col) {
        const ReportRow* r = doc.find(key);
        if (!r) {
            O.fail(stem + ": no row " + key);
            continue;
        }
        std::string got = (expect == "yes" || expect == "no") ? word(r->value) : r->value;
        O.expect(got == expect, stem + "." + key + ": got \"" + r->value + "\", want \"" + expect + "\"");
    }
}

FuncExpr fn(const std::string& s, std::size_t n) { return parse_function(s, n); }

bool origin_set(const ConvexSet& S) { return is_origin(S); }

// ---------------------------------------------------------------- 1

Outcome lasso_example() {
    Outcome O;
    auto t0 = Clock::now();
    FuncExpr f = FuncExpr::norm_1(3);
    QMat A{{1, 0, 2}, {0, 2, -2}};
    QVec b{1, 1};
    auto sol = solve_p1(f, A, b);
    if (!sol) {
        O.fail("no solution");
        return O;
    }
    O.expect(sol->x_star == to_svec(QVec{0, Q(1, 4), 0}), "x* = " + vec_str(sol->x_star));
    SVec ATr = A.transpose().apply(sol->residual_r);
    O.expect(ATr == to_svec(QVec{1, 1, 1}), "A^T r = " + vec_str(ATr));
    auto U = uniqueness_p1(*sol, f, A);
    O.expect(U.yes, "uniqueness not established");
    O.expect(origin_set(U.shifted_cap_kerA), "(df*(A^T r) - x*) cap ker A = " + render(U.shifted_cap_kerA));
    O.expect(!U.sufficient, "projection uniqueness test unexpectedly passes");
    O.expect(render(U.proj_shifted) == "{t*(-2,1,1): t in R}", "P_kerA(df*(A^T r) - x*) = " + render(U.proj_shifted));
    auto C = compactness_p1(*sol, f, A);
    O.expect(C.yes, "compactness not established");
    O.expect(!C.sufficient, "projection compactness test unexpectedly passes");
    O.expect(render(C.conj_at_ATr) == "[0,+inf) x [0,+inf) x [0,+inf)", "df*(A^T r) = " + render(C.conj_at_ATr));
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    O.expect(secs < 1.0, "runtime " + std::to_string(secs) + " s");
    return O;
}

// ---------------------------------------------------------------- 2

Outcome p1_tables() {
    Outcome O;
    auto t0 = Clock::now();
    compare_column(O, "p1_ex1", {{"existence", "no"}, {"x_r", "---"}, {"X", "empty"}, {"conj", "iota_{(1,0)}"}, {"subdiff", "{(1,0)}"},
                                 {"conj_subdiff", "R^2 if u = (1,0); empty otherwise"}, {"ran_cap", "empty"}, {"zero_in_ri", "no"},
                                 {"compactness", "no"}, {"recession", "d1"}, {"ker_rec", "{0} x R"}, {"R_f", "(-inf,0] x R"},
                                 {"ker_rec_kerA", "{(0,0)}"}, {"R_f_kerA", "(-inf,0] x {0}"}, {"uniqueness", "no"}, {"x_star", "---"}});
    compare_column(O, "p1_ex2", {{"existence", "no"}, {"x_r", "---"}, {"X", "empty"},
                                 {"conj", "0 if u = (0,0); u1*(log(u1) - 1) if u in (0,+inf) x {0}; +inf otherwise"},
                                 {"subdiff", "{(e^x1,0)}"}, {"conj_subdiff", "{log(u1)} x R if u in (0,+inf) x {0}; empty otherwise"},
                                 {"ran_cap", "empty"}, {"zero_in_ri", "no"}, {"compactness", "no"},
                                 {"recession", "0 if d in (-inf,0] x R; +inf otherwise"}, {"ker_rec", "(-inf,0] x R"},
                                 {"R_f", "(-inf,0] x R"}, {"ker_rec_kerA", "(-inf,0] x {0}"}, {"R_f_kerA", "(-inf,0] x {0}"},
                                 {"uniqueness", "no"}, {"x_star", "---"}});
    compare_column(O, "p1_ex3", {{"existence", "yes"}, {"x_r", "(0,1)"}, {"X", "(-inf,0] x {1}"},
                                 {"conj", "0 if u in [0,1] x {0}; +inf otherwise"},
                                 {"subdiff", "{(1,0)} if x in (0,+inf) x R; {(0,0)} if x in (-inf,0) x R; [0,1] x {0} if x in {0} x R"},
                                 {"conj_subdiff", "(-inf,0] x R if u = (0,0); {0} x R if u in (0,1) x {0}; [0,+inf) x R if u = (1,0); empty otherwise"},
                                 {"ran_cap", "{(0,0)}"}, {"graph", "R if y = 0; empty otherwise"}, {"ran_shifted", "R"},
                                 {"maximality", "yes"}, {"ri_cap", "empty"}, {"zero_in_ri", "no"},
                                 {"compactness", "no"}, {"recession", "max{d1,0}"}, {"slev_rec", "(-inf,0] x R"},
                                 {"ker_rec", "(-inf,0] x R"}, {"R_f", "(-inf,0] x R"}, {"ker_rec_kerA", "(-inf,0] x {0}"},
                                 {"R_f_kerA", "(-inf,0] x {0}"}, {"conj_ATr", "(-inf,0] x R"}, {"conj_ATr_rec_kerA", "(-inf,0] x {0}"},
                                 {"proj_rec", "(-inf,0] x {0}"}, {"uniqueness", "no"}, {"x_star", "(0,1)"}, {"slev", "(-inf,0] x R"},
                                 {"tangent", "(-inf,0] x R"}, {"tangent_kerA", "(-inf,0] x {0}"}, {"shift_r", "(-inf,0] x {0}"},
                                 {"proj_conj", "(-inf,0] x {0}"}});
    compare_column(O, "p1_ex4", {{"existence", "yes"}, {"x_r", "(0,1)"}, {"X", "[-1,1] x {1}"},
                                 {"conj", "|u1| if u in [-1,1] x {0}; +inf otherwise"},
                                 {"subdiff", "{(-1,0)} if x in (-inf,-1) x R; [-1,0] x {0} if x in {-1} x R; {(0,0)} if x in (-1,1) x R; "
                                             "[0,1] x {0} if x in {1} x R; {(1,0)} if x in (1,+inf) x R"},
                                 {"conj_subdiff", "(-inf,-1] x R if u = (-1,0); {-1} x R if u in (-1,0) x {0}; [-1,1] x R if u = (0,0); "
                                                  "{1} x R if u in (0,1) x {0}; [1,+inf) x R if u = (1,0); empty otherwise"},
                                 {"ran_cap", "{(0,0)}"}, {"graph", "R if y = 0; empty otherwise"}, {"ran_shifted", "R"},
                                 {"maximality", "yes"}, {"ri_cap", "{(0,0)}"}, {"zero_in_ri", "yes"},
                                 {"compactness", "yes"}, {"recession", "|d1|"}, {"slev_rec", "{0} x R"}, {"ker_rec", "{0} x R"},
                                 {"R_f", "{0} x R"}, {"ker_rec_kerA", "{(0,0)}"}, {"R_f_kerA", "{(0,0)}"}, {"conj_ATr", "[-1,1] x R"},
                                 {"conj_ATr_rec_kerA", "{(0,0)}"}, {"proj_rec", "{(0,0)}"}, {"uniqueness", "no"}, {"x_star", "(0,1)"},
                                 {"slev", "[-1,1] x R"}, {"tangent", "R^2"}, {"tangent_kerA", "R x {0}"}, {"shift_r", "[-1,1] x {0}"},
                                 {"proj_conj", "[-1,1] x {0}"}});
    const std::string conj56 = "u2*log(-u2/u1) - u2 if u in [-1,0) x (0,+inf); 0 if u = (0,0); +inf otherwise";
    const std::string sub56 = "{(-1,e^x2)} if e^x2 > x1; {(0,0)} if e^x2 < x1; {(-t,t*e^x2): t in [0,1]} if e^x2 = x1";
    const std::string csub56 = "(-inf,u2] x {log(u2)} if u1 = -1, u2 > 0; {(-u2/u1,log(-u2/u1))} if u in (-1,0) x (0,+inf); "
                               "{(x1,x2): x1 >= e^x2} if u = (0,0); empty otherwise";
    const std::string rec56 = "0 if d in [0,+inf) x (-inf,0]; -d1 if d in (-inf,0) x (-inf,0]; +inf otherwise";
    compare_column(O, "p1_ex5", {{"existence", "no"}, {"x_r", "---"}, {"X", "empty"}, {"conj", conj56}, {"subdiff", sub56},
                                 {"conj_subdiff", csub56}, {"ran_cap", "{(0,0)}"}, {"graph", "(0,+inf) if y = 0; empty otherwise"},
                                 {"ran_shifted", "(0,+inf)"}, {"maximality", "no"}, {"ri_cap", "empty"}, {"zero_in_ri", "no"},
                                 {"compactness", "no"}, {"recession", rec56}, {"ker_rec", "[0,+inf) x (-inf,0]"},
                                 {"R_f", "[0,+inf) x (-inf,0]"}, {"ker_rec_kerA", "{0} x (-inf,0]"}, {"R_f_kerA", "{0} x (-inf,0]"},
                                 {"uniqueness", "no"}, {"x_star", "---"}});
    // compactness: X = [1,+inf) x {0} is unbounded and the table's own recession rows are not {0}
    compare_column(O, "p1_ex6", {{"existence", "yes"}, {"x_r", "(0,0)"}, {"X", "[1,+inf) x {0}"}, {"conj", conj56}, {"subdiff", sub56},
                                 {"conj_subdiff", csub56}, {"ran_cap", "{(0,0)}"}, {"graph", "R if y = 0; empty otherwise"},
                                 {"ran_shifted", "R"}, {"maximality", "yes"}, {"ri_cap", "empty"}, {"zero_in_ri", "no"},
                                 {"compactness", "no"}, {"recession", rec56}, {"slev_rec", "[0,+inf) x (-inf,0]"},
                                 {"ker_rec", "[0,+inf) x (-inf,0]"}, {"R_f", "[0,+inf) x (-inf,0]"}, {"ker_rec_kerA", "[0,+inf) x {0}"},
                                 {"R_f_kerA", "[0,+inf) x {0}"}, {"conj_ATr", "{(x1,x2): x1 >= e^x2}"},
                                 {"conj_ATr_rec", "[0,+inf) x (-inf,0]"}, {"conj_ATr_rec_kerA", "[0,+inf) x {0}"},
                                 {"proj_rec", "[0,+inf) x {0}"}, {"uniqueness", "no"}, {"x_star", "(1,0)"},
                                 {"slev", "{(x1,x2): x1 >= e^x2}"}, {"tangent", "{(x1,x2): x1 - x2 >= 0}"},
                                 {"tangent_kerA", "[0,+inf) x {0}"}, {"shift_r", "[1,+inf) x {0}"}, {"proj_conj", "(0,+inf) x {0}"}});
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    O.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
    return O;
}

// ---------------------------------------------------------------- 3

Outcome p2_tables() {
    Outcome O;
    auto t0 = Clock::now();
    const std::string exp_conj = "{log(u1)} x R if u in (0,+inf) x {0}; empty otherwise";
    compare_column(O, "p2_ex1", {{"existence", "no"}, {"x_r", "(0)"}, {"X", "empty"}, {"A_dom", "(0,+inf)"},
                                 {"conj_subdiff", "{-1/u} if u in (-inf,0); empty otherwise"},
                                 {"graph", "{-1/v} if v in (-inf,0); empty otherwise"}, {"dom_pc", "(0,+inf)"}, {"ran_cap", "(-inf,0)"},
                                 {"b_in_dom", "no"}, {"exact", "no"}, {"C", "empty"}, {"b_in_conj0", "no"}, {"min_f", "no"},
                                 {"uniqueness", "no"}, {"x_star", "---"}, {"C_u", "empty"}, {"C_shift", "empty"}});
    compare_column(O, "p2_ex2", {{"existence", "yes"}, {"x_r", "(0,0)"}, {"X", "{0} x R"}, {"A_dom", "R"}, {"conj_subdiff", exp_conj},
                                 {"graph", "{log(v)} if v in (0,+inf); empty otherwise"}, {"dom_pc", "R"}, {"ran_cap", "(0,+inf) x {0}"},
                                 {"b_in_dom", "yes"}, {"exact", "yes"}, {"multiplier", "(1), A^T v = (1,0)"}, {"C", "{0} x R"},
                                 {"b_in_conj0", "no"}, {"min_f", "no"}, {"influence", "StrictIncrease"}, {"uniqueness", "no"},
                                 {"x_star", "(0,0)"}, {"C_u", "{0} x R"}, {"C_shift", "{0} x R"}});
    compare_column(O, "p2_ex3", {{"existence", "no"}, {"x_r", "(0,0)"}, {"X", "empty"}, {"A_dom", "R"}, {"conj_subdiff", exp_conj},
                                 {"graph", "empty"}, {"dom_pc", "empty"}, {"ran_cap", "empty"}, {"b_in_dom", "no"}, {"exact", "no"},
                                 {"C", "empty"}, {"b_in_conj0", "no"}, {"min_f", "no"}, {"uniqueness", "no"}, {"x_star", "---"},
                                 {"C_u", "empty"}, {"C_shift", "empty"}});
    {
        ReportDocument d = run_report(testing::load_spec("p2_ex3"));
        const ReportRow* r = d.find("existence");
        O.expect(r && r->value.find("dom(A |> df) = empty") != std::string::npos, "p2_ex3 existence reason");
    }
    compare_column(O, "p2_ex4", {{"existence", "no"}, {"x_r", "(0,0)"}, {"X", "empty"}, {"A_dom", "R"},
                                 {"graph", "(0,+inf) if v = 0; empty otherwise"}, {"dom_pc", "(0,+inf)"}, {"b_in_dom", "no"},
                                 {"exact", "no"}, {"C", "empty"}, {"b_in_conj0", "no"}, {"min_f", "no"}, {"uniqueness", "no"},
                                 {"x_star", "---"}, {"C_u", "empty"}, {"C_shift", "empty"}});
    // the tabulated (C - x*) cap ker A value [1,+inf) x {0} is the shift by x_r* = (0,0)
    compare_column(O, "p2_ex5", {{"existence", "yes"}, {"x_r", "(0,0)"}, {"X", "[1,+inf) x {0}"}, {"A_dom", "R"},
                                 {"graph", "R if v = 0; empty otherwise"}, {"dom_pc", "R"}, {"b_in_dom", "yes"}, {"exact", "yes"},
                                 {"C", "{(x1,x2): x1 >= e^x2}"}, {"b_in_conj0", "yes"}, {"min_f", "yes"}, {"influence", "NoEffect"},
                                 {"uniqueness", "no"}, {"x_star", "(1,0)"}, {"C_u", "{(x1,x2): x1 >= e^x2}"},
                                 {"C_shift_r", "[1,+inf) x {0}"}});
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    O.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
    return O;
}

// ---------------------------------------------------------------- 4

ConvexSet homogeneous(const std::vector<LinRow>& rows, std::size_t n) {
    std::vector<LinRow> h;
    for (const auto& r : rows) h.push_back(LinRow{r.a, Scalar(0), r.rel});
    return ConvexSet::polyhedron(n, h);
}

Outcome recession_lemma() {
    Outcome O;
    auto t0 = Clock::now();
    testing::Rng R(2024);
    int cases = 0;
    while (cases < 200) {
        std::size_t n = R.integer(1, 4);
        std::size_t k = n == 1 ? 0 : R.integer(1, n - 1);
        std::vector<QVec> gens;
        for (std::size_t i = 0; i < k; ++i) gens.push_back(R.vec(n, -2, 2));
        Subspace D = Subspace::span(n, gens);
        if (D.dim() == n) continue;
        // a point of D that C will contain
        QVec p(n, 0);
        for (const auto& g : D.basis) p = add(p, scale(R.rational(-2, 2), g));
        std::vector<LinRow> rows;
        int m = R.integer(1, 6);
        for (int i = 0; i < m; ++i) {
            QVec a = R.vec(n, -3, 3);
            if (is_zero(a)) continue;
            bool eq = R.integer(0, 7) == 0;
            Q slack = eq ? Q(0) : R.rational(0, 3);
            rows.push_back(LinRow{a, Scalar(dot(a, p) + slack), eq ? Rel::Eq : Rel::Le});
        }
        ConvexSet C = ConvexSet::polyhedron(n, rows);
        ++cases;
        std::string tag = "case " + std::to_string(cases);
        ConvexSet CD = intersect_subspace(C, D);
        if (CD.is_empty()) {
            O.fail(tag + ": C cap D empty although it holds a planted point");
            continue;
        }
        ConvexSet Cinf = recession_cone(C);
        O.expect(set_equal(Cinf, homogeneous(rows, n)), tag + ": C_inf differs from {d : G d <= 0}");
        // (i)
        O.expect(set_equal(recession_cone(CD), intersect_subspace(Cinf, D)), tag + ": (C cap D)_inf != C_inf cap D");
        // (ii) at a planted point and at the minimum-norm point
        for (const SVec& x0 : {to_svec(p), min_norm_point(C)})
            O.expect(set_equal(recession_cone(C.translate(SVec(sub(SVec(n), x0)))), Cinf), tag + ": (C - x0)_inf != C_inf");
        // (iii)
        ConvexSet PD = project_subspace(C, D);
        O.expect(subset(CD, PD), tag + ": C cap D not inside P_D(C)");
    }
    // the strict inclusion: C = [1,2]^2, D = R x {0}
    ConvexSet box = ConvexSet::product({Interval1::make(ExtScalar(1), true, ExtScalar(2), true),
                                        Interval1::make(ExtScalar(1), true, ExtScalar(2), true)});
    Subspace axis = Subspace::span(2, {{1, 0}});
    O.expect(intersect_subspace(box, axis).is_empty(), "box cap axis not empty");
    O.expect(render(project_subspace(box, axis)) == "[1,2] x {0}", "box projection");
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    O.notes.insert(O.notes.begin(), std::to_string(cases) + " cases");
    O.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
    return O;
}

// ---------------------------------------------------------------- 5

void connect_instance(Outcome& O, const std::string& tag, const FuncExpr& f, const QMat& A, const QVec& b) {
    auto sol = solve_p1(f, A, b);
    if (!sol) {
        O.fail(tag + ": X empty");
        return;
    }
    ConnectCheck C = connect_check(*sol, f, A);
    const ConvexSet* sets[4] = {&C.rec_conj, &C.ker_rec, &C.cone_fn, &C.slev_rec};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            O.expect(set_equal(*sets[i], *sets[j]), tag + ": sets " + std::to_string(i) + " and " + std::to_string(j) + " differ: " +
                                                        render(*sets[i]) + " vs " + render(*sets[j]));
    O.expect(C.ok, tag + ": connect_check disagrees with the pairwise comparison");
}

Outcome connect_suite() {
    Outcome O;
    int count = 0;
    for (const char* s : {"p1_ex3", "p1_ex4", "p1_ex6", "lasso"}) {
        ProblemSpec P = testing::load_spec(s);
        connect_instance(O, s, P.f, P.A, P.b);
        ++count;
    }
    testing::Rng R(77);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = R.integer(1, 5), m = R.integer(1, 3);
        QMat A = R.mat(m, n, -3, 3);
        QVec b = R.vec(m, -4, 4);
        connect_instance(O, "norm1 #" + std::to_string(t), FuncExpr::norm_1(n), A, b);
        ++count;
    }
    O.notes.insert(O.notes.begin(), std::to_string(count) + " instances");
    return O;
}

// ---------------------------------------------------------------- 6

Outcome moreau_suite() {
    Outcome O;
    struct Inst {
        std::string tag;
        FuncExpr f;
        QMat A;
        QVec b;
    };
    std::vector<Inst> solvable;
    for (const char* s : {"p1_ex3", "p1_ex4", "p1_ex6", "lasso"}) {
        ProblemSpec P = testing::load_spec(s);
        solvable.push_back({s, P.f, P.A, P.b});
    }
    solvable.push_back({"shifted exp hinge, b = 2", fn("hinge_expdiff(x1,x2)", 2), QMat{{1, 0}}, {2}});
    solvable.push_back({"shifted exp hinge, b = 1/3", fn("hinge_expdiff(x1,x2)", 2), QMat{{1, 0}}, {Q(1, 3)}});
    for (const auto& I : solvable) {
        MoreauCheck M = moreau_check(I.f, I.A, I.b);
        O.expect(M.ok, I.tag + ": " + (M.failed_premise.empty() ? "identity fails" : M.failed_premise));
        auto sol = solve_p1(I.f, I.A, I.b);
        if (!sol) {
            O.fail(I.tag + ": no solution");
            continue;
        }
        // b - J(b) = A x*
        SVec lhs(I.b.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = Scalar(I.b[i]) - M.resolvent[i];
        O.expect(lhs == sol->Ax_star, I.tag + ": b - J(b) = " + vec_str(lhs) + ", Ax* = " + vec_str(sol->Ax_star));
    }
    testing::Rng R(99);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        std::size_t n = R.integer(1, 5), m = R.integer(1, 4);
        QMat A = R.mat(m, n, -3, 3);
        QVec b = R.vec(m, -4, 4);
        FuncExpr f = FuncExpr::norm_1(n);
        auto sol = solve_p1(f, A, b);
        if (!sol) {
            O.fail("random lasso without a solution");
            continue;
        }
        MoreauCheck M = moreau_check(f, A, b);
        O.expect(M.ok, "random lasso #" + std::to_string(t) + ": Moreau identity fails");
        auto P = prox_grad(f, A, b, 100000, 0);
        std::vector<double> ax(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) ax[i] += A(i, j).get_d() * P.candidates[0][j];
        double gap = testing::max_abs_diff(ax, testing::to_doubles(sol->Ax_star));
        worst = std::max(worst, gap);
        O.expect(gap <= 1e-6, "random lasso #" + std::to_string(t) + ": |Ax - Ax*| = " + std::to_string(gap));
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "%zu catalog instances, 50 random lasso, worst |Ax - Ax*| = %.1e", solvable.size(), worst);
    O.notes.insert(O.notes.begin(), buf);
    return O;
}

// ---------------------------------------------------------------- 7

Outcome oracle_equivalence() {
    Outcome O;
    testing::Rng R(123);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        std::size_t n = R.integer(1, 5), m = R.integer(1, 4);
        QMat A = R.mat(m, n, -3, 3);
        QVec b = R.vec(m, -4, 4);
        auto L = lasso_enumerate(A, b);
        auto P = prox_grad(FuncExpr::norm_1(n), A, b, 100000, 0);
        double gap = P.value - L.objective.get_d();
        worst = std::max(worst, std::fabs(gap));
        O.expect(std::fabs(gap) <= 1e-8, "lasso #" + std::to_string(t) + ": objective gap " + std::to_string(gap));
    }

    auto grid = [](const ProblemSpec& P) {
        GridSpec g;
        g.lo.assign(P.f.n, -8.0);
        g.hi.assign(P.f.n, 8.0);
        return grid_minimize(p1_objective(P.f, P.A, P.b), g);
    };
    // bounded X: candidates within two final pitches of X
    {
        ProblemSpec P = testing::load_spec("p1_ex4");  // X = [-1,1] x {1}
        auto G = grid(P);
        O.expect(!G.boundary_hit && !G.divergent, "p1_ex4: flags raised on a bounded instance");
        for (const auto& c : G.candidates) {
            double d1 = std::max(std::fabs(c[0]) - 1.0, 0.0), d2 = std::fabs(c[1] - 1.0);
            O.expect(d1 <= 2 * G.pitch[0] && d2 <= 2 * G.pitch[1], "p1_ex4: candidate off X");
        }
    }
    {
        ProblemSpec P = testing::load_spec("lasso");  // X = {(0,1/4,0)}
        auto G = grid(P);
        O.expect(!G.boundary_hit && !G.divergent, "lasso: flags raised on a bounded instance");
        const double x[3] = {0, 0.25, 0};
        for (const auto& c : G.candidates)
            for (int k = 0; k < 3; ++k) O.expect(std::fabs(c[k] - x[k]) <= 2 * G.pitch[k], "lasso: candidate off X");
    }
    // empty X: divergence; unbounded X: boundary contact without divergence
    for (const char* s : {"p1_ex2", "p1_ex5"}) {
        auto G = grid(testing::load_spec(s));
        O.expect(G.divergent, std::string(s) + ": divergence not flagged");
    }
    for (const char* s : {"p1_ex3", "p1_ex6"}) {
        auto G = grid(testing::load_spec(s));
        O.expect(G.boundary_hit, std::string(s) + ": boundary contact not flagged");
        O.expect(!G.divergent, std::string(s) + ": divergence flagged on a solvable instance");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst lasso gap %.1e", worst);
    O.notes.insert(O.notes.begin(), buf);
    return O;
}

// ---------------------------------------------------------------- 8

Outcome separation() {
    Outcome O;
    QMat A{{0, 1}};
    QVec b{1};
    FuncExpr f2 = fn("exp(x1)", 2), f3 = fn("hinge(x1)", 2);
    Subspace K = kernel_basis(A);
    ConvexSet k2 = intersect_subspace(recession_kernel(f2), K), k3 = intersect_subspace(recession_kernel(f3), K);
    O.expect(set_equal(k2, k3), "ker f_inf cap ker A differ: " + render(k2) + " vs " + render(k3));
    O.expect(!is_origin(k2), "ker f_inf cap ker A is {0}");
    O.expect(!existence_p1(f2, A, b).yes, "exp instance reported solvable");
    auto E3 = existence_p1(f3, A, b);
    O.expect(E3.yes, "hinge instance reported unsolvable");
    auto s3 = solve_p1(f3, A, b);
    O.expect(s3 && !compactness_p1(*s3, f3, A).yes, "hinge instance reported compact");
    return O;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"lasso example, exact solution and both projection tests failing", lasso_example},
        {"P1 table regression", p1_tables},
        {"P2 table regression", p2_tables},
        {"recession lemma on random polyhedra", recession_lemma},
        {"recession sets agree on ker A", connect_suite},
        {"Moreau identity and proximal-gradient fit", moreau_suite},
        {"oracle equivalence and grid flags", oracle_equivalence},
        {"separated verdicts for exp vs hinge", separation},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome O;
        try {
            O = criteria[i].second();
        } catch (const std::exception& e) {
            O.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("criterion %zu: %s  %s (%.2f s)", i + 1, O.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), secs);
        for (const auto& n : O.notes) std::printf("; %s", n.c_str());
        std::printf("\n");
        if (!O.pass) ++failures;
    }
    return failures;
}
