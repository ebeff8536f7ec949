#include <doctest.h>

#include "solnscope/diag2.hpp"
#include "solnscope/dsl.hpp"
#include "solnscope/errors.hpp"
#include "support.hpp"

using namespace solnscope;

namespace {

P2Report run(const std::string& fn, std::size_t n, const QMat& A, const QVec& b) { return analyze_p2(parse_function(fn, n), A, b); }

}  // namespace

TEST_SUITE("diag2") {

TEST_CASE("range component") {
    CHECK(range_component(QMat{{1, 1}, {2, 2}}, {1, 3}) == std::nullopt);
    auto x = range_component(QMat{{1, 1}}, {2});
    REQUIRE(x);
    CHECK(*x == QVec{1, 1});
}

TEST_CASE("verdicts and reasons on the worked examples") {
    auto r1 = run("neglog(x1)", 1, {{1}}, {0});
    CHECK_FALSE(r1.yes);
    CHECK(r1.reason == P2Reason::NoCertificate);
    CHECK(r1.influence == Influence::NotApplicable);

    auto r2 = run("exp(x1)", 2, {{1, 0}}, {0});
    REQUIRE(r2.yes);
    REQUIRE(r2.cert);
    CHECK(r2.cert->v == SVec{Scalar(1)});
    CHECK(render(r2.solution->X) == "{0} x R");
    CHECK(r2.influence == Influence::StrictIncrease);

    auto r3 = run("exp(x1)", 2, {{0, 1}}, {0});
    CHECK_FALSE(r3.yes);
    CHECK(r3.reason == P2Reason::ViabilityFail);

    auto r4 = run("hinge_expdiff(x1,x2)", 2, {{1, 0}}, {0});
    CHECK_FALSE(r4.yes);
    CHECK(r4.reason == P2Reason::NoCertificate);

    auto r5 = run("hinge_expdiff(x1,x2)", 2, {{0, 1}}, {0});
    REQUIRE(r5.yes);
    CHECK(render(r5.solution->X) == "[1,+inf) x {0}");
    CHECK(vec_str(*r5.x_star) == "(1,0)");
    CHECK(r5.b_in_A_conj0);
    CHECK(r5.influence == Influence::NoEffect);

    auto bad = run("abs(x1)", 2, {{1, 1}, {2, 2}}, {1, 3});
    CHECK_FALSE(bad.yes);
    CHECK(bad.reason == P2Reason::BNotInRange);
}

TEST_CASE("constraint influence agrees with the minimum of f") {
    // f = (x1 - 1)^2 / 2 attains its minimum 0 at x1 = 1
    CHECK(constraint_influence(parse_function("quadshift(x1,1)", 1), QMat{{1}}, {1}) == Influence::NoEffect);
    CHECK(constraint_influence(parse_function("quadshift(x1,1)", 1), QMat{{1}}, {2}) == Influence::StrictIncrease);
    CHECK(constraint_influence(parse_function("exp(x1)", 2), QMat{{0, 1}}, {0}) == Influence::NotApplicable);
}

TEST_CASE("exactness on one-row constraints") {
    auto E1 = exactness_check(parse_function("neglog(x1)", 1), QMat{{1}}, {0});
    CHECK_FALSE(E1.exact);
    CHECK(render_intervals(E1.dom) == "(0,+inf)");
    auto E2 = exactness_check(parse_function("exp(x1)", 2), QMat{{1, 0}}, {0});
    CHECK(E2.exact);
    CHECK(intervals_whole(E2.dom));
    auto E5 = exactness_check(parse_function("hinge_expdiff(x1,x2)", 2), QMat{{0, 1}}, {0});
    CHECK(E5.exact);
    REQUIRE(E5.prox);
    CHECK(*E5.prox == Scalar(0));
    CHECK(E5.exact_at_prox);
}

TEST_CASE("basis pursuit with two constraints") {
    auto r = run("norm1()", 3, {{1, 0, 2}, {0, 2, -2}}, {1, 1});
    REQUIRE(r.yes);
    REQUIRE(r.cert);
    auto U = uniqueness_p2(*r.solution, *r.x_star, QMat{{1, 0, 2}, {0, 2, -2}});
    CHECK_FALSE(U.yes);
    CHECK(compactness_p2(*r.solution, QMat{{1, 0, 2}, {0, 2, -2}}).yes);
}

TEST_CASE("random basis pursuit: certificates are genuine") {
    testing::Rng R(61);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = R.integer(2, 4), m = R.integer(1, 2);
        QMat A = R.mat(m, n, -2, 2);
        QVec x0 = R.vec(n, -2, 2);
        QVec b = A * x0;
        FuncExpr f = FuncExpr::norm_1(n);
        auto rep = analyze_p2(f, A, b);
        if (is_zero(b)) {
            REQUIRE(rep.yes);
            CHECK(is_zero(*rep.x_star));
            continue;
        }
        REQUIRE(rep.yes);
        REQUIRE(rep.cert);
        const SVec& xs = *rep.x_star;
        CHECK(A.apply(xs) == to_svec(b));
        CHECK(rep.solution->X.contains(xs));
        // A^T v is a subgradient of ||.||_1 at x*
        CHECK(subdiff(f, xs).contains(A.transpose().apply(rep.cert->v)));
        // x* is no worse than the planted feasible point
        Q l1x0 = 0;
        for (const auto& c : x0) l1x0 += abs(c);
        CHECK(eval(f, xs) <= ExtScalar(l1x0));
        auto U = uniqueness_p2(*rep.solution, xs, A);
        CHECK(U.yes == is_singleton(rep.solution->X).has_value());
    }
}

}
