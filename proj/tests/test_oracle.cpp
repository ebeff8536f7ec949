#include <doctest.h>

#include <cmath>

#include "solnscope/dsl.hpp"
#include "solnscope/errors.hpp"
#include "solnscope/oracle.hpp"
#include "support.hpp"

using namespace solnscope;

TEST_SUITE("oracle") {

TEST_CASE("rationalize") {
    CHECK(rationalize(0.25) == Q(1, 4));
    CHECK(rationalize(-1.0 / 3.0) == Q(-1, 3));
    CHECK(rationalize(3.14159265358979, 1000) == Q(355, 113));
    CHECK(rationalize(2.0) == Q(2));
    CHECK_THROWS_AS(rationalize(INFINITY), DomainViolation);
}

TEST_CASE("lasso enumeration on a tiny instance") {
    // min |x| + (x - 3)^2 / 2 at x = 2
    auto L = lasso_enumerate(QMat{{1}}, {3});
    REQUIRE(L.solutions.size() == 1);
    CHECK(L.solutions[0] == QVec{2});
    CHECK(L.objective == Q(5, 2));
    // duplicated column: every split of the weight is optimal, fit is unique
    auto D = lasso_enumerate(QMat{{1, 1}}, {3});
    CHECK(D.Ax == QVec{2});
    for (const auto& x : D.solutions) CHECK(x[0] + x[1] == 2);
}

TEST_CASE("grid search on a strongly convex objective") {
    Objective q = [](const std::vector<double>& x) { return (x[0] - 0.3) * (x[0] - 0.3) + (x[1] + 1.7) * (x[1] + 1.7); };
    GridSpec g;
    g.lo = {-4, -4};
    g.hi = {4, 4};
    auto R = grid_minimize(q, g);
    CHECK_FALSE(R.boundary_hit);
    CHECK_FALSE(R.divergent);
    for (const auto& c : R.candidates) {
        CHECK(std::fabs(c[0] - 0.3) < 0.02);
        CHECK(std::fabs(c[1] + 1.7) < 0.02);
    }
}

TEST_CASE("grid flags on unbounded and flat objectives") {
    GridSpec g;
    g.lo = {-5};
    g.hi = {5};
    auto down = grid_minimize([](const std::vector<double>& x) { return std::exp(x[0]); }, g);
    CHECK(down.boundary_hit);
    CHECK(down.divergent);
    auto flat = grid_minimize([](const std::vector<double>& x) { return std::max(x[0], 0.0); }, g);
    CHECK(flat.boundary_hit);
    CHECK_FALSE(flat.divergent);
    CHECK_THROWS_AS(grid_minimize([](const std::vector<double>&) { return INFINITY; }, g), AllInfinite);
    g.resolution = 2;
    CHECK_THROWS_AS(grid_minimize([](const std::vector<double>& x) { return x[0]; }, g), PreconditionFail);
}

TEST_CASE("proximal gradient matches enumeration on random lasso") {
    testing::Rng R(71);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = R.integer(2, 4), m = R.integer(1, 3);
        QMat A = R.mat(m, n, -2, 2);
        QVec b = R.vec(m, -3, 3);
        auto L = lasso_enumerate(A, b);
        auto P = prox_grad(FuncExpr::norm_1(n), A, b, 20000, 0);
        CHECK(P.value - L.objective.get_d() <= 1e-8);
        CHECK(P.value - L.objective.get_d() >= -1e-12);
    }
}

TEST_CASE("proximal gradient refuses atoms without a proximal map") {
    CHECK_THROWS_AS(prox_grad(parse_function("exp(x1)", 2), QMat{{1, 0}}, {0}, 10, 0), NoProx);
    CHECK_THROWS_AS(prox_grad(parse_function("hinge(x1 + x2) + abs(x2)", 2), QMat{{1, 0}}, {0}, 10, 0), NoProx);
}

TEST_CASE("objective wrapper") {
    auto obj = p1_objective(parse_function("hinge(x1)", 2), QMat{{0, 1}}, {1});
    CHECK(obj({-3, 1}) == 0);
    CHECK(obj({2, 3}) == doctest::Approx(4));
    auto nl = p1_objective(parse_function("neglog(x1)", 1), QMat{{1}}, {0});
    CHECK(std::isinf(nl({-1})));
}

}
