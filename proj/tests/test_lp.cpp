#include <doctest.h>

#include "solnscope/lp.hpp"
#include "solnscope/ratlin.hpp"
#include "support.hpp"

using namespace solnscope;

namespace {

LinRow row(QVec a, Q b, Rel r = Rel::Le) { return LinRow{std::move(a), Scalar(b), r}; }

bool satisfies(const std::vector<LinRow>& rows, const QVec& x) {
    for (const auto& r : rows) {
        Scalar lhs = dot(r.a, to_svec(x));
        switch (r.rel) {
            case Rel::Le: if (!(lhs <= r.b)) return false; break;
            case Rel::Lt: if (!(lhs < r.b)) return false; break;
            case Rel::Eq: if (!(lhs == r.b)) return false; break;
        }
    }
    return true;
}

std::vector<LinRow> random_rows(testing::Rng& R, std::size_t n, std::size_t k) {
    std::vector<LinRow> rows;
    for (std::size_t i = 0; i < k; ++i) rows.push_back(row(R.vec(n, -3, 3), R.rational(-2, 6)));
    return rows;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("bounded, unbounded and infeasible programs") {
    // max x + y over the simplex x, y >= 0, x + y <= 2
    std::vector<LinRow> rows{row({-1, 0}, 0), row({0, -1}, 0), row({1, 1}, 2)};
    auto r = lp_maximize(rows, {1, 1}, 2);
    CHECK(r.status == LPResult::Optimal);
    CHECK(r.value == Scalar(2));
    r = lp_maximize(rows, {-1, 0}, 2);
    CHECK(r.value == Scalar(0));

    std::vector<LinRow> half{row({-1, 0}, 0)};
    CHECK(lp_maximize(half, {1, 0}, 2).status == LPResult::Unbounded);

    std::vector<LinRow> bad{row({1}, 0), row({-1}, -1)};
    CHECK(lp_maximize(bad, {1}, 1).status == LPResult::Infeasible);
    CHECK_FALSE(lp_feasible(bad, 1));
}

TEST_CASE("strict rows") {
    // x < 0 and x >= 0 is empty; x < 1 and x >= 0 is not
    std::vector<LinRow> a{row({1}, 0, Rel::Lt), row({-1}, 0)};
    CHECK_FALSE(lp_feasible(a, 1));
    std::vector<LinRow> b{row({1}, 1, Rel::Lt), row({-1}, 0)};
    SVec x;
    REQUIRE(lp_feasible_point(b, 1, x));
    CHECK(x[0] >= Scalar(0));
    CHECK(x[0] < Scalar(1));
}

TEST_CASE("symbolic right-hand sides") {
    Scalar e = Scalar::e_pow(1);
    std::vector<LinRow> rows{LinRow{{1}, e, Rel::Le}, LinRow{{-1}, Scalar(0), Rel::Le}};
    auto r = lp_maximize(rows, {2}, 1);
    REQUIRE(r.status == LPResult::Optimal);
    CHECK(r.value == e * Q(2));
}

TEST_CASE("optimal value matches a vertex enumeration") {
    testing::Rng R(21);
    for (int t = 0; t < 80; ++t) {
        std::size_t n = 2;
        auto rows = random_rows(R, n, 5);
        for (std::size_t i = 0; i < n; ++i) {  // box keeps it bounded
            rows.push_back(row(unit(n, i), 5));
            rows.push_back(row(scale(-1, unit(n, i)), 5));
        }
        QVec c = R.vec(n, -3, 3);
        auto r = lp_maximize(rows, c, n);
        // every vertex is the solution of two tight rows
        bool any = false;
        Q best = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                QMat M = QMat::from_rows({rows[i].a, rows[j].a}, n);
                if (rank(M) < 2) continue;
                QVec x;
                solve_min_norm(M, {rows[i].b.rat(), rows[j].b.rat()}, x);
                if (!satisfies(rows, x)) continue;
                Q v = dot(c, x);
                if (!any || v > best) best = v;
                any = true;
            }
        if (!any) {
            CHECK(r.status == LPResult::Infeasible);
        } else {
            REQUIRE(r.status == LPResult::Optimal);
            CHECK(r.value == Scalar(best));
            CHECK(satisfies(rows, to_qvec(r.x)));
        }
    }
}

TEST_CASE("Fourier-Motzkin projects exactly") {
    testing::Rng R(23);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = 3;
        auto rows = random_rows(R, n, 4);
        auto proj = fm_eliminate(rows, 2, n);
        for (const auto& r : proj) CHECK(r.a[2] == 0);
        for (int s = 0; s < 15; ++s) {
            QVec p{R.rational(-3, 3, 2), R.rational(-3, 3, 2), 0};
            // p is in the shadow iff fixing x1, x2 leaves a feasible x3
            std::vector<LinRow> fixed = rows;
            fixed.push_back(row(unit(3, 0), p[0], Rel::Eq));
            fixed.push_back(row(unit(3, 1), p[1], Rel::Eq));
            CHECK(satisfies(proj, p) == lp_feasible(fixed, n));
        }
    }
}

TEST_CASE("redundancy removal keeps the set") {
    testing::Rng R(25);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = 2;
        auto rows = random_rows(R, n, 7);
        auto kept = remove_redundant(rows, n);
        CHECK(kept.size() <= rows.size());
        for (int s = 0; s < 30; ++s) {
            QVec p = R.vec(n, -4, 4, 2);
            CHECK(satisfies(kept, p) == satisfies(rows, p));
        }
    }
}

TEST_CASE("row normalisation") {
    std::vector<LinRow> rows{row({Q(1, 2), Q(1, 3)}, 1), row({3, 2}, 6), row({0, 0}, 1)};
    REQUIRE(normalize_rows(rows, 2));
    CHECK(rows.size() == 1);
    CHECK(rows[0].a == QVec{3, 2});
    std::vector<LinRow> bad{row({0, 0}, -1)};
    CHECK_FALSE(normalize_rows(bad, 2));
}

}
