#include <doctest.h>

#include <cmath>

#include "solnscope/dsl.hpp"
#include "solnscope/errors.hpp"
#include "solnscope/funcat.hpp"
#include "support.hpp"

using namespace solnscope;

namespace {

double num_value(const FuncExpr& f, const std::vector<double>& x) {
    double v = 0;
    for (std::size_t k = 0; k < f.n; ++k) v += f.lin[k].get_d() * x[k];
    for (const auto& a : f.terms) {
        double aff = a.c.get_d();
        for (std::size_t k = 0; k < a.w.size(); ++k) aff += a.w[k].get_d() * x[k];
        double t = 0;
        switch (a.kind) {
            case Atom::Exp: t = std::exp(aff); break;
            case Atom::NegLog: t = aff > 0 ? -std::log(aff) : INFINITY; break;
            case Atom::Hinge: t = std::max(aff, 0.0); break;
            case Atom::HingeAbs: t = std::max(std::fabs(x[a.i]) - a.c.get_d(), 0.0); break;
            case Atom::HingeExpDiff: t = std::max(std::exp(x[a.j]) - x[a.i], 0.0); break;
            case Atom::QuadShift: t = 0.5 * (x[a.i] - a.c.get_d()) * (x[a.i] - a.c.get_d()); break;
            case Atom::IndHyperbola: t = (x[a.i] >= 0 && x[a.j] >= 0 && x[a.i] * x[a.j] >= 1) ? 0 : INFINITY; break;
        }
        v += a.lambda.get_d() * t;
    }
    return v;
}

FuncExpr F(const std::string& s, std::size_t n) { return parse_function(s, n); }

const std::vector<std::pair<std::string, std::size_t>> kCatalog{
    {"lin(1,0)", 2},       {"exp(x1)", 2},         {"hinge(x1)", 2},        {"hinge(abs(x1) - 1)", 2},
    {"hinge_expdiff(x1,x2)", 2}, {"norm1()", 3},   {"2*abs(x2) + hinge(x1 - x3 + 1)", 3},
    {"quadshift(x1,3) + abs(x2)", 2}, {"exp(x1 - 2*x2) + 1/2*hinge(x3)", 3},
};

}  // namespace

TEST_SUITE("funcat") {

TEST_CASE("values agree with a floating-point evaluation") {
    testing::Rng R(41);
    for (const auto& [s, n] : kCatalog) {
        FuncExpr f = F(s, n);
        for (int t = 0; t < 20; ++t) {
            QVec x = R.vec(n, -3, 3, 4);
            ExtendedValue v = eval(f, x);
            std::vector<double> xd;
            for (const auto& q : x) xd.push_back(q.get_d());
            double d = num_value(f, xd);
            REQUIRE(v.finite());
            CHECK(v.to_double() == doctest::Approx(d).epsilon(1e-12));
        }
    }
    FuncExpr nl = F("neglog(x1)", 1);
    CHECK(eval(nl, QVec{1}) == ExtScalar(0));
    CHECK(eval(nl, QVec{0}) == ExtScalar::pos_inf());
    CHECK(eval(nl, QVec{Q(1, 2)}).v == Scalar::log(Scalar(2)));
}

TEST_CASE("subgradient inequality at sampled points") {
    testing::Rng R(43);
    for (const auto& [s, n] : kCatalog) {
        FuncExpr f = F(s, n);
        for (int t = 0; t < 10; ++t) {
            QVec x = R.vec(n, -2, 2, 2);
            ConvexSet S = subdiff(f, x);
            REQUIRE_FALSE(S.is_empty());
            if (!S.is_polyhedral()) continue;
            SVec u = min_norm_point(S);
            std::vector<double> xd, ud = testing::to_doubles(u);
            for (const auto& q : x) xd.push_back(q.get_d());
            double fx = num_value(f, xd);
            for (int k = 0; k < 20; ++k) {
                QVec y = R.vec(n, -4, 4, 3);
                std::vector<double> yd;
                double lin = fx;
                for (std::size_t i = 0; i < n; ++i) {
                    yd.push_back(y[i].get_d());
                    lin += ud[i] * (yd[i] - xd[i]);
                }
                CHECK(num_value(f, yd) >= lin - 1e-9);
            }
        }
    }
}

TEST_CASE("subdifferential and conjugate subdifferential are inverse") {
    testing::Rng R(45);
    for (const auto& [s, n] : kCatalog) {
        FuncExpr f = F(s, n);
        for (int t = 0; t < 10; ++t) {
            QVec x = R.vec(n, -2, 2, 2);
            ConvexSet S = subdiff(f, x);
            if (!S.is_polyhedral()) continue;
            SVec u = min_norm_point(S);
            CHECK(conj_subdiff(f, u).contains(to_svec(x)));
        }
    }
    // the exponential pair: u = e^x1
    FuncExpr e = F("exp(x1)", 2);
    SVec u{Scalar::e_pow(Q(1, 3)), Scalar(0)};
    CHECK(subdiff(e, QVec{Q(1, 3), 5}).contains(u));
    CHECK(conj_subdiff(e, u).contains(QVec{Q(1, 3), 5}));
}

TEST_CASE("recession function matches the asymptotic slope") {
    testing::Rng R(47);
    for (const auto& [s, n] : kCatalog) {
        FuncExpr f = F(s, n);
        for (int t = 0; t < 10; ++t) {
            QVec d = R.vec(n, -2, 2);
            ExtendedValue r = recession(f, to_svec(d));
            std::vector<double> x0(n, 0.5), x1(n);
            double big = 1000;
            for (std::size_t i = 0; i < n; ++i) x1[i] = x0[i] + big * d[i].get_d();
            double slope = (num_value(f, x1) - num_value(f, x0)) / big;
            if (!r.finite()) {
                CHECK(r.inf == 1);
                CHECK(slope > 100);
            } else {
                CHECK(slope == doctest::Approx(r.to_double()).epsilon(0.05).scale(1));
            }
        }
    }
}

TEST_CASE("catalog descriptions") {
    CHECK(describe_conj(F("lin(1,0)", 2)) == "iota_{(1,0)}");
    CHECK(describe_conj(F("hinge(x1)", 2)) == "0 if u in [0,1] x {0}; +inf otherwise");
    CHECK(describe_conj(F("hinge(abs(x1) - 1)", 2)) == "|u1| if u in [-1,1] x {0}; +inf otherwise");
    CHECK(describe_subdiff(F("exp(x1)", 2)) == "{(e^x1,0)}");
    CHECK(describe_conj_subdiff(F("exp(x1)", 2)) == "{log(u1)} x R if u in (0,+inf) x {0}; empty otherwise");
    CHECK(describe_recession(F("hinge(x1)", 2)) == "max{d1,0}");
    CHECK(describe_recession(F("hinge(abs(x1) - 1)", 2)) == "|d1|");
    CHECK(describe_recession(F("norm1()", 3)) == "||d||_1");
    CHECK(describe_recession(F("exp(x1)", 2)) == "0 if d in (-inf,0] x R; +inf otherwise");
    CHECK(describe_recession(F("hinge_expdiff(x1,x2)", 2)) ==
          "0 if d in [0,+inf) x (-inf,0]; -d1 if d in (-inf,0) x (-inf,0]; +inf otherwise");
}

TEST_CASE("recession kernel and cone") {
    CHECK(render(recession_kernel(F("lin(1,0)", 2))) == "{0} x R");
    CHECK(render(recession_cone_fn(F("lin(1,0)", 2))) == "(-inf,0] x R");
    CHECK(render(recession_kernel(F("hinge_expdiff(x1,x2)", 2))) == "[0,+inf) x (-inf,0]");
    CHECK(render(recession_kernel(F("norm1()", 3))) == "{(0,0,0)}");
    CHECK(recession_nonnegative(F("hinge(x1)", 2)));
    CHECK_FALSE(recession_nonnegative(F("lin(1,0)", 2)));
}

TEST_CASE("range of the subdifferential") {
    CHECK(render(range_subdiff(F("hinge(x1)", 2))) == "[0,1] x {0}");
    CHECK(render(ri_range_subdiff(F("hinge(abs(x1) - 1)", 2))) == "(-1,1) x {0}");
    CHECK(render(range_subdiff(F("exp(x1)", 2))) == "(0,+inf) x {0}");
}

TEST_CASE("sublevel sets") {
    CHECK(render(sublevel(F("hinge(x1)", 2), Scalar(0))) == "(-inf,0] x R");
    CHECK(render(sublevel(F("hinge_expdiff(x1,x2)", 2), Scalar(0))) == "{(x1,x2): x1 >= e^x2}");
    CHECK(render(sublevel(F("norm1()", 2), Scalar(1))) == "{(x1,x2): x1 + x2 <= 1, x1 - x2 <= 1, x1 - x2 >= -1, x1 + x2 >= -1}");
}

TEST_CASE("structure flags") {
    CHECK(F("norm1()", 3).norm1);
    CHECK(F("norm1()", 3).polyhedral());
    CHECK_FALSE(F("exp(x1)", 2).polyhedral());
    CHECK(F("abs(x1) + hinge(x2)", 2).separable());
    CHECK_FALSE(F("hinge(x1 + x2) + abs(x2)", 2).separable());
}

}
