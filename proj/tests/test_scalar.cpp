#include <doctest.h>

#include <cmath>

#include "solnscope/errors.hpp"
#include "solnscope/scalar.hpp"
#include "support.hpp"

using namespace solnscope;

TEST_SUITE("scalar") {

TEST_CASE("rational formatting") {
    CHECK(qstr(Q(3, 6)) == "1/2");
    CHECK(qstr(Q(-4)) == "-4");
    CHECK(Scalar(Q(-7, 3)).str() == "-7/3");
}

TEST_CASE("log factors over primes") {
    Scalar l4 = Scalar::log(Scalar(4));
    Scalar l2 = Scalar::log(Scalar(2));
    CHECK(l4 == l2 * Q(2));
    CHECK(Scalar::log(Scalar(Q(3, 2))) == Scalar::log(Scalar(3)) - l2);
    CHECK(Scalar::log(Scalar(1)).is_zero());
    CHECK(l2.str() == "log(2)");
    CHECK_THROWS_AS(Scalar::log(Scalar(0)), DomainViolation);
    CHECK_THROWS_AS(Scalar::log(Scalar(-3)), DomainViolation);
}

TEST_CASE("exp and log are inverse on the span") {
    Scalar e = Scalar::e_pow(1);
    CHECK(e.str() == "e");
    CHECK(Scalar::e_pow(Q(1, 2)).str() == "e^(1/2)");
    CHECK(Scalar::log(e) == Scalar(1));
    CHECK(Scalar::exp(Scalar::log(Scalar(6))) == Scalar(6));
    CHECK(Scalar::log(Scalar::e_pow(Q(-2)) * Q(3)) == Scalar::log(Scalar(3)) - Scalar(2));
    CHECK(e * Scalar::e_pow(-1) == Scalar(1));
}

TEST_CASE("certified signs against double evaluation") {
    Scalar e = Scalar::e_pow(1);
    CHECK((e - Scalar(Q(2718, 1000))).sign() == 1);
    CHECK((e - Scalar(Q(2719, 1000))).sign() == -1);
    CHECK((Scalar::log(Scalar(2)) - Scalar(Q(7, 10))).sign() == -1);
    CHECK((Scalar::log(Scalar(3)) - Scalar(1)).sign() == 1);
    CHECK(Scalar(0).sign() == 0);

    testing::Rng R(11);
    for (int k = 0; k < 200; ++k) {
        Q a = R.rational(-5, 5, 7), b = R.rational(-5, 5, 7);
        long p = R.integer(2, 30);
        Scalar s = Scalar(a) + Scalar::log(Scalar(p)) * b;
        double d = a.get_d() + b.get_d() * std::log(double(p));
        if (std::fabs(d) > 1e-9) {
            CHECK(s.sign() == (d > 0 ? 1 : -1));
            double lo, hi;
            s.bounds(lo, hi);
            // d carries its own rounding error of a few ulps
            double slack = 1e-13 * (1 + std::fabs(d));
            CHECK(lo <= d + slack);
            CHECK(d - slack <= hi);
            CHECK(hi - lo < 1e-9);
        }
    }
}

TEST_CASE("extended scalars") {
    ExtScalar p = ExtScalar::pos_inf(), n = ExtScalar::neg_inf();
    CHECK(n < ExtScalar(0));
    CHECK(ExtScalar(5) < p);
    CHECK(p.str() == "+inf");
    CHECK((-p) == n);
    CHECK(ext_add(p, ExtScalar(3)) == p);
    CHECK_THROWS_AS(ext_add(p, n), Undecidable);
    CHECK(ext_scale(Q(-2), p) == n);
    CHECK(ext_scale(Q(0), p) == ExtScalar(0));
}

TEST_CASE("vectors") {
    QVec q{Q(1, 2), Q(-3)};
    SVec s = to_svec(q);
    CHECK(all_rational(s));
    CHECK(to_qvec(s) == q);
    s[0] = Scalar::e_pow(1);
    CHECK_FALSE(all_rational(s));
    CHECK_THROWS(to_qvec(s));
}

}
