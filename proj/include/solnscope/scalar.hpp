#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace solnscope {

using Q = mpq_class;
using Z = mpz_class;
using QVec = std::vector<Q>;

std::string qstr(const Q& q);

// Exact real number of the form  r + sum_k c_k * B_k  with rational r, c_k and
// basis symbols B_k in {log p (p prime), e^q (q rational, q != 0)}.
// Arithmetic stays inside that span; anything else throws UnsupportedSet.
// Comparisons go through a 128-bit interval enclosure and throw Undecidable
// when the enclosure straddles zero.
class Scalar {
public:
    struct Key {
        int kind;  // 1 = log(prime), 2 = exp(q)
        Z prime;
        Q q;
        bool operator<(const Key& o) const;
        bool operator==(const Key& o) const;
    };

    Scalar() = default;
    Scalar(const Q& r) : r_(r) {}  // NOLINT implicit
    Scalar(long v) : r_(v) {}      // NOLINT implicit
    Scalar(int v) : r_(v) {}       // NOLINT implicit

    static Scalar e_pow(const Q& q);
    static Scalar log(const Scalar& s);
    static Scalar exp(const Scalar& s);

    bool is_rational() const { return terms_.empty(); }
    const Q& rational_part() const { return r_; }
    // throws UnsupportedSet when symbolic
    const Q& rat() const;
    const std::map<Key, Q>& terms() const { return terms_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Q& q);
    Scalar& operator/=(const Q& q);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Q& q) { return a *= q; }
    friend Scalar operator*(const Q& q, Scalar a) { return a *= q; }
    friend Scalar operator/(Scalar a, const Q& q) { return a /= q; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    bool is_zero() const { return terms_.empty() && r_ == 0; }
    // certified sign: -1, 0, +1
    int sign() const;
    double to_double() const;
    // enclosure bounds as doubles (outward rounded)
    void bounds(double& lo, double& hi) const;

    // structural equality is exact equality (basis symbols are independent)
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

    std::string str() const;

private:
    void normalize();
    Q r_{0};
    std::map<Key, Q> terms_;
};

using SVec = std::vector<Scalar>;

SVec to_svec(const QVec& v);
bool all_rational(const SVec& v);
QVec to_qvec(const SVec& v);  // throws when symbolic

// Scalar or +-infinity. inf = -1, 0, +1.
struct ExtScalar {
    int inf = 0;
    Scalar v;

    ExtScalar() = default;
    ExtScalar(const Scalar& s) : v(s) {}  // NOLINT implicit
    ExtScalar(const Q& q) : v(q) {}       // NOLINT implicit
    ExtScalar(long q) : v(q) {}           // NOLINT implicit
    ExtScalar(int q) : v(q) {}            // NOLINT implicit
    static ExtScalar pos_inf() { ExtScalar e; e.inf = 1; return e; }
    static ExtScalar neg_inf() { ExtScalar e; e.inf = -1; return e; }
    bool finite() const { return inf == 0; }
    int compare(const ExtScalar& o) const;
    friend bool operator==(const ExtScalar& a, const ExtScalar& b) { return a.compare(b) == 0; }
    friend bool operator!=(const ExtScalar& a, const ExtScalar& b) { return a.compare(b) != 0; }
    friend bool operator<(const ExtScalar& a, const ExtScalar& b) { return a.compare(b) < 0; }
    friend bool operator<=(const ExtScalar& a, const ExtScalar& b) { return a.compare(b) <= 0; }
    friend bool operator>(const ExtScalar& a, const ExtScalar& b) { return a.compare(b) > 0; }
    friend bool operator>=(const ExtScalar& a, const ExtScalar& b) { return a.compare(b) >= 0; }
    ExtScalar operator-() const;
    std::string str() const;  // "+inf", "-inf" or the scalar
    double to_double() const;
};

// Extended addition; +inf + -inf throws Undecidable.
ExtScalar ext_add(const ExtScalar& a, const ExtScalar& b);
// Multiplication by a rational; 0 * inf = 0.
ExtScalar ext_scale(const Q& q, const ExtScalar& a);

// Value of a function: finite scalar or +inf.
using ExtendedValue = ExtScalar;

}  // namespace solnscope
