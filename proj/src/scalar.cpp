#include "solnscope/scalar.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>

#include "solnscope/errors.hpp"

namespace solnscope {

namespace {

constexpr mpfr_prec_t kPrec = 128;

// Closed interval [lo, hi] of MPFR numbers, rounded outward.
struct Encl {
    mpfr_t lo, hi;
    Encl() {
        mpfr_init2(lo, kPrec);
        mpfr_init2(hi, kPrec);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
    }
    ~Encl() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    Encl(const Encl&) = delete;
    Encl& operator=(const Encl&) = delete;

    void set_q(const Q& q) {
        mpfr_set_q(lo, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi, q.get_mpq_t(), MPFR_RNDU);
    }
    void add(const Encl& o) {
        mpfr_add(lo, lo, o.lo, MPFR_RNDD);
        mpfr_add(hi, hi, o.hi, MPFR_RNDU);
    }
    // multiply by an exact rational
    void mul_q(const Q& q) {
        Encl c;
        c.set_q(q);
        mpfr_t a, b, t;
        mpfr_inits2(kPrec, a, b, t, (mpfr_ptr)nullptr);
        // candidate products, min and max over the four corners
        mpfr_mul(a, lo, c.lo, MPFR_RNDD);
        mpfr_mul(t, lo, c.hi, MPFR_RNDD);
        mpfr_min(a, a, t, MPFR_RNDD);
        mpfr_mul(t, hi, c.lo, MPFR_RNDD);
        mpfr_min(a, a, t, MPFR_RNDD);
        mpfr_mul(t, hi, c.hi, MPFR_RNDD);
        mpfr_min(a, a, t, MPFR_RNDD);
        mpfr_mul(b, lo, c.lo, MPFR_RNDU);
        mpfr_mul(t, lo, c.hi, MPFR_RNDU);
        mpfr_max(b, b, t, MPFR_RNDU);
        mpfr_mul(t, hi, c.lo, MPFR_RNDU);
        mpfr_max(b, b, t, MPFR_RNDU);
        mpfr_mul(t, hi, c.hi, MPFR_RNDU);
        mpfr_max(b, b, t, MPFR_RNDU);
        mpfr_set(lo, a, MPFR_RNDD);
        mpfr_set(hi, b, MPFR_RNDU);
        mpfr_clears(a, b, t, (mpfr_ptr)nullptr);
    }
};

void enclose_key(const Scalar::Key& k, Encl& out) {
    if (k.kind == 1) {
        mpfr_set_z(out.lo, k.prime.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(out.hi, k.prime.get_mpz_t(), MPFR_RNDU);
        mpfr_log(out.lo, out.lo, MPFR_RNDD);
        mpfr_log(out.hi, out.hi, MPFR_RNDU);
    } else {
        out.set_q(k.q);
        mpfr_exp(out.lo, out.lo, MPFR_RNDD);
        mpfr_exp(out.hi, out.hi, MPFR_RNDU);
    }
}

void enclose(const Scalar& s, Encl& out) {
    out.set_q(s.rational_part());
    for (const auto& [k, c] : s.terms()) {
        Encl t;
        enclose_key(k, t);
        t.mul_q(c);
        out.add(t);
    }
}

// prime factorisation of a positive integer by trial division
std::map<Z, long> factor(Z n) {
    std::map<Z, long> f;
    if (n < 2) return f;
    for (Z p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
        if (p > 1000000 && p * p <= n) throw SizeLimit("log of rational with a large prime factor");
    }
    if (n > 1) ++f[n];
    return f;
}

std::string qfmt(const Q& q) { return qstr(q); }

}  // namespace

std::string qstr(const Q& q) {
    Q c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

bool Scalar::Key::operator<(const Key& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind == 1) return prime < o.prime;
    return q < o.q;
}

bool Scalar::Key::operator==(const Key& o) const {
    if (kind != o.kind) return false;
    return kind == 1 ? prime == o.prime : q == o.q;
}

void Scalar::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

const Q& Scalar::rat() const {
    if (!terms_.empty()) throw UnsupportedSet("symbolic value " + str() + " where a rational is required");
    return r_;
}

Scalar Scalar::e_pow(const Q& q) {
    if (q == 0) return Scalar(Q(1));
    Scalar s;
    s.r_ = 0;
    s.terms_[Key{2, Z(0), q}] = 1;
    return s;
}

Scalar Scalar::log(const Scalar& s) {
    if (s.is_rational()) {
        if (s.r_ <= 0) throw DomainViolation("log of nonpositive value " + s.str());
        Scalar out;
        for (const auto& [p, e] : factor(s.r_.get_num())) out.terms_[Key{1, p, Q(0)}] += e;
        for (const auto& [p, e] : factor(s.r_.get_den())) out.terms_[Key{1, p, Q(0)}] -= e;
        out.normalize();
        return out;
    }
    // c * e^q with c > 0 rational
    if (s.r_ == 0 && s.terms_.size() == 1 && s.terms_.begin()->first.kind == 2) {
        const Q& c = s.terms_.begin()->second;
        if (c <= 0) throw DomainViolation("log of nonpositive value " + s.str());
        return log(Scalar(c)) + Scalar(s.terms_.begin()->first.q);
    }
    throw UnsupportedSet("log of " + s.str() + " leaves the symbolic span");
}

Scalar Scalar::exp(const Scalar& s) {
    // e^{r + sum k_p log p} = e^r * prod p^{k_p} for integer k_p
    Q mult = 1;
    for (const auto& [k, c] : s.terms_) {
        if (k.kind != 1 || c.get_den() != 1)
            throw UnsupportedSet("exp of " + s.str() + " leaves the symbolic span");
        long e = c.get_num().get_si();
        Z pe;
        mpz_pow_ui(pe.get_mpz_t(), k.prime.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        if (e < 0)
            mult /= Q(pe);
        else
            mult *= Q(pe);
    }
    return e_pow(s.r_) * mult;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.r_ = -s.r_;
    for (auto& kv : s.terms_) kv.second = -kv.second;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    r_ += o.r_;
    for (const auto& [k, c] : o.terms_) terms_[k] += c;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Q& q) {
    r_ *= q;
    for (auto& kv : terms_) kv.second *= q;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Q& q) {
    if (q == 0) throw DomainViolation("division by zero");
    return *this *= Q(1) / q;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (b.is_rational()) return a * b.r_;
    if (a.is_rational()) return b * a.r_;
    Scalar out = a * b.r_;
    out += b * a.r_;
    out -= Scalar(a.r_ * b.r_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            if (ka.kind != 2 || kb.kind != 2)
                throw UnsupportedSet("product " + a.str() + " * " + b.str() + " leaves the symbolic span");
            out += Scalar::e_pow(ka.q + kb.q) * Q(ca * cb);
        }
    }
    return out;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_rational()) return a / b.r_;
    if (b.r_ == 0 && b.terms_.size() == 1 && b.terms_.begin()->first.kind == 2) {
        const auto& [k, c] = *b.terms_.begin();
        return a * (Scalar::e_pow(-k.q) / c);
    }
    throw UnsupportedSet("division by " + b.str() + " leaves the symbolic span");
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.r_ != b.r_ || a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
        if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
}

int Scalar::sign() const {
    if (terms_.empty()) return sgn(r_);
    Encl e;
    enclose(*this, e);
    if (mpfr_sgn(e.lo) > 0) return 1;
    if (mpfr_sgn(e.hi) < 0) return -1;
    throw Undecidable("enclosure of " + str() + " does not fix its sign at 128 bits");
}

double Scalar::to_double() const {
    if (terms_.empty()) return r_.get_d();
    Encl e;
    enclose(*this, e);
    return 0.5 * (mpfr_get_d(e.lo, MPFR_RNDN) + mpfr_get_d(e.hi, MPFR_RNDN));
}

void Scalar::bounds(double& lo, double& hi) const {
    Encl e;
    enclose(*this, e);
    lo = mpfr_get_d(e.lo, MPFR_RNDD);
    hi = mpfr_get_d(e.hi, MPFR_RNDU);
}

std::string Scalar::str() const {
    std::ostringstream os;
    bool first = true;
    if (r_ != 0 || terms_.empty()) {
        os << qfmt(r_);
        first = false;
    }
    for (const auto& [k, c] : terms_) {
        std::string sym;
        if (k.kind == 1) {
            sym = "log(" + k.prime.get_str() + ")";
        } else if (k.q == 1) {
            sym = "e";
        } else {
            sym = "e^(" + qfmt(k.q) + ")";
        }
        Q a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (a != 1) os << qfmt(a) << "*";
        os << sym;
        first = false;
    }
    return os.str();
}

SVec to_svec(const QVec& v) {
    SVec s;
    s.reserve(v.size());
    for (const auto& q : v) s.emplace_back(q);
    return s;
}

bool all_rational(const SVec& v) {
    for (const auto& s : v)
        if (!s.is_rational()) return false;
    return true;
}

QVec to_qvec(const SVec& v) {
    QVec q;
    q.reserve(v.size());
    for (const auto& s : v) q.push_back(s.rat());
    return q;
}

int ExtScalar::compare(const ExtScalar& o) const {
    if (inf != 0 || o.inf != 0) {
        if (inf == o.inf) return 0;
        return inf < o.inf ? -1 : 1;
    }
    return (v - o.v).sign();
}

ExtScalar ExtScalar::operator-() const {
    ExtScalar e;
    e.inf = -inf;
    e.v = -v;
    return e;
}

std::string ExtScalar::str() const {
    if (inf > 0) return "+inf";
    if (inf < 0) return "-inf";
    return v.str();
}

double ExtScalar::to_double() const {
    if (inf > 0) return HUGE_VAL;
    if (inf < 0) return -HUGE_VAL;
    return v.to_double();
}

ExtScalar ext_add(const ExtScalar& a, const ExtScalar& b) {
    if (a.inf != 0 && b.inf != 0 && a.inf != b.inf) throw Undecidable("+inf + -inf");
    if (a.inf != 0) return a;
    if (b.inf != 0) return b;
    return ExtScalar(a.v + b.v);
}

ExtScalar ext_scale(const Q& q, const ExtScalar& a) {
    if (q == 0) return ExtScalar(Q(0));
    if (a.inf != 0) {
        ExtScalar e;
        e.inf = q > 0 ? a.inf : -a.inf;
        return e;
    }
    return ExtScalar(a.v * q);
}

}  // namespace solnscope
