#include "solnscope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solnscope/errors.hpp"

namespace solnscope {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dbl(const Q& q) { return q.get_d(); }

std::vector<std::size_t> support_of(const std::vector<int>& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) out.push_back(i);
    return out;
}

double atom_value(const Atom& a, const std::vector<double>& x) {
    double aff = 0;
    for (std::size_t k = 0; k < a.w.size(); ++k) aff += dbl(a.w[k]) * x[k];
    aff += dbl(a.c);
    double v = 0;
    switch (a.kind) {
        case Atom::Exp: v = std::exp(aff); break;
        case Atom::NegLog: v = aff > 0 ? -std::log(aff) : kInf; break;
        case Atom::Hinge: v = std::max(aff, 0.0); break;
        case Atom::HingeAbs: v = std::max(std::fabs(x[a.i]) - dbl(a.c), 0.0); break;
        case Atom::HingeExpDiff: v = std::max(std::exp(x[a.j]) - x[a.i], 0.0); break;
        case Atom::QuadShift: {
            double d = x[a.i] - dbl(a.c);
            v = 0.5 * d * d;
            break;
        }
        case Atom::IndHyperbola: v = (x[a.i] >= 0 && x[a.j] >= 0 && x[a.i] * x[a.j] >= 1) ? 0 : kInf; break;
    }
    return dbl(a.lambda) * v;
}

double f_value(const FuncExpr& f, const std::vector<double>& x) {
    double s = 0;
    for (std::size_t k = 0; k < f.n; ++k) s += dbl(f.lin[k]) * x[k];
    for (const auto& a : f.terms) s += atom_value(a, x);
    return s;
}

std::vector<double> residual(const QMat& A, const QVec& b, const std::vector<double>& x) {
    std::vector<double> r(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        double s = -dbl(b[i]);
        for (std::size_t j = 0; j < A.cols(); ++j) s += dbl(A(i, j)) * x[j];
        r[i] = s;
    }
    return r;
}

// prox of gamma * (one atom) applied on its coordinates
void atom_prox(const Atom& a, double gamma, std::vector<double>& v) {
    double t = gamma * dbl(a.lambda);
    switch (a.kind) {
        case Atom::HingeAbs: {
            double c = dbl(a.c), z = v[a.i], m = std::fabs(z), s = z < 0 ? -1.0 : 1.0;
            if (m <= c)
                return;
            else if (m <= c + t)
                v[a.i] = s * c;
            else
                v[a.i] = z - s * t;
            return;
        }
        case Atom::Hinge: {
            double ww = 0, s = dbl(a.c);
            for (std::size_t k = 0; k < v.size(); ++k) {
                ww += dbl(a.w[k]) * dbl(a.w[k]);
                s += dbl(a.w[k]) * v[k];
            }
            double step = s <= 0 ? 0 : (s >= t * ww ? t : s / ww);
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= step * dbl(a.w[k]);
            return;
        }
        case Atom::QuadShift: v[a.i] = (v[a.i] + t * dbl(a.c)) / (1 + t); return;
        default: throw NoProx("no proximal map for " + a.dsl());
    }
}

}  // namespace

// ---------------------------------------------------------------- lasso

LassoSolutions lasso_enumerate(const QMat& A, const QVec& b) {
    std::size_t n = A.cols(), m = A.rows();
    if (n > 8) throw SizeLimit("sign-pattern enumeration is limited to n <= 8");
    if (b.size() != m) throw DimensionError("b has the wrong length");
    LassoSolutions out;
    bool have = false;
    std::vector<int> s(n, -1);
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t k = 0; k < n; ++k) {
            s[k] = static_cast<int>(c % 3) - 1;
            c /= 3;
        }
        auto S = support_of(s);
        QVec x(n, Q(0));
        if (!S.empty()) {
            // (A_S^T A_S) x_S = A_S^T b - s_S
            std::vector<QVec> rows(S.size(), QVec(S.size(), Q(0)));
            QVec rhs(S.size(), Q(0));
            for (std::size_t p = 0; p < S.size(); ++p) {
                for (std::size_t q = 0; q < S.size(); ++q)
                    for (std::size_t i = 0; i < m; ++i) rows[p][q] += A(i, S[p]) * A(i, S[q]);
                for (std::size_t i = 0; i < m; ++i) rhs[p] += A(i, S[p]) * b[i];
                rhs[p] -= s[S[p]];
            }
            QVec xs;
            if (!solve_min_norm(QMat::from_rows(rows, S.size()), rhs, xs)) continue;
            bool ok = true;
            for (std::size_t p = 0; p < S.size(); ++p) {
                if (xs[p] * s[S[p]] < 0) ok = false;
                x[S[p]] = xs[p];
            }
            if (!ok) continue;
        }
        QVec r = sub(b, A * x);
        QVec g = A.transpose() * r;
        bool kkt = true;
        for (std::size_t k = 0; k < n && kkt; ++k) {
            if (s[k] != 0)
                kkt = g[k] == s[k];
            else
                kkt = abs(g[k]) <= 1;
        }
        if (!kkt) continue;
        Q obj = dot(r, r) / 2;
        for (const auto& xi : x) obj += abs(xi);
        if (have && obj != out.objective) throw PreconditionFail("KKT points with different objective values");
        have = true;
        out.objective = obj;
        out.Ax = A * x;
        if (std::find(out.solutions.begin(), out.solutions.end(), x) == out.solutions.end()) {
            out.solutions.push_back(x);
            out.patterns.push_back(s);
        }
    }
    return out;
}

// ---------------------------------------------------------------- grid

namespace {

struct GridRun {
    std::vector<std::vector<double>> candidates;
    double value = kInf;
    std::vector<double> best_x, pitch;
};

// refined search on the box [lo, hi]; value stays +inf when the objective is +inf everywhere
GridRun grid_search(const Objective& obj, std::vector<double> lo, std::vector<double> hi, const GridSpec& spec) {
    std::size_t n = lo.size();
    const std::vector<double> outer_lo = lo, outer_hi = hi;
    std::vector<double> pitch(n);
    std::vector<std::size_t> res(n, spec.resolution);
    for (std::size_t k = 0; k < n; ++k) pitch[k] = (hi[k] - lo[k]) / double(res[k] - 1);

    GridRun R;
    for (std::size_t round = 0; round < std::max<std::size_t>(spec.rounds, 1); ++round) {
        double total = 1;
        for (auto r : res) total *= double(r);
        if (total > 1e7) throw SizeLimit("grid exceeds 10^7 points");
        std::vector<std::pair<double, std::vector<double>>> pts;
        std::vector<std::size_t> idx(n, 0);
        double best = kInf;
        std::vector<double> x(n);
        while (true) {
            for (std::size_t k = 0; k < n; ++k) x[k] = idx[k] + 1 == res[k] ? hi[k] : lo[k] + pitch[k] * double(idx[k]);
            double v = obj(x);
            if (std::isfinite(v)) {
                pts.push_back({v, x});
                best = std::min(best, v);
            }
            std::size_t k = 0;
            while (k < n && ++idx[k] == res[k]) idx[k++] = 0;
            if (k == n) break;
        }
        if (!std::isfinite(best)) return R;
        R.candidates.clear();
        for (auto& [v, p] : pts)
            if (v <= best + 1e-6) R.candidates.push_back(p);
        R.value = best;
        for (const auto& [v, p] : pts)
            if (v == best) {
                R.best_x = p;
                break;
            }
        if (round + 1 == spec.rounds) break;
        // zoom: bounding box of the cluster plus one pitch, pitch divided by 10
        for (std::size_t k = 0; k < n; ++k) {
            double a = kInf, b = -kInf;
            for (const auto& c : R.candidates) {
                a = std::min(a, c[k]);
                b = std::max(b, c[k]);
            }
            double nlo = std::max(outer_lo[k], a - pitch[k]), nhi = std::min(outer_hi[k], b + pitch[k]);
            double np = pitch[k] / 10;
            lo[k] = nlo;
            hi[k] = nhi;
            res[k] = std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil((nhi - nlo) / np)) + 1);
            pitch[k] = (nhi - nlo) / double(res[k] - 1);
        }
    }
    R.pitch = pitch;
    return R;
}

bool decreased(double from, double to) { return from - to > 1e-9 * (1 + std::fabs(from)); }

}  // namespace

OracleResult grid_minimize(const Objective& obj, const GridSpec& spec) {
    std::size_t n = spec.lo.size();
    if (n == 0 || spec.hi.size() != n) throw DimensionError("grid box");
    if (spec.resolution < 3) throw PreconditionFail("grid resolution must be at least 3");
    GridRun G = grid_search(obj, spec.lo, spec.hi, spec);
    if (!std::isfinite(G.value)) throw AllInfinite("objective is +inf on the whole grid");

    OracleResult R;
    R.candidates = G.candidates;
    R.value = G.value;
    R.pitch = G.pitch;
    double diag = 0;
    for (std::size_t k = 0; k < n; ++k) diag += G.pitch[k] * G.pitch[k];
    R.certified_gap = spec.lipschitz * std::sqrt(diag) / 2;
    for (const auto& c : R.candidates)
        for (std::size_t k = 0; k < n; ++k)
            if (c[k] <= spec.lo[k] || c[k] >= spec.hi[k]) R.boundary_hit = true;

    // does the objective keep decreasing past the outer boundary at the incumbent?
    std::vector<double> lo = spec.lo, hi = spec.hi;
    bool touches = false;
    for (std::size_t k = 0; k < n; ++k) {
        bool at_lo = G.best_x[k] <= spec.lo[k], at_hi = G.best_x[k] >= spec.hi[k];
        if (!at_lo && !at_hi) continue;
        touches = true;
        std::vector<double> y = G.best_x;
        y[k] += at_lo ? G.pitch[k] : -G.pitch[k];
        if (decreased(obj(y), R.value)) R.divergent = true;
        // the same box shifted outward across the touched face
        double w = spec.hi[k] - spec.lo[k];
        lo[k] = at_lo ? spec.lo[k] - w : spec.hi[k];
        hi[k] = at_lo ? spec.lo[k] : spec.hi[k] + w;
    }
    if (touches && !R.divergent) {
        GridRun O = grid_search(obj, lo, hi, spec);
        if (std::isfinite(O.value) && decreased(R.value, O.value)) R.divergent = true;
    }
    return R;
}

Objective p1_objective(const FuncExpr& f, const QMat& A, const QVec& b) {
    return [f, A, b](const std::vector<double>& x) {
        double v = f_value(f, x);
        if (!std::isfinite(v)) return kInf;
        auto r = residual(A, b, x);
        for (double ri : r) v += 0.5 * ri * ri;
        return v;
    };
}

// ---------------------------------------------------------------- proximal gradient

OracleResult prox_grad(const FuncExpr& f, const QMat& A, const QVec& b, std::size_t steps, double stepsize,
                       std::vector<double> x0) {
    std::size_t n = f.n;
    if (!f.separable()) throw NoProx("atoms overlap");
    for (const auto& a : f.terms)
        if (a.kind != Atom::HingeAbs && a.kind != Atom::Hinge && a.kind != Atom::QuadShift)
            throw NoProx("no proximal map for " + a.dsl());
    if (stepsize <= 0) {
        double fro = 0;
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) fro += dbl(A(i, j)) * dbl(A(i, j));
        stepsize = fro > 0 ? 1.0 / fro : 1.0;
    }
    std::vector<double> x = x0.empty() ? std::vector<double>(n, 0.0) : x0;
    std::vector<double> g(n);
    for (std::size_t it = 0; it < steps; ++it) {
        auto r = residual(A, b, x);
        for (std::size_t j = 0; j < n; ++j) {
            double s = dbl(f.lin[j]);
            for (std::size_t i = 0; i < A.rows(); ++i) s += dbl(A(i, j)) * r[i];
            g[j] = s;
        }
        for (std::size_t j = 0; j < n; ++j) x[j] -= stepsize * g[j];
        for (const auto& a : f.terms) atom_prox(a, stepsize, x);
    }
    OracleResult R;
    R.candidates = {x};
    R.value = p1_objective(f, A, b)(x);
    return R;
}

Q rationalize(double x, long max_den) {
    if (!std::isfinite(x)) throw DomainViolation("cannot rationalize a non-finite value");
    // best rational approximation by continued fractions
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double y = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(y);
        if (std::fabs(a) > 1e15) break;
        long ai = static_cast<long>(a);
        long q2 = q0 + ai * q1;
        if (q2 > max_den) break;
        long p2 = p0 + ai * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = y - a;
        if (frac < 1e-12) break;
        y = 1 / frac;
    }
    if (q1 == 0) return Q(static_cast<long>(std::llround(x)));
    Q r(p1, q1);
    r.canonicalize();
    return r;
}

}  // namespace solnscope
