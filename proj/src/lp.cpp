#include "solnscope/lp.hpp"

#include <algorithm>
#include <map>

#include "solnscope/errors.hpp"

namespace solnscope {

namespace {

// Dense two-phase primal simplex, Bland's rule, exact rational tableau with
// symbolic right-hand sides.
class Simplex {
public:
    Simplex(const std::vector<LinRow>& rows, std::size_t n) : n_(n) {
        std::size_t nslack = 0;
        for (const auto& r : rows)
            if (r.rel != Rel::Eq) ++nslack;
        m_ = rows.size();
        nstruct_ = 2 * n_ + nslack;
        ncols_ = nstruct_ + m_;
        T_.assign(m_, std::vector<Q>(ncols_, Q(0)));
        rhs_.assign(m_, Scalar());
        basis_.assign(m_, 0);
        std::size_t s = 2 * n_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& r = rows[i];
            if (r.a.size() != n_) throw DimensionError("LP row dimension mismatch");
            for (std::size_t j = 0; j < n_; ++j) {
                T_[i][j] = r.a[j];
                T_[i][n_ + j] = -r.a[j];
            }
            if (r.rel != Rel::Eq) T_[i][s++] = 1;
            rhs_[i] = r.b;
            if (rhs_[i].sign() < 0) {
                for (auto& v : T_[i]) v = -v;
                rhs_[i] = -rhs_[i];
            }
            T_[i][nstruct_ + i] = 1;
            basis_[i] = nstruct_ + i;
        }
    }

    LPResult run(const QVec& c) {
        LPResult res;
        // phase 1: maximize -sum(artificials)
        std::vector<Q> cost(ncols_, Q(0));
        for (std::size_t i = 0; i < m_; ++i) cost[nstruct_ + i] = -1;
        set_objective(cost);
        if (!optimize(ncols_)) throw Error("phase one cannot be unbounded");
        if (zval_.sign() < 0) {
            res.status = LPResult::Infeasible;
            return res;
        }
        drive_out_artificials();
        // phase 2
        std::vector<Q> cost2(ncols_, Q(0));
        for (std::size_t j = 0; j < n_; ++j) {
            cost2[j] = c[j];
            cost2[n_ + j] = -c[j];
        }
        set_objective(cost2);
        if (!optimize(nstruct_)) {
            res.status = LPResult::Unbounded;
            return res;
        }
        res.status = LPResult::Optimal;
        res.value = zval_;
        res.x.assign(n_, Scalar());
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t b = basis_[i];
            if (b < n_)
                res.x[b] += rhs_[i];
            else if (b < 2 * n_)
                res.x[b - n_] -= rhs_[i];
        }
        return res;
    }

private:
    void set_objective(const std::vector<Q>& cost) {
        cost_ = cost;
        z_.assign(ncols_, Q(0));
        for (std::size_t j = 0; j < ncols_; ++j) {
            Q v = cost[j];
            for (std::size_t i = 0; i < m_; ++i)
                if (T_[i][j] != 0) v -= cost[basis_[i]] * T_[i][j];
            z_[j] = v;
        }
        zval_ = Scalar();
        for (std::size_t i = 0; i < m_; ++i)
            if (cost[basis_[i]] != 0) zval_ += rhs_[i] * cost[basis_[i]];
    }

    void pivot(std::size_t r, std::size_t e) {
        Q inv = Q(1) / T_[r][e];
        for (auto& v : T_[r]) v *= inv;
        rhs_[r] *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || T_[i][e] == 0) continue;
            Q f = T_[i][e];
            for (std::size_t j = 0; j < ncols_; ++j)
                if (T_[r][j] != 0) T_[i][j] -= f * T_[r][j];
            rhs_[i] -= rhs_[r] * f;
        }
        if (z_[e] != 0) {
            Q f = z_[e];
            for (std::size_t j = 0; j < ncols_; ++j)
                if (T_[r][j] != 0) z_[j] -= f * T_[r][j];
            zval_ += rhs_[r] * f;
        }
        basis_[r] = e;
    }

    // returns false when unbounded; columns >= limit never enter
    bool optimize(std::size_t limit) {
        for (;;) {
            std::size_t e = ncols_;
            for (std::size_t j = 0; j < limit; ++j)
                if (z_[j] > 0) {
                    e = j;
                    break;
                }
            if (e == ncols_) return true;
            std::size_t r = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (T_[i][e] <= 0) continue;
                if (r == m_) {
                    r = i;
                    continue;
                }
                // compare rhs_i / T_ie with rhs_r / T_re
                int s = (rhs_[i] * T_[r][e] - rhs_[r] * T_[i][e]).sign();
                if (s < 0 || (s == 0 && basis_[i] < basis_[r])) r = i;
            }
            if (r == m_) return false;
            pivot(r, e);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_;) {
            if (basis_[i] < nstruct_) {
                ++i;
                continue;
            }
            std::size_t e = ncols_;
            for (std::size_t j = 0; j < nstruct_; ++j)
                if (T_[i][j] != 0) {
                    e = j;
                    break;
                }
            if (e != ncols_) {
                pivot(i, e);
                ++i;
            } else {
                // redundant row
                T_.erase(T_.begin() + static_cast<long>(i));
                rhs_.erase(rhs_.begin() + static_cast<long>(i));
                basis_.erase(basis_.begin() + static_cast<long>(i));
                --m_;
            }
        }
    }

    std::size_t n_, m_, nstruct_, ncols_;
    std::vector<std::vector<Q>> T_;
    std::vector<Scalar> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<Q> cost_, z_;
    Scalar zval_;
};

bool has_strict(const std::vector<LinRow>& rows) {
    for (const auto& r : rows)
        if (r.rel == Rel::Lt) return true;
    return false;
}

}  // namespace

LPResult lp_maximize(const std::vector<LinRow>& rows, const QVec& c, std::size_t n) {
    if (c.size() != n) throw DimensionError("LP objective dimension mismatch");
    std::vector<LinRow> closed = rows;
    for (auto& r : closed)
        if (r.rel == Rel::Lt) r.rel = Rel::Le;
    Simplex s(closed, n);
    return s.run(c);
}

bool lp_feasible_point(const std::vector<LinRow>& rows, std::size_t n, SVec& x) {
    if (!has_strict(rows)) {
        LPResult r = lp_maximize(rows, QVec(n, Q(0)), n);
        if (r.status != LPResult::Optimal) return false;
        x = r.x;
        return true;
    }
    // maximize eps subject to strict rows tightened by eps, eps <= 1
    std::vector<LinRow> lifted;
    for (const auto& r : rows) {
        LinRow l;
        l.a = r.a;
        l.a.push_back(r.rel == Rel::Lt ? Q(1) : Q(0));
        l.b = r.b;
        l.rel = r.rel == Rel::Eq ? Rel::Eq : Rel::Le;
        lifted.push_back(l);
    }
    LinRow cap;
    cap.a.assign(n + 1, Q(0));
    cap.a[n] = 1;
    cap.b = Scalar(1);
    lifted.push_back(cap);
    QVec obj(n + 1, Q(0));
    obj[n] = 1;
    LPResult r = lp_maximize(lifted, obj, n + 1);
    if (r.status != LPResult::Optimal || r.value.sign() <= 0) return false;
    x.assign(r.x.begin(), r.x.begin() + static_cast<long>(n));
    return true;
}

bool lp_feasible(const std::vector<LinRow>& rows, std::size_t n) {
    SVec x;
    return lp_feasible_point(rows, n, x);
}

bool normalize_rows(std::vector<LinRow>& rows, std::size_t n) {
    std::vector<LinRow> out;
    for (auto r : rows) {
        if (r.a.size() != n) throw DimensionError("row dimension mismatch");
        bool zero = true;
        for (const auto& v : r.a)
            if (v != 0) zero = false;
        if (zero) {
            int s = r.b.sign();
            bool ok = r.rel == Rel::Eq ? s == 0 : (r.rel == Rel::Le ? s >= 0 : s > 0);
            if (!ok) return false;
            continue;
        }
        Z l = 1;
        for (const auto& v : r.a) l = lcm(l, Z(v.get_den()));
        Z g = 0;
        for (const auto& v : r.a) g = gcd(g, Z(Q(v * Q(l)).get_num()));
        Q f = Q(l) / Q(g);
        if (r.rel == Rel::Eq) {
            for (const auto& v : r.a)
                if (v != 0) {
                    if (v < 0) f = -f;
                    break;
                }
        }
        for (auto& v : r.a) v *= f;
        r.b *= f;
        out.push_back(std::move(r));
    }
    // dedupe parallel rows with identical normal
    std::vector<LinRow> ded;
    for (auto& r : out) {
        bool merged = false;
        for (auto& d : ded) {
            if (d.a != r.a) continue;
            if (d.rel == Rel::Eq && r.rel == Rel::Eq) {
                if (d.b != r.b) return false;
                merged = true;
                break;
            }
            if (d.rel != Rel::Eq && r.rel != Rel::Eq) {
                int s = (r.b - d.b).sign();
                if (s < 0 || (s == 0 && r.rel == Rel::Lt)) {
                    d.b = r.b;
                    d.rel = r.rel;
                }
                merged = true;
                break;
            }
        }
        if (!merged) ded.push_back(std::move(r));
    }
    rows = std::move(ded);
    return true;
}

std::vector<LinRow> fm_eliminate(const std::vector<LinRow>& rows, std::size_t k, std::size_t n) {
    // an equality involving x_k substitutes exactly
    for (std::size_t e = 0; e < rows.size(); ++e) {
        if (rows[e].rel != Rel::Eq || rows[e].a[k] == 0) continue;
        const LinRow& eq = rows[e];
        std::vector<LinRow> out;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == e) continue;
            LinRow r = rows[i];
            if (r.a[k] != 0) {
                Q f = r.a[k] / eq.a[k];
                for (std::size_t j = 0; j < n; ++j) r.a[j] -= f * eq.a[j];
                r.b -= eq.b * f;
                r.a[k] = 0;
            }
            out.push_back(std::move(r));
        }
        return out;
    }
    std::vector<LinRow> out, pos, neg;
    for (const auto& r : rows) {
        if (r.a[k] == 0)
            out.push_back(r);
        else if (r.a[k] > 0)
            pos.push_back(r);
        else
            neg.push_back(r);
    }
    for (const auto& p : pos)
        for (const auto& q : neg) {
            Q fp = -q.a[k], fq = p.a[k];
            LinRow c;
            c.a.assign(n, Q(0));
            for (std::size_t j = 0; j < n; ++j) c.a[j] = fp * p.a[j] + fq * q.a[j];
            c.a[k] = 0;
            c.b = p.b * fp + q.b * fq;
            c.rel = (p.rel == Rel::Lt || q.rel == Rel::Lt) ? Rel::Lt : Rel::Le;
            out.push_back(std::move(c));
        }
    return out;
}

std::vector<LinRow> remove_redundant(const std::vector<LinRow>& rows_in, std::size_t n) {
    std::vector<LinRow> rows = rows_in;
    if (!normalize_rows(rows, n)) return rows_in;
    // independent equalities first
    std::vector<LinRow> eqs, ineqs;
    for (auto& r : rows) (r.rel == Rel::Eq ? eqs : ineqs).push_back(r);
    std::vector<LinRow> keep_eq;
    for (auto& r : eqs) {
        // reduce r against kept equalities (kept in echelon form below)
        LinRow red = r;
        for (const auto& k : keep_eq) {
            std::size_t p = 0;
            while (k.a[p] == 0) ++p;
            if (red.a[p] != 0) {
                Q f = red.a[p] / k.a[p];
                for (std::size_t j = 0; j < n; ++j) red.a[j] -= f * k.a[j];
                red.b -= k.b * f;
            }
        }
        bool zero = true;
        for (const auto& v : red.a)
            if (v != 0) zero = false;
        if (zero) continue;  // dependent (consistency is the caller's business)
        // eliminate the new pivot from the kept rows
        std::size_t p = 0;
        while (red.a[p] == 0) ++p;
        for (auto& k : keep_eq) {
            if (k.a[p] == 0) continue;
            Q f = k.a[p] / red.a[p];
            for (std::size_t j = 0; j < n; ++j) k.a[j] -= f * red.a[j];
            k.b -= red.b * f;
        }
        keep_eq.push_back(red);
    }
    std::vector<LinRow> cur = keep_eq;
    for (auto& r : ineqs) cur.push_back(r);
    for (std::size_t i = keep_eq.size(); i < cur.size();) {
        std::vector<LinRow> test;
        for (std::size_t j = 0; j < cur.size(); ++j)
            if (j != i) test.push_back(cur[j]);
        LinRow neg;
        neg.a = cur[i].a;
        for (auto& v : neg.a) v = -v;
        neg.b = -cur[i].b;
        neg.rel = cur[i].rel == Rel::Le ? Rel::Lt : Rel::Le;
        test.push_back(neg);
        if (!lp_feasible(test, n))
            cur.erase(cur.begin() + static_cast<long>(i));
        else
            ++i;
    }
    normalize_rows(cur, n);
    return cur;
}

}  // namespace solnscope
