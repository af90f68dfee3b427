#ifndef PLANE_BRANCH_SERIES_HPP
#define PLANE_BRANCH_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <plane_branch/errors.hpp>
#include <plane_branch/rational.hpp>

namespace plane_branch {

// Order of a truncated series: either finite, or "vanishes below the truncation bound".
class ExtOrder {
public:
    static ExtOrder finite(int v) { return ExtOrder(v, false); }
    static ExtOrder above_truncation(int bound) { return ExtOrder(bound, true); }

    [[nodiscard]] bool is_finite() const { return !above_; }
    [[nodiscard]] int value() const
    {
        if (above_) {
            throw InternalError("finite value requested from AboveTruncation(" + std::to_string(v_) + ")");
        }
        return v_;
    }
    [[nodiscard]] int bound() const { return v_; }

    // AboveTruncation never equals a finite order.
    friend bool operator==(const ExtOrder &a, const ExtOrder &b) { return a.above_ == b.above_ && a.v_ == b.v_; }

    [[nodiscard]] std::string str() const
    {
        return above_ ? "AboveTruncation(" + std::to_string(v_) + ")" : std::to_string(v_);
    }
    friend std::ostream &operator<<(std::ostream &os, const ExtOrder &o) { return os << o.str(); }

private:
    ExtOrder(int v, bool above) : v_(v), above_(above) {}
    int v_;
    bool above_;
};

// Truncated univariate series over Q. Coefficients of t^i are exact for i < prec();
// everything at or above prec() is unknown.
class TSeries {
public:
    TSeries() = default;
    explicit TSeries(int prec) : c_(static_cast<std::size_t>(std::max(prec, 0))) {}

    static TSeries monomial(int exponent, const Rational &coeff, int prec)
    {
        TSeries s(prec);
        if (exponent < prec && exponent >= 0) {
            s.c_[static_cast<std::size_t>(exponent)] = coeff;
        }
        return s;
    }

    // Terms at or above prec are dropped.
    static TSeries from_terms(const std::map<int, Rational> &terms, int prec)
    {
        TSeries s(prec);
        for (const auto &[e, a] : terms) {
            if (e < 0) {
                throw InputError("negative exponent in series");
            }
            if (e < prec) {
                s.c_[static_cast<std::size_t>(e)] = a;
            }
        }
        return s;
    }

    [[nodiscard]] int prec() const { return static_cast<int>(c_.size()); }

    [[nodiscard]] const Rational &coeff(int i) const
    {
        if (i < 0 || i >= prec()) {
            throw InternalError("coefficient " + std::to_string(i) + " outside known precision "
                                + std::to_string(prec()));
        }
        return c_[static_cast<std::size_t>(i)];
    }
    void set_coeff(int i, const Rational &v)
    {
        if (i < 0 || i >= prec()) {
            throw InternalError("set_coeff outside known precision");
        }
        c_[static_cast<std::size_t>(i)] = v;
    }

    // Smallest exponent with nonzero coefficient, or prec() when none is known.
    [[nodiscard]] int low_index() const
    {
        for (int i = 0; i < prec(); ++i) {
            if (!c_[static_cast<std::size_t>(i)].is_zero()) {
                return i;
            }
        }
        return prec();
    }

    [[nodiscard]] ExtOrder order() const
    {
        const int i = low_index();
        return i < prec() ? ExtOrder::finite(i) : ExtOrder::above_truncation(prec());
    }

    [[nodiscard]] bool is_zero() const { return low_index() == prec(); }

    [[nodiscard]] std::map<int, Rational> terms() const
    {
        std::map<int, Rational> out;
        for (int i = 0; i < prec(); ++i) {
            if (!c_[static_cast<std::size_t>(i)].is_zero()) {
                out.emplace(i, c_[static_cast<std::size_t>(i)]);
            }
        }
        return out;
    }

    [[nodiscard]] TSeries truncated(int p) const
    {
        TSeries s(std::min(p, prec()));
        std::copy_n(c_.begin(), s.c_.size(), s.c_.begin());
        return s;
    }

    // Multiplication by t^k. Negative k divides and requires order >= -k.
    [[nodiscard]] TSeries shifted(int k) const
    {
        if (k < 0 && low_index() < -k) {
            throw InternalError("shift by t^" + std::to_string(k) + " of a series of lower order");
        }
        TSeries s(prec() + k);
        for (int i = std::max(0, k); i < s.prec(); ++i) {
            s.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i - k)];
        }
        return s;
    }

    [[nodiscard]] TSeries derivative() const
    {
        TSeries s(std::max(prec() - 1, 0));
        for (int i = 0; i < s.prec(); ++i) {
            s.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i + 1)] * Rational(i + 1);
        }
        return s;
    }

    TSeries &operator*=(const Rational &a)
    {
        if (a.is_zero()) {
            std::fill(c_.begin(), c_.end(), Rational{});
            return *this;
        }
        for (auto &x : c_) {
            if (!x.is_zero()) {
                x *= a;
            }
        }
        return *this;
    }
    friend TSeries operator*(TSeries s, const Rational &a) { return s *= a; }
    friend TSeries operator*(const Rational &a, TSeries s) { return s *= a; }

    friend TSeries operator+(const TSeries &a, const TSeries &b) { return combine(a, b, false); }
    friend TSeries operator-(const TSeries &a, const TSeries &b) { return combine(a, b, true); }
    friend TSeries operator-(const TSeries &a) { return a * Rational(-1); }

    friend TSeries operator*(const TSeries &a, const TSeries &b)
    {
        return multiply(a, b, std::numeric_limits<int>::max());
    }

    // Product known to min(propagated precision, cap).
    static TSeries multiply(const TSeries &a, const TSeries &b, int cap)
    {
        const int oa = a.low_index();
        const int ob = b.low_index();
        const long natural = std::min(static_cast<long>(a.prec()) + ob, static_cast<long>(b.prec()) + oa);
        const int p = static_cast<int>(std::min<long>(natural, cap));
        TSeries out(p);
        for (int i = oa; i < a.prec() && i < p; ++i) {
            const Rational &ai = a.c_[static_cast<std::size_t>(i)];
            if (ai.is_zero()) {
                continue;
            }
            for (int j = ob; j < b.prec() && i + j < p; ++j) {
                const Rational &bj = b.c_[static_cast<std::size_t>(j)];
                if (!bj.is_zero()) {
                    out.c_[static_cast<std::size_t>(i + j)] += ai * bj;
                }
            }
        }
        return out;
    }

    // Exact equality of the known parts; precisions must agree.
    friend bool operator==(const TSeries &a, const TSeries &b) = default;

private:
    static TSeries combine(const TSeries &a, const TSeries &b, bool subtract)
    {
        TSeries out(std::min(a.prec(), b.prec()));
        for (int i = 0; i < out.prec(); ++i) {
            const auto k = static_cast<std::size_t>(i);
            out.c_[k] = subtract ? a.c_[k] - b.c_[k] : a.c_[k] + b.c_[k];
        }
        return out;
    }

    std::vector<Rational> c_;
};

inline std::ostream &operator<<(std::ostream &os, const TSeries &s)
{
    bool first = true;
    for (const auto &[e, a] : s.terms()) {
        os << (first ? "" : " + ") << a << "*t^" << e;
        first = false;
    }
    if (first) {
        os << "0";
    }
    return os << " + O(t^" << s.prec() << ")";
}

inline ExtOrder series_order(const TSeries &a) { return a.order(); }

inline TSeries power(const TSeries &s, int n, int cap = std::numeric_limits<int>::max())
{
    TSeries out = TSeries::monomial(0, Rational(1), cap == std::numeric_limits<int>::max() ? s.prec() : cap);
    if (n == 0) {
        return out;
    }
    out = s.truncated(cap);
    for (int i = 1; i < n; ++i) {
        out = TSeries::multiply(out, s, cap);
    }
    return out;
}

// Multiplicative inverse of a series with nonzero constant term.
inline TSeries series_inverse(const TSeries &u)
{
    if (u.prec() == 0 || u.coeff(0).is_zero()) {
        throw InputError("series_inverse: constant term must be nonzero");
    }
    const int p = u.prec();
    TSeries out(p);
    const Rational inv0 = u.coeff(0).inverse();
    out.set_coeff(0, inv0);
    for (int m = 1; m < p; ++m) {
        Rational acc;
        for (int k = 1; k <= m; ++k) {
            if (!u.coeff(k).is_zero()) {
                acc += u.coeff(k) * out.coeff(m - k);
            }
        }
        out.set_coeff(m, -acc * inv0);
    }
    return out;
}

// w^(1/n) for w(0) = 1, normalized so the result has constant term 1.
// Uses w s' = (1/n) w' s, i.e. m s_m = sum_k (k/n - (m-k)) w_k s_{m-k}.
inline TSeries series_root_unit(const TSeries &w, int n)
{
    if (n <= 0) {
        throw InputError("series_root_unit: n must be positive");
    }
    if (w.prec() == 0 || w.coeff(0) != Rational(1)) {
        throw InputError("series_root_unit: constant term must be 1");
    }
    const int p = w.prec();
    const Rational alpha(1, n);
    TSeries s(p);
    s.set_coeff(0, Rational(1));
    for (int m = 1; m < p; ++m) {
        Rational acc;
        for (int k = 1; k <= m; ++k) {
            if (w.coeff(k).is_zero()) {
                continue;
            }
            acc += (alpha * Rational(k) - Rational(m - k)) * w.coeff(k) * s.coeff(m - k);
        }
        s.set_coeff(m, acc / Rational(m));
    }
    return s;
}

// outer(inner) with ord(inner) >= 1.
inline TSeries series_compose(const TSeries &outer, const TSeries &inner)
{
    const int m = inner.low_index();
    if (m == 0) {
        throw InputError("series_compose: inner series must have positive order");
    }
    if (m >= inner.prec()) {
        // inner vanishes to its known precision; only the constant term of outer is reliable.
        const int p = std::min(inner.prec(), outer.prec() > 0 ? inner.prec() : 0);
        TSeries out(p);
        if (p > 0) {
            out.set_coeff(0, outer.coeff(0));
        }
        return out;
    }
    const long po = outer.prec();
    const long o = std::max(outer.low_index(), 1);
    const long p_long = std::min(static_cast<long>(m) * po, static_cast<long>(inner.prec()) + (o - 1) * m);
    const int p = static_cast<int>(p_long);
    TSeries acc(p);
    if (outer.prec() > 0) {
        acc.set_coeff(0, outer.coeff(0));
    }
    // inner^j is known to Pi + (j-1) m, never below p for the j that contribute.
    TSeries pw = inner.truncated(p);
    const int top = std::min(outer.prec() - 1, (p - 1) / m);
    for (int j = 1; j <= top; ++j) {
        if (j > 1) {
            pw = TSeries::multiply(pw, inner, p);
        }
        const Rational &a = outer.coeff(j);
        if (a.is_zero()) {
            continue;
        }
        for (int i = j * m; i < p; ++i) {
            if (!pw.coeff(i).is_zero()) {
                acc.set_coeff(i, acc.coeff(i) + a * pw.coeff(i));
            }
        }
    }
    return acc;
}

// Compositional inverse of s = a1 t + a2 t^2 + ... (a1 != 0), by Lagrange inversion:
// [u^n] r = (1/n) [t^(n-1)] (t/s(t))^n.
inline TSeries series_reversion(const TSeries &s)
{
    if (s.low_index() != 1) {
        throw InputError("series_reversion: series must have order exactly 1");
    }
    const int p = s.prec();
    const TSeries g = series_inverse(s.shifted(-1)); // t/s, known to p-1
    TSeries r(p);
    TSeries gp = g;
    for (int n = 1; n < p; ++n) {
        if (n > 1) {
            gp = TSeries::multiply(gp, g, p - 1);
        }
        r.set_coeff(n, gp.coeff(n - 1) / Rational(n));
    }
    return r;
}

} // namespace plane_branch

#endif
