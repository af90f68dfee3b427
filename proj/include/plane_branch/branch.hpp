#ifndef PLANE_BRANCH_BRANCH_HPP
#define PLANE_BRANCH_BRANCH_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <plane_branch/bipoly.hpp>
#include <plane_branch/errors.hpp>
#include <plane_branch/rational.hpp>
#include <plane_branch/semigroup.hpp>
#include <plane_branch/series.hpp>

namespace plane_branch {

// A primitive Puiseux parametrization (t^v0, y(t)) with y = t^v1 + sum_{i>v1} a_i t^i.
// y is carried to the working precision N = c + 2 v0 + 1 + extra, c the conductor.
class PuiseuxParam {
public:
    static PuiseuxParam from_terms(int v0, const std::map<int, Rational> &terms, int trunc_extra = 0)
    {
        std::map<int, Rational> clean;
        for (const auto &[e, a] : terms) {
            if (!a.is_zero()) {
                clean.emplace(e, a);
            }
        }
        const auto [beta, v1] = analyse(v0, clean);
        PuiseuxParam p;
        p.init(v0, beta, trunc_extra);
        p.y_ = TSeries::from_terms(clean, p.working_prec_);
        return p;
    }

    // y must be known at least to the conductor; it is truncated to the working precision.
    static PuiseuxParam from_series(int v0, const TSeries &y, int trunc_extra = 0)
    {
        const auto [beta, v1] = analyse(v0, y.terms());
        PuiseuxParam p;
        p.init(v0, beta, trunc_extra);
        if (y.prec() < p.working_prec_) {
            throw InternalError("series of precision " + std::to_string(y.prec()) + " below working precision "
                                + std::to_string(p.working_prec_));
        }
        p.y_ = y.truncated(p.working_prec_);
        return p;
    }

    [[nodiscard]] int v0() const { return v0_; }
    [[nodiscard]] int v1() const { return char_.beta[1]; }
    [[nodiscard]] const TSeries &y() const { return y_; }
    [[nodiscard]] int working_prec() const { return working_prec_; }
    [[nodiscard]] int trunc_extra() const { return trunc_extra_; }
    [[nodiscard]] const CharData &char_data() const { return char_; }
    [[nodiscard]] const NumericalSemigroup &semigroup() const { return semigroup_; }
    [[nodiscard]] int conductor() const { return semigroup_.conductor(); }
    [[nodiscard]] Rational coeff(int i) const { return i < y_.prec() ? y_.coeff(i) : Rational{}; }
    [[nodiscard]] std::map<int, Rational> terms() const { return y_.terms(); }

    // Same branch data with y replaced; the characteristic data must not change.
    [[nodiscard]] PuiseuxParam with_y(const TSeries &y) const
    {
        PuiseuxParam p = from_series(v0_, y, trunc_extra_);
        if (p.char_ != char_) {
            throw InternalError("coordinate change altered the characteristic exponents");
        }
        return p;
    }

    [[nodiscard]] PuiseuxParam truncated(int prec) const
    {
        PuiseuxParam p = *this;
        p.y_ = y_.truncated(prec);
        return p;
    }

    friend bool operator==(const PuiseuxParam &a, const PuiseuxParam &b)
    {
        return a.v0_ == b.v0_ && a.y_ == b.y_;
    }

private:
    PuiseuxParam() = default;

    struct Analysis {
        std::vector<int> beta;
        int v1;
    };

    static Analysis analyse(int v0, const std::map<int, Rational> &terms)
    {
        if (v0 < 2) {
            throw InputError("branch: v0 must be at least 2");
        }
        if (terms.empty()) {
            throw InputError("branch: y(t) has no terms");
        }
        const int v1 = terms.begin()->first;
        if (v1 <= v0) {
            throw InputError("branch: the lowest exponent of y (" + std::to_string(v1) + ") must exceed v0 ("
                             + std::to_string(v0) + ")");
        }
        if (v1 % v0 == 0) {
            throw InputError("branch: v0 divides the lowest exponent of y");
        }
        std::vector<int> beta{v0};
        int e = v0;
        for (const auto &[j, a] : terms) {
            if (e == 1) {
                break;
            }
            const int next = std::gcd(e, j);
            if (next < e) {
                beta.push_back(j);
                e = next;
            }
        }
        if (e != 1) {
            throw InputError("branch: parametrization is not primitive (gcd of exponents is " + std::to_string(e)
                             + ")");
        }
        return {beta, v1};
    }

    void init(int v0, const std::vector<int> &beta, int trunc_extra)
    {
        if (trunc_extra < 0) {
            throw InputError("branch: negative truncation buffer");
        }
        v0_ = v0;
        trunc_extra_ = trunc_extra;
        auto [s, cd] = generators_from_char_exponents(beta);
        semigroup_ = std::move(s);
        char_ = std::move(cd);
        working_prec_ = semigroup_.conductor() + 2 * v0 + 1 + trunc_extra;
    }

    int v0_ = 0;
    int trunc_extra_ = 0;
    int working_prec_ = 0;
    TSeries y_;
    CharData char_;
    NumericalSemigroup semigroup_ = NumericalSemigroup::from_generators({1});
};

// Rescales y so that its leading coefficient is 1 (the change Y -> Y / a_v1).
// Returns the factor applied to y.
inline std::pair<std::map<int, Rational>, Rational> normalize_leading(const std::map<int, Rational> &terms)
{
    std::map<int, Rational> out;
    for (const auto &[e, a] : terms) {
        if (!a.is_zero()) {
            out.emplace(e, a);
        }
    }
    if (out.empty()) {
        throw InputError("branch: y(t) has no terms");
    }
    const Rational factor = out.begin()->second.inverse();
    for (auto &[e, a] : out) {
        a *= factor;
    }
    return {out, factor};
}

// Evaluates polynomials at (t^v0, y(t)), caching powers of y.
class Pullback {
public:
    Pullback(const PuiseuxParam &phi, int prec) : Pullback(phi.v0(), phi.y(), prec) {}

    // x = t^v0 and y known to y.prec(); results are known to min(prec, what y allows).
    Pullback(int v0, const TSeries &y, int prec) : v0_(v0), prec_(std::min(prec, y.prec())), y_(y.truncated(prec))
    {
        powers_.push_back(TSeries::monomial(0, Rational(1), prec_));
    }

    [[nodiscard]] int prec() const { return prec_; }

    const TSeries &y_power(int b)
    {
        while (static_cast<int>(powers_.size()) <= b) {
            powers_.push_back(TSeries::multiply(powers_.back(), y_, prec_));
        }
        return powers_[static_cast<std::size_t>(b)];
    }

    TSeries monomial(int a, int b) { return y_power(b).shifted(a * v0_).truncated(prec_); }

    TSeries operator()(const BiPoly &h)
    {
        TSeries out(prec_);
        for (const auto &[m, c] : h.terms()) {
            const int shift = m.x * v0_;
            if (shift >= prec_) {
                continue;
            }
            const TSeries &yb = y_power(m.y);
            for (int i = yb.low_index(); i + shift < prec_; ++i) {
                if (!yb.coeff(i).is_zero()) {
                    out.set_coeff(i + shift, out.coeff(i + shift) + c * yb.coeff(i));
                }
            }
        }
        return out;
    }

private:
    int v0_;
    int prec_;
    TSeries y_;
    std::vector<TSeries> powers_;
};

// h(x(t), y(t)) at the branch's working precision.
inline TSeries bipoly_pullback(const BiPoly &h, const PuiseuxParam &phi)
{
    Pullback pb(phi, phi.working_prec());
    return pb(h);
}

} // namespace plane_branch

#endif
