#ifndef PLANE_BRANCH_EQUIVALENCE_HPP
#define PLANE_BRANCH_EQUIVALENCE_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <plane_branch/branch.hpp>
#include <plane_branch/normal_form.hpp>
#include <plane_branch/rational.hpp>
#include <plane_branch/valuation.hpp>

namespace plane_branch {

// r exists iff it is any g-th root of w; g = 0 means every r works.
struct HomothetyWitness {
    int g = 0;
    Rational w{1};
    friend bool operator==(const HomothetyWitness &, const HomothetyWitness &) = default;
};

namespace detail {

// (g, u, v) with u a + v b = g = gcd(a, b) >= 0.
inline std::tuple<long, long, long> extended_gcd(long a, long b)
{
    long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const long quot = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - quot * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - quot * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - quot * t);
    }
    if (old_r < 0) {
        return {-old_r, -old_s, -old_t};
    }
    return {old_r, old_s, old_t};
}

} // namespace detail

// Decides whether a_i = r^(i - v1) b_i for all i, for some complex r != 0.
inline std::optional<HomothetyWitness> homothety_solve(const std::map<int, Rational> &a,
                                                       const std::map<int, Rational> &b, int v1)
{
    std::vector<std::pair<int, Rational>> pairs; // (d_j, c_j)
    for (const auto &[i, ai] : a) {
        if (ai.is_zero()) {
            continue;
        }
        const auto it = b.find(i);
        if (it == b.end() || it->second.is_zero()) {
            return std::nullopt;
        }
        pairs.emplace_back(i - v1, ai / it->second);
    }
    for (const auto &[i, bi] : b) {
        if (!bi.is_zero() && (a.find(i) == a.end() || a.at(i).is_zero())) {
            return std::nullopt;
        }
    }

    // Bezout: sum u_j d_j = g.
    long g = 0;
    std::vector<long> u(pairs.size(), 0);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto [gn, x, y] = detail::extended_gcd(g, pairs[j].first);
        for (std::size_t l = 0; l < j; ++l) {
            u[l] *= x;
        }
        u[j] = y;
        g = gn;
    }
    if (g == 0) {
        for (const auto &[d, c] : pairs) {
            if (c != Rational(1)) {
                return std::nullopt;
            }
        }
        return HomothetyWitness{0, Rational(1)};
    }
    Rational w(1);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        w *= pairs[j].second.pow(u[j]);
    }
    for (const auto &[d, c] : pairs) {
        if (w.pow(d / g) != c) {
            return std::nullopt;
        }
    }
    return HomothetyWitness{static_cast<int>(g), w};
}

enum class EquivOutcome { Equivalent, NotEquivalent };
enum class EquivReason { SameNormalFormUpToHomothety, DifferentGamma, DifferentLambda, NoHomothety };

inline std::string to_string(EquivOutcome o) { return o == EquivOutcome::Equivalent ? "equivalent" : "not_equivalent"; }

inline std::string to_string(EquivReason r)
{
    switch (r) {
    case EquivReason::SameNormalFormUpToHomothety:
        return "same_normal_form_up_to_homothety";
    case EquivReason::DifferentGamma:
        return "different_gamma";
    case EquivReason::DifferentLambda:
        return "different_lambda";
    case EquivReason::NoHomothety:
        return "no_homothety";
    }
    return "?";
}

struct EquivVerdict {
    EquivOutcome outcome;
    EquivReason reason;
    std::optional<HomothetyWitness> homothety;
};

inline EquivVerdict decide_equivalence(const PuiseuxParam &a, const PuiseuxParam &b)
{
    if (!(a.semigroup() == b.semigroup())) {
        return {EquivOutcome::NotEquivalent, EquivReason::DifferentGamma, std::nullopt};
    }
    if (a.trunc_extra() != b.trunc_extra()) {
        throw InputError("decide_equivalence: branches carry different truncation buffers");
    }
    if (!(lambda_set(a, ValueKind::Lambda) == lambda_set(b, ValueKind::Lambda))) {
        return {EquivOutcome::NotEquivalent, EquivReason::DifferentLambda, std::nullopt};
    }
    const NormalFormResult na = to_normal_form(a);
    const NormalFormResult nb = to_normal_form(b);
    auto h = homothety_solve(na.normal.terms(), nb.normal.terms(), na.normal.v1());
    if (!h) {
        return {EquivOutcome::NotEquivalent, EquivReason::NoHomothety, std::nullopt};
    }
    return {EquivOutcome::Equivalent, EquivReason::SameNormalFormUpToHomothety, h};
}

} // namespace plane_branch

#endif
