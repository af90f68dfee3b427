#ifndef PLANE_BRANCH_TEST_SUPPORT_HPP
#define PLANE_BRANCH_TEST_SUPPORT_HPP

#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <plane_branch/branch.hpp>
#include <plane_branch/rational.hpp>
#include <plane_branch/series.hpp>

namespace test_support {

using plane_branch::PuiseuxParam;
using plane_branch::Rational;
using plane_branch::TSeries;

inline Rational q(const std::string &s) { return Rational::parse(s); }

inline PuiseuxParam branch(int v0, std::initializer_list<std::pair<int, const char *>> terms, int extra = 0)
{
    std::map<int, Rational> m;
    for (const auto &[e, c] : terms) {
        m[e] = q(c);
    }
    return PuiseuxParam::from_terms(v0, m, extra);
}

inline std::map<int, Rational> terms_of(std::initializer_list<std::pair<int, const char *>> terms)
{
    std::map<int, Rational> m;
    for (const auto &[e, c] : terms) {
        m[e] = q(c);
    }
    return m;
}

// Small nonzero rationals with denominators up to 3.
inline Rational small_rational(std::mt19937 &rng)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    int n = 0;
    while (n == 0) {
        n = num(rng);
    }
    return Rational(n, den(rng));
}

// Dense random series starting at `low`, leading coefficient `lead` if given.
inline TSeries random_series(std::mt19937 &rng, int low, int prec, const Rational *lead = nullptr)
{
    TSeries s(prec);
    std::bernoulli_distribution keep(0.7);
    for (int i = low; i < prec; ++i) {
        if (i == low) {
            s.set_coeff(i, lead ? *lead : small_rational(rng));
        } else if (keep(rng)) {
            s.set_coeff(i, small_rational(rng));
        }
    }
    return s;
}

// Test branches: genus 1 and 2, conductors up to 60.
inline std::vector<PuiseuxParam> property_branches()
{
    return {
        branch(3, {{4, "1"}, {5, "1"}}),
        branch(3, {{5, "1"}, {7, "2"}}),
        branch(4, {{5, "1"}, {7, "1"}, {10, "3"}}),
        branch(5, {{6, "1"}, {8, "1"}, {9, "-1"}}),
        branch(5, {{7, "1"}, {9, "1/2"}}),
        branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}}),
        branch(7, {{8, "1"}, {13, "1"}, {18, "2"}}),
        branch(4, {{6, "1"}, {7, "1"}}),
        branch(4, {{6, "1"}, {7, "1"}, {8, "2"}}),
        branch(6, {{9, "1"}, {10, "1"}, {11, "1"}}),
    };
}

// r = exp(2 pi i k / m); r^d is rational only when it is +1 or -1.
inline bool roots_of_unity_oracle(const std::map<int, Rational> &a, const std::map<int, Rational> &b, int v1, int m)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (int k = 0; k < m; ++k) {
        bool ok = true;
        for (const auto &[i, ai] : a) {
            const auto it = b.find(i);
            if (it == b.end()) {
                return false;
            }
            const Rational c = ai / it->second;
            const long e = (static_cast<long>(k) * (i - v1)) % m;
            if (e == 0) {
                ok = ok && c == Rational(1);
            } else if (2 * e == m) {
                ok = ok && c == Rational(-1);
            } else {
                ok = false;
            }
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

} // namespace test_support

#endif
