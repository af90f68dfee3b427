#ifndef PLANE_BRANCH_SEMIGROUP_HPP
#define PLANE_BRANCH_SEMIGROUP_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <plane_branch/errors.hpp>

namespace plane_branch {

// Characteristic data of a plane branch: beta_0 < ... < beta_g, e_i = gcd(beta_0..beta_i),
// n_i = e_{i-1}/e_i (n_0 = 1) and Puiseux pairs (n_i, beta_i/e_i).
struct CharData {
    std::vector<int> beta;
    std::vector<int> e;
    std::vector<int> n;
    std::vector<std::pair<int, int>> puiseux_pairs;

    [[nodiscard]] int genus() const { return static_cast<int>(beta.size()) - 1; }
    friend bool operator==(const CharData &, const CharData &) = default;
};

struct Diagnostic {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

namespace detail {

// Membership in the semigroup generated by gens, for 0..limit.
inline std::vector<char> membership_table(const std::vector<int> &gens, int limit)
{
    std::vector<char> in(static_cast<std::size_t>(limit + 1), 0);
    in[0] = 1;
    for (int l = 1; l <= limit; ++l) {
        for (int g : gens) {
            if (g <= l && in[static_cast<std::size_t>(l - g)]) {
                in[static_cast<std::size_t>(l)] = 1;
                break;
            }
        }
    }
    return in;
}

inline int gcd_of(const std::vector<int> &v)
{
    int g = 0;
    for (int x : v) {
        g = std::gcd(g, x);
    }
    return g;
}

} // namespace detail

class NumericalSemigroup {
public:
    // Accepts non-minimal generator lists; the minimal system is recomputed.
    static NumericalSemigroup from_generators(std::vector<int> gens)
    {
        if (gens.empty()) {
            throw InputError("semigroup: empty generator list");
        }
        for (int g : gens) {
            if (g <= 0) {
                throw InputError("semigroup: generators must be positive");
            }
        }
        if (detail::gcd_of(gens) != 1) {
            throw InputError("semigroup: generators have gcd " + std::to_string(detail::gcd_of(gens)) + " != 1");
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

        NumericalSemigroup s;
        for (int g : gens) {
            if (!s.generators_.empty()) {
                const auto table = detail::membership_table(s.generators_, g);
                if (table[static_cast<std::size_t>(g)]) {
                    continue;
                }
            }
            s.generators_.push_back(g);
        }

        // Run the table until min-generator many consecutive members appear.
        const int v0 = s.generators_.front();
        int limit = 4 * v0 + 8;
        for (;;) {
            const auto table = detail::membership_table(s.generators_, limit);
            int run = 0;
            int conductor = -1;
            for (int l = 0; l <= limit; ++l) {
                run = table[static_cast<std::size_t>(l)] ? run + 1 : 0;
                if (run == v0) {
                    conductor = l - v0 + 1;
                    break;
                }
            }
            if (conductor >= 0) {
                s.conductor_ = conductor;
                break;
            }
            limit *= 2;
        }
        s.table_ = detail::membership_table(s.generators_, s.conductor_ + 2 * v0);
        for (int l = 1; l < s.conductor_; ++l) {
            if (!s.table_[static_cast<std::size_t>(l)]) {
                s.gaps_.push_back(l);
            }
        }
        return s;
    }

    [[nodiscard]] const std::vector<int> &generators() const { return generators_; }
    [[nodiscard]] int conductor() const { return conductor_; }
    [[nodiscard]] const std::vector<int> &gaps() const { return gaps_; }
    [[nodiscard]] int multiplicity() const { return generators_.front(); }

    [[nodiscard]] bool contains(int l) const
    {
        if (l < 0) {
            return false;
        }
        if (l >= conductor_) {
            return true;
        }
        return table_[static_cast<std::size_t>(l)] != 0;
    }

    friend bool operator==(const NumericalSemigroup &a, const NumericalSemigroup &b)
    {
        return a.generators_ == b.generators_;
    }

private:
    NumericalSemigroup() = default;
    std::vector<int> generators_;
    int conductor_ = 0;
    std::vector<char> table_;
    std::vector<int> gaps_;
};

inline NumericalSemigroup semigroup_from_generators(const std::vector<int> &gens)
{
    return NumericalSemigroup::from_generators(gens);
}

// Semigroup of a plane branch: gcd chain strictly decreasing to 1 and v_{i+1} > n_i v_i.
inline Diagnostic validate_plane_branch_semigroup(std::vector<int> gens)
{
    std::sort(gens.begin(), gens.end());
    if (gens.size() < 2) {
        return {false, "need at least two generators"};
    }
    if (gens.front() < 2) {
        return {false, "multiplicity must be at least 2"};
    }
    if (std::adjacent_find(gens.begin(), gens.end()) != gens.end()) {
        return {false, "repeated generator"};
    }
    std::vector<int> e{gens[0]};
    for (std::size_t i = 1; i < gens.size(); ++i) {
        e.push_back(std::gcd(e.back(), gens[i]));
        if (e[i] == e[i - 1]) {
            return {false, "gcd chain does not drop at generator " + std::to_string(gens[i])};
        }
    }
    if (e.back() != 1) {
        return {false, "gcd of generators is " + std::to_string(e.back()) + " != 1"};
    }
    for (std::size_t i = 1; i + 1 < gens.size(); ++i) {
        const int n = e[i - 1] / e[i];
        if (gens[i + 1] <= n * gens[i]) {
            return {false, "v_" + std::to_string(i + 1) + " = " + std::to_string(gens[i + 1])
                               + " is not greater than n_" + std::to_string(i) + " v_" + std::to_string(i) + " = "
                               + std::to_string(n * gens[i])};
        }
    }
    return {true, ""};
}

inline Diagnostic validate_char_exponents(const std::vector<int> &beta)
{
    if (beta.size() < 2) {
        return {false, "need at least beta_0 and beta_1"};
    }
    if (beta[0] < 2) {
        return {false, "beta_0 must be at least 2"};
    }
    int e = beta[0];
    for (std::size_t i = 1; i < beta.size(); ++i) {
        if (beta[i] <= beta[i - 1]) {
            return {false, "characteristic exponents must increase strictly"};
        }
        const int next = std::gcd(e, beta[i]);
        if (next == e) {
            return {false, "gcd does not drop at beta_" + std::to_string(i)};
        }
        e = next;
    }
    if (e != 1) {
        return {false, "gcd of characteristic exponents is " + std::to_string(e) + " != 1"};
    }
    return {true, ""};
}

inline CharData char_data_from_beta(const std::vector<int> &beta)
{
    if (auto d = validate_char_exponents(beta); !d) {
        throw InputError("characteristic exponents: " + d.message);
    }
    CharData cd;
    cd.beta = beta;
    cd.e.push_back(beta[0]);
    cd.n.push_back(1);
    for (std::size_t i = 1; i < beta.size(); ++i) {
        cd.e.push_back(std::gcd(cd.e.back(), beta[i]));
        cd.n.push_back(cd.e[i - 1] / cd.e[i]);
        cd.puiseux_pairs.emplace_back(cd.n[i], beta[i] / cd.e[i]);
    }
    return cd;
}

// v_0 = beta_0, v_1 = beta_1, v_{i+1} = n_i v_i + beta_{i+1} - beta_i.
inline std::pair<NumericalSemigroup, CharData> generators_from_char_exponents(const std::vector<int> &beta)
{
    CharData cd = char_data_from_beta(beta);
    std::vector<int> v{beta[0], beta[1]};
    for (std::size_t i = 1; i + 1 < beta.size(); ++i) {
        v.push_back(cd.n[i] * v[i] + beta[i + 1] - beta[i]);
    }
    return {NumericalSemigroup::from_generators(v), std::move(cd)};
}

inline CharData char_exponents_from_generators(const std::vector<int> &generators)
{
    std::vector<int> v = generators;
    std::sort(v.begin(), v.end());
    if (auto d = validate_plane_branch_semigroup(v); !d) {
        throw InputError("not the semigroup of a plane branch: " + d.message);
    }
    std::vector<int> beta{v[0], v[1]};
    int e = std::gcd(v[0], v[1]);
    int e_prev = v[0];
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const int n = e_prev / e;
        beta.push_back(v[i + 1] - n * v[i] + beta[i]);
        e_prev = e;
        e = std::gcd(e, v[i + 1]);
    }
    return char_data_from_beta(beta);
}

inline CharData char_exponents_from_generators(const NumericalSemigroup &s)
{
    return char_exponents_from_generators(s.generators());
}

// Sorted positive integers below `all_above` that are missing from `members`, restricted to > threshold.
inline std::vector<int> gaps_above(const std::vector<int> &members, int all_above, int threshold)
{
    std::vector<int> out;
    for (int l = std::max(threshold + 1, 1); l < all_above; ++l) {
        if (!std::binary_search(members.begin(), members.end(), l)) {
            out.push_back(l);
        }
    }
    return out;
}

inline std::vector<int> gaps_above(const NumericalSemigroup &s, int threshold)
{
    std::vector<int> out;
    for (int g : s.gaps()) {
        if (g > threshold) {
            out.push_back(g);
        }
    }
    return out;
}

} // namespace plane_branch

#endif
