#ifndef PLANE_BRANCH_RANDOM_CHANGE_HPP
#define PLANE_BRANCH_RANDOM_CHANGE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <plane_branch/bipoly.hpp>
#include <plane_branch/branch.hpp>
#include <plane_branch/coordinate_change.hpp>

namespace plane_branch {

// Sparse random admissible change: raw engine output only, so sequences are identical everywhere.
class RandomChangeSource {
public:
    explicit RandomChangeSource(std::uint64_t seed) : engine_(seed) {}

    int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

    Rational small_coefficient()
    {
        static const int values[] = {-2, -1, 1, 2};
        return Rational(values[below(4)]);
    }

    // r from {1, -1, 2, 1/2}; p, q with `terms` monomials each, of value in (v0, max_value] and
    // (v1, max_value] respectively.
    CoordChange next(const PuiseuxParam &phi, int terms = 2, int max_value = -1, bool allow_scaling = true)
    {
        const int v0 = phi.v0();
        const int v1 = phi.v1();
        if (max_value < 0) {
            max_value = phi.conductor() + v0;
        }
        CoordChange ch;
        if (allow_scaling) {
            static const Rational rs[] = {Rational(1), Rational(-1), Rational(2), Rational(1, 2)};
            ch.r = rs[below(4)];
        }
        ch.p = random_poly(v0, v1, v0, max_value, terms);
        ch.q = random_poly(v0, v1, v1, max_value, terms);
        return ch;
    }

private:
    BiPoly random_poly(int v0, int v1, int above, int max_value, int terms)
    {
        std::vector<Monomial> pool;
        for (int b = 0; b * v1 <= max_value; ++b) {
            for (int a = 0; a * v0 + b * v1 <= max_value; ++a) {
                if (a * v0 + b * v1 > above) {
                    pool.push_back({a, b});
                }
            }
        }
        BiPoly out;
        for (int i = 0; i < terms && !pool.empty(); ++i) {
            out.add_term(pool[static_cast<std::size_t>(below(static_cast<int>(pool.size())))], small_coefficient());
        }
        return out;
    }

    std::mt19937_64 engine_;
};

} // namespace plane_branch

#endif
