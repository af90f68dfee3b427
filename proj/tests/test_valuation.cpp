#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <plane_branch/coordinate_change.hpp>
#include <plane_branch/random_change.hpp>
#include <plane_branch/valuation.hpp>

#include "support.hpp"

using namespace plane_branch;
using test_support::branch;

namespace {

// Rank of a dense rational matrix by plain row reduction.
int rank_of(std::vector<std::vector<Rational>> m)
{
    int rank = 0;
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && m[piv][c].is_zero()) {
            ++piv;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
        const auto &p = m[static_cast<std::size_t>(rank)];
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != static_cast<std::size_t>(rank) && !m[r][c].is_zero()) {
                const Rational f = m[r][c] / p[c];
                for (std::size_t k = c; k < cols; ++k) {
                    m[r][k] -= f * p[k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

// Orders attained by the span of `rows`: the rank of the first j coefficients counts the orders below j.
std::set<int> orders_by_rank(const std::vector<TSeries> &rows, int upto)
{
    std::set<int> out;
    int prev = 0;
    for (int j = 1; j <= upto; ++j) {
        std::vector<std::vector<Rational>> m;
        for (const auto &s : rows) {
            std::vector<Rational> row;
            for (int i = 0; i < j; ++i) {
                row.push_back(s.coeff(i));
            }
            m.push_back(std::move(row));
        }
        const int r = rank_of(std::move(m));
        if (r > prev) {
            out.insert(j - 1);
        }
        prev = r;
    }
    return out;
}

// Lambda values below `upto` from every monomial form X^a Y^b dX, X^a Y^b dY of the class.
std::set<int> lambda_by_rank(const PuiseuxParam &phi, ValueKind kind, int upto)
{
    std::vector<TSeries> rows;
    const int v0 = phi.v0();
    const int v1 = phi.v1();
    for (int b = 0; b * v1 <= upto; ++b) {
        for (int a = 0; a * v0 + b * v1 <= upto; ++a) {
            for (int which = 0; which < 2; ++which) {
                DifferentialForm w;
                (which == 0 ? w.H : w.G) = BiPoly::monomial(a, b);
                if (!satisfies_class(w, kind)) {
                    continue;
                }
                rows.push_back(differential_pullback(phi, w).truncated(upto));
            }
        }
    }
    std::set<int> values;
    for (int o : orders_by_rank(rows, upto)) {
        values.insert(o + 1);
    }
    return values;
}

std::vector<PuiseuxParam> small_branches()
{
    return {
        branch(3, {{4, "1"}, {5, "1"}}),
        branch(3, {{5, "1"}, {7, "2"}}),
        branch(4, {{5, "1"}, {7, "1"}, {10, "3"}}),
        branch(4, {{6, "1"}, {7, "1"}}),
        branch(5, {{6, "1"}, {8, "1"}, {9, "-1"}}),
    };
}

} // namespace

TEST(Valuation, FunctionValues)
{
    EXPECT_EQ(value_of_function(branch(7, {{8, "1"}}), BiPoly::X()), ExtOrder::finite(7));
    EXPECT_EQ(value_of_function(branch(7, {{8, "1"}, {10, "1"}}), BiPoly::Y()), ExtOrder::finite(8));
    const PuiseuxParam cusp = branch(2, {{3, "1"}});
    EXPECT_FALSE(value_of_function(cusp, BiPoly::monomial(0, 2) - BiPoly::monomial(3, 0)).is_finite());
}

TEST(Valuation, DifferentialValues)
{
    const PuiseuxParam phi = branch(7, {{8, "1"}, {10, "1"}});
    EXPECT_EQ(value_of_differential(phi, {BiPoly::constant(1), {}}), ExtOrder::finite(7));
    EXPECT_EQ(value_of_differential(phi, {{}, BiPoly::constant(1)}), ExtOrder::finite(8));
    const DifferentialForm w{BiPoly::monomial(0, 1, Rational(-8)), BiPoly::monomial(1, 0, Rational(7))};
    EXPECT_EQ(value_of_differential(phi, w), ExtOrder::finite(17));
}

TEST(Valuation, SemigroupOfValues)
{
    EXPECT_EQ(semigroup_of_values(branch(2, {{3, "1"}})).finite_part, (std::vector<int>{0}));
    EXPECT_EQ(semigroup_of_values(branch(2, {{3, "1"}})).all_above, 2);
    for (const auto &[phi, gens] : std::vector<std::pair<PuiseuxParam, std::vector<int>>>{
             {branch(7, {{8, "1"}, {10, "1"}}), {7, 8}},
             {branch(6, {{9, "1"}, {10, "1"}}), {6, 9, 19}},
             {branch(4, {{6, "1"}, {7, "1"}}), {4, 6, 13}}}) {
        const ValueSet g = semigroup_of_values(phi);
        const auto s = NumericalSemigroup::from_generators(gens);
        EXPECT_EQ(g.all_above, s.conductor());
        for (int v = 1; v < s.conductor() + 5; ++v) {
            EXPECT_EQ(g.contains(v), s.contains(v)) << v;
        }
        for (const auto &[v, h] : g.function_witnesses) {
            EXPECT_EQ(value_of_function(phi, h), ExtOrder::finite(v));
        }
    }
}

TEST(Lambda, TableRows)
{
    EXPECT_TRUE(lambda_minus_gamma(lambda_set(branch(7, {{8, "1"}}), ValueKind::Lambda),
                                   NumericalSemigroup::from_generators({7, 8}))
                    .empty());
    const auto gamma = NumericalSemigroup::from_generators({7, 8});
    auto diff = [&](const PuiseuxParam &phi) { return lambda_minus_gamma(lambda_set(phi, ValueKind::Lambda), gamma); };
    EXPECT_EQ(diff(branch(7, {{8, "1"}, {34, "1"}})), (std::vector<int>{41}));
    EXPECT_EQ(diff(branch(7, {{8, "1"}, {20, "1"}})), (std::vector<int>{27, 34, 41}));
    EXPECT_EQ(diff(branch(7, {{8, "1"}, {26, "1"}})), (std::vector<int>{33, 41}));
    EXPECT_EQ(diff(branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}})), (std::vector<int>{17, 25, 26, 33, 34, 41}));
}

TEST(Lambda, AgreesWithRankOracle)
{
    for (const auto &phi : small_branches()) {
        const int upto = phi.conductor() + phi.v0();
        for (ValueKind kind : {ValueKind::Lambda, ValueKind::Lambda2, ValueKind::LambdaPrime}) {
            const ValueSet vs = lambda_set(phi, kind);
            const std::set<int> oracle = lambda_by_rank(phi, kind, upto);
            for (int v = 1; v < upto; ++v) {
                EXPECT_EQ(vs.contains(v), oracle.count(v) != 0) << to_string(kind) << " v = " << v;
            }
        }
    }
}

TEST(Lambda, WitnessesAttainTheirValues)
{
    for (const auto &phi : test_support::property_branches()) {
        for (ValueKind kind : {ValueKind::Lambda, ValueKind::Lambda2, ValueKind::LambdaPrime}) {
            const ValueSet vs = lambda_set(phi, kind);
            for (const auto &[v, w] : vs.form_witnesses) {
                EXPECT_TRUE(satisfies_class(w, kind));
                EXPECT_EQ(value_of_differential(phi, w), ExtOrder::finite(v)) << to_string(kind);
            }
            for (int v : vs.finite_part) {
                EXPECT_EQ(vs.form_witnesses.count(v), 1u) << v;
            }
        }
    }
}

TEST(Lambda, Inclusions)
{
    for (const auto &phi : test_support::property_branches()) {
        const ValueSet lam = lambda_set(phi, ValueKind::Lambda);
        const ValueSet prime = lambda_set(phi, ValueKind::LambdaPrime);
        const ValueSet two = lambda_set(phi, ValueKind::Lambda2);
        const NumericalSemigroup &gamma = phi.semigroup();
        for (int v = 1; v <= lam.horizon; ++v) {
            if (gamma.contains(v)) {
                EXPECT_TRUE(lam.contains(v)) << v;
            }
            if (two.contains(v)) {
                EXPECT_TRUE(prime.contains(v)) << v;
            }
            if (prime.contains(v)) {
                EXPECT_TRUE(lam.contains(v)) << v;
            }
        }
        EXPECT_LE(lam.all_above, gamma.conductor());
    }
}

TEST(Lambda, InvariantUnderCoordinateChanges)
{
    RandomChangeSource rng(7);
    for (const auto &phi : test_support::property_branches()) {
        const ValueSet lam = lambda_set(phi, ValueKind::Lambda);
        const ValueSet two = lambda_set(phi, ValueKind::Lambda2);
        for (int trial = 0; trial < 4; ++trial) {
            const PuiseuxParam moved = apply_coordinate_change(phi, rng.next(phi));
            EXPECT_EQ(lambda_set(moved, ValueKind::Lambda), lam);
            EXPECT_EQ(lambda_set(moved, ValueKind::Lambda2), two);
        }
    }
}

TEST(Zariski, Invariant)
{
    EXPECT_EQ(zariski_invariant(branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}})), 10);
    EXPECT_EQ(zariski_invariant(branch(7, {{8, "1"}})), std::nullopt);
    EXPECT_EQ(zariski_invariant(branch(6, {{9, "1"}, {10, "1"}})), 10);
    EXPECT_EQ(zariski_invariant(branch(7, {{8, "1"}, {16, "1"}})), std::nullopt);
}

// lambda from the first non-Gamma value equals lambda from the contact of v0 X dY - v1 Y dX.
TEST(Zariski, DifferentialCrossCheck)
{
    const std::vector<PuiseuxParam> forms = {
        branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}}),
        branch(7, {{8, "1"}, {13, "1"}, {18, "2"}}),
        branch(7, {{8, "1"}, {19, "1"}, {20, "1"}}),
        branch(5, {{6, "1"}, {8, "1"}, {9, "-1"}}),
        branch(6, {{9, "1"}, {10, "1"}, {11, "1"}}),
        branch(4, {{6, "1"}, {7, "1"}}),
        branch(4, {{9, "1"}, {10, "1"}}),
    };
    for (const auto &phi : forms) {
        const auto lam = zariski_invariant(phi);
        ASSERT_TRUE(lam.has_value());
        EXPECT_EQ(lambda_by_differential(phi), ExtOrder::finite(*lam));
        EXPECT_EQ(first_term_after_leading(phi), lam);
    }
}

TEST(Sandwich, BothSidesOfTheCriterion)
{
    const SandwichReport doubled = s_sandwich_check(branch(6, {{9, "1"}, {10, "1"}}));
    EXPECT_TRUE(doubled.expect_top_equality);
    EXPECT_TRUE(doubled.top_equality);
    EXPECT_EQ(doubled.extra_value, 19);
    EXPECT_TRUE(doubled.upper_holds());

    const SandwichReport generic = s_sandwich_check(branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}}));
    EXPECT_EQ(generic.s, (std::vector<int>{7, 8, 14, 15, 16, 17}));
    EXPECT_EQ(generic.lambda_minus_lambda2, generic.s);
    EXPECT_TRUE(generic.lower_holds());
    EXPECT_FALSE(generic.expect_top_equality);
}

// With n1 = 2, (r + 1) v0 = 2 v1 and X^r dX lies in M^2 Omega, so 2 v1 drops out of Lambda \ Lambda^(2).
TEST(Sandwich, LowerInclusionFailsOnlyAtTwiceV1WhenN1IsTwo)
{
    for (const auto &phi : test_support::property_branches()) {
        if (!zariski_invariant(phi)) {
            continue;
        }
        const SandwichReport rep = s_sandwich_check(phi);
        EXPECT_TRUE(rep.upper_holds());
        EXPECT_TRUE(rep.criterion_holds());
        const CharData &cd = phi.char_data();
        if (cd.genus() >= 2 && cd.n[1] == 2) {
            const int v0 = phi.v0();
            const int v1 = phi.v1();
            EXPECT_EQ(rep.lower_violations, std::vector<int>{2 * v1});
            const DifferentialForm w{BiPoly::monomial(2 * v1 / v0 - 1, 0), {}};
            EXPECT_TRUE(satisfies_class(w, ValueKind::Lambda2));
            EXPECT_EQ(value_of_differential(phi, w), ExtOrder::finite(2 * v1));
        } else {
            EXPECT_TRUE(rep.lower_holds());
        }
    }
}
