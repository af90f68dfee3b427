#include <fstream>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include <plane_branch/coordinate_change.hpp>
#include <plane_branch/equivalence.hpp>
#include <plane_branch/random_change.hpp>
#include <plane_branch/reproduce.hpp>

#include "support.hpp"

using namespace plane_branch;
using test_support::branch;
using test_support::terms_of;

TEST(Homothety, Examples)
{
    const auto a = terms_of({{8, "1"}, {10, "1"}, {13, "1"}});
    EXPECT_EQ(homothety_solve(a, a, 8), (HomothetyWitness{1, Rational(1)}));
    const auto minus = homothety_solve(a, terms_of({{8, "1"}, {10, "1"}, {13, "-1"}}), 8);
    ASSERT_TRUE(minus.has_value());
    EXPECT_EQ(minus->g, 1);
    EXPECT_EQ(minus->w, Rational(-1));
    EXPECT_FALSE(homothety_solve(a, terms_of({{8, "1"}, {10, "1"}, {13, "2"}}), 8).has_value());
    EXPECT_FALSE(homothety_solve(a, terms_of({{8, "1"}, {10, "1"}}), 8).has_value());
    // r = 2 on (t^7, t^8 + 2 t^10): a_i = r^(i - v1) b_i.
    const auto two = homothety_solve(terms_of({{8, "1"}, {10, "2"}}), terms_of({{8, "1"}, {10, "1/2"}}), 8);
    ASSERT_TRUE(two.has_value());
    EXPECT_EQ(two->w, Rational(4));
}

TEST(Homothety, MatchesRootsOfUnity)
{
    std::mt19937 rng(5);
    const int v1 = 8;
    int positive = 0;
    for (int m = 1; m <= 24; ++m) {
        const int lam = v1 + m;
        for (int trial = 0; trial < 40; ++trial) {
            std::map<int, Rational> a{{v1, Rational(1)}, {lam, Rational(1)}};
            std::map<int, Rational> b = a;
            const int r_exp = static_cast<int>(rng() % static_cast<unsigned>(m));
            const int extra = 1 + static_cast<int>(rng() % 3);
            for (int t = 0; t < extra; ++t) {
                const int i = lam + 1 + static_cast<int>(rng() % 30);
                const Rational bi = test_support::small_rational(rng);
                b[i] = bi;
                // Image under r = exp(2 pi i r_exp / m) when r^(i - v1) is real; otherwise a sign guess.
                const long e = (static_cast<long>(r_exp) * (i - v1)) % m;
                Rational sign = (e == 0) ? Rational(1) : (2 * e == m ? Rational(-1) : Rational(rng() % 2 ? 1 : -1));
                if (rng() % 5 == 0) {
                    sign *= Rational(2);
                }
                a[i] = sign * bi;
            }
            const bool oracle = test_support::roots_of_unity_oracle(a, b, v1, m);
            EXPECT_EQ(homothety_solve(a, b, v1).has_value(), oracle) << "m = " << m << " trial " << trial;
            positive += oracle ? 1 : 0;
        }
    }
    EXPECT_GT(positive, 100);
}

TEST(Equivalence, RandomChangesAreEquivalent)
{
    RandomChangeSource rng(17);
    for (const auto &phi : test_support::property_branches()) {
        for (int trial = 0; trial < 2; ++trial) {
            const PuiseuxParam moved = apply_coordinate_change(phi, rng.next(phi));
            const EquivVerdict v = decide_equivalence(phi, moved);
            EXPECT_EQ(v.outcome, EquivOutcome::Equivalent);
            EXPECT_EQ(v.reason, EquivReason::SameNormalFormUpToHomothety);
        }
    }
}

TEST(Equivalence, RelationLaws)
{
    RandomChangeSource rng(23);
    std::vector<PuiseuxParam> pool;
    for (const auto &phi : {branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}}),
                            branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}, {13, "1"}}),
                            branch(7, {{8, "1"}, {13, "1"}, {18, "1"}})}) {
        pool.push_back(phi);
        pool.push_back(apply_coordinate_change(phi, rng.next(phi)));
    }
    std::vector<std::vector<bool>> eq(pool.size(), std::vector<bool>(pool.size()));
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
            eq[i][j] = decide_equivalence(pool[i], pool[j]).outcome == EquivOutcome::Equivalent;
        }
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        EXPECT_TRUE(eq[i][i]);
        for (std::size_t j = 0; j < pool.size(); ++j) {
            EXPECT_EQ(eq[i][j], eq[j][i]);
            EXPECT_EQ(eq[i][j], i / 2 == j / 2) << i << " " << j;
            for (std::size_t k = 0; k < pool.size(); ++k) {
                if (eq[i][j] && eq[j][k]) {
                    EXPECT_TRUE(eq[i][k]);
                }
            }
        }
    }
}

TEST(Equivalence, Reasons)
{
    const EquivVerdict gamma = decide_equivalence(branch(7, {{8, "1"}}), branch(7, {{9, "1"}}));
    EXPECT_EQ(gamma.outcome, EquivOutcome::NotEquivalent);
    EXPECT_EQ(gamma.reason, EquivReason::DifferentGamma);

    const EquivVerdict rows = decide_equivalence(branch(7, {{8, "1"}, {26, "1"}, {27, "1"}}), branch(7, {{8, "1"}, {27, "1"}}));
    EXPECT_EQ(rows.reason, EquivReason::DifferentLambda);

    const EquivVerdict strata = decide_equivalence(branch(7, {{8, "1"}, {18, "1"}, {19, "1"}, {20, "2"}}),
                                                   branch(7, {{8, "1"}, {18, "1"}, {19, "1"}, {20, "121/120"}}));
    EXPECT_EQ(strata.outcome, EquivOutcome::NotEquivalent);
    EXPECT_EQ(strata.reason, EquivReason::DifferentLambda);

    const EquivVerdict forms = decide_equivalence(branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}, {13, "1"}}),
                                                  branch(7, {{8, "1"}, {10, "1"}, {11, "1"}, {12, "3"}, {13, "2"}}));
    EXPECT_EQ(forms.outcome, EquivOutcome::NotEquivalent);
    EXPECT_EQ(forms.reason, EquivReason::NoHomothety);

    EXPECT_THROW(decide_equivalence(branch(7, {{8, "1"}}), branch(7, {{8, "1"}}, 3)), InputError);
}

TEST(Equivalence, CounterexamplePair)
{
    const CounterexampleData d = counterexample_change(Rational(2), Rational(1), Rational(1), Rational(0));
    // The t^20 coefficient moves by 5 b1 (3/4 - a13/7).
    EXPECT_EQ(d.image.coeff(20), Rational(1) + Rational(5) * (Rational(3, 4) - Rational(2, 7)));
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(d.image.coeff(i), d.original.coeff(i)) << i;
    }
    EXPECT_EQ(decide_equivalence(d.original, d.image).outcome, EquivOutcome::Equivalent);
    EXPECT_EQ(decide_equivalence(d.original, d.displayed).outcome, EquivOutcome::Equivalent);
    EXPECT_FALSE(homothety_solve(d.original.terms(), d.displayed.terms(), 8).has_value());
    EXPECT_THROW(counterexample_change(Rational(21, 4), Rational(1), Rational(1), Rational(0)), InputError);
}

TEST(Reproduce, AllExamplesPass)
{
    const nlohmann::json samples = load_samples(PLANE_BRANCH_SAMPLES);
    for (const char *id : {"7.2", "7.1", "zariski-counterexample"}) {
        const ReproReport rep = reproduce(id, samples);
        EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
    }
    EXPECT_THROW(reproduce("7.3", samples), InputError);
}
