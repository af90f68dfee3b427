#ifndef PLANE_BRANCH_NORMAL_FORM_HPP
#define PLANE_BRANCH_NORMAL_FORM_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <plane_branch/bipoly.hpp>
#include <plane_branch/branch.hpp>
#include <plane_branch/coordinate_change.hpp>
#include <plane_branch/errors.hpp>
#include <plane_branch/valuation.hpp>

namespace plane_branch {

enum class RecipeKind {
    GammaTarget,   // q = s h with v(h) = k
    GammaSource,   // p = s h with v(h) = k + v0 - v1
    Lambda2Flow,   // flow of a Lambda^(2) witness of value k + v0
    DoubledPair,   // n1 = 2, g >= 2, k = v1 + lambda - v0: flow of v1 X^(m1-1) dX - v0 Y dY
    LambdaPrimeFlow,
};

inline std::string to_string(RecipeKind k)
{
    switch (k) {
    case RecipeKind::GammaTarget:
        return "ec1";
    case RecipeKind::GammaSource:
        return "ec2";
    case RecipeKind::Lambda2Flow:
        return "lambda2_witness";
    case RecipeKind::DoubledPair:
        return "n1_two";
    case RecipeKind::LambdaPrimeFlow:
        return "lambda_prime_witness";
    }
    return "?";
}

// One-parameter family of changes whose effect on the coefficient at k is affine in s.
struct Recipe {
    RecipeKind kind = RecipeKind::GammaTarget;
    BiPoly h;           // GammaTarget / GammaSource
    DifferentialForm w; // flow kinds

    [[nodiscard]] CoordChange at(const Rational &s, int v0, int prec) const
    {
        switch (kind) {
        case RecipeKind::GammaTarget:
            return {Rational(1), {}, h * s};
        case RecipeKind::GammaSource:
            return {Rational(1), h * s, {}};
        default:
            return flow_change(w, s, v0, prec);
        }
    }
};

struct ChangeStep {
    RecipeKind kind;
    int exponent;
    CoordChange change;
};

namespace detail {

inline void check_jet(const TSeries &before, const TSeries &after, int k, const std::string &what)
{
    for (int i = 0; i < k; ++i) {
        if (before.coeff(i) != after.coeff(i)) {
            throw InternalError(what + ": coefficient at " + std::to_string(i) + " changed while eliminating t^"
                                + std::to_string(k));
        }
    }
}

} // namespace detail

// Kills the coefficient at k, keeping the jet below k.
inline std::pair<PuiseuxParam, CoordChange> eliminate_term(const PuiseuxParam &phi, int k, const Recipe &recipe)
{
    if (k <= phi.v1() || k >= phi.working_prec()) {
        throw InputError("eliminate_term: exponent " + std::to_string(k) + " out of range");
    }
    const Rational a0 = phi.coeff(k);
    if (a0.is_zero()) {
        throw InputError("eliminate_term: coefficient at " + std::to_string(k) + " is already zero");
    }
    const int v0 = phi.v0();
    const int prec = phi.working_prec();
    const TSeries jet = phi.y().truncated(k + 1);

    // The coefficient must be affine in s: check at s = 0, 1, 2.
    auto probe = [&](int s) {
        const TSeries y = detail::transform_y(v0, phi.v1(), jet, recipe.at(Rational(s), v0, prec));
        detail::check_jet(jet, y, k, "recipe " + to_string(recipe.kind));
        return y.coeff(k);
    };
    const Rational a1 = probe(1);
    const Rational a2 = probe(2);
    if (a2 - a1 * Rational(2) + a0 != Rational(0)) {
        throw InternalError("eliminate_term: coefficient at " + std::to_string(k) + " is not affine in the parameter");
    }
    const Rational slope = a1 - a0;
    if (slope.is_zero()) {
        throw InternalError("eliminate_term: recipe " + to_string(recipe.kind) + " does not move t^" + std::to_string(k));
    }
    const CoordChange ch = recipe.at(-a0 / slope, v0, prec);
    PuiseuxParam out = apply_coordinate_change(phi, ch);
    detail::check_jet(phi.y(), out.y(), k, "eliminate_term");
    if (!out.coeff(k).is_zero()) {
        throw InternalError("eliminate_term: coefficient at " + std::to_string(k) + " survived");
    }
    return {std::move(out), ch};
}

// Which criteria certify that t^j can be removed.
enum class Criterion { EC1, EC2, EC3, EC };

inline std::string to_string(Criterion c)
{
    switch (c) {
    case Criterion::EC1:
        return "EC1";
    case Criterion::EC2:
        return "EC2";
    case Criterion::EC3:
        return "EC3";
    case Criterion::EC:
        return "EC";
    }
    return "?";
}

inline std::vector<Criterion> ec_applicability(const PuiseuxParam &phi, const ValueSet &lambda, int j)
{
    if (j <= phi.v1()) {
        throw InputError("ec_applicability: exponent must exceed v1");
    }
    const NumericalSemigroup &gamma = phi.semigroup();
    const int v0 = phi.v0();
    const int v1 = phi.v1();
    std::vector<Criterion> out;
    if (gamma.contains(j)) {
        out.push_back(Criterion::EC1);
    }
    if (gamma.contains(j + v0 - v1)) {
        out.push_back(Criterion::EC2);
    }
    if (const auto lam = zariski_invariant(phi, lambda); lam && j > *lam) {
        const NumericalSemigroup two = NumericalSemigroup::from_generators({v0, v1});
        if (two.contains(j - *lam)) {
            out.push_back(Criterion::EC3);
        }
        if (lambda.contains(j + v0)) {
            out.push_back(Criterion::EC);
        }
    }
    return out;
}

inline std::vector<Criterion> ec_applicability(const PuiseuxParam &phi, int j)
{
    return ec_applicability(phi, lambda_set(phi, ValueKind::Lambda), j);
}

struct NormalFormResult {
    PuiseuxParam input;  // after scaling the leading coefficient to 1
    Rational input_scale; // factor applied to y before any change
    PuiseuxParam normal;
    std::optional<int> lambda;
    ValueSet lambda_set;
    std::vector<ChangeStep> change_log;
    int dimension_bound;
};

struct DimensionReport {
    int upper_bound = 0;
    std::vector<int> free_coefficients;
};

// Positions above lambda whose shift by v0 is a gap of Lambda.
inline int lambda_gap_count(const ValueSet &lambda, int lam, int v0)
{
    return static_cast<int>(lambda.gaps_above(lam + v0).size());
}

inline DimensionReport dimension_report(const NormalFormResult &nf)
{
    if (!nf.lambda) {
        throw InputError("dimension_report: branch is in the monomial class");
    }
    DimensionReport rep;
    rep.upper_bound = lambda_gap_count(nf.lambda_set, *nf.lambda, nf.normal.v0());
    for (const auto &[e, a] : nf.normal.terms()) {
        if (e > *nf.lambda) {
            rep.free_coefficients.push_back(e);
        }
    }
    return rep;
}

namespace detail {

inline Recipe select_recipe(const PuiseuxParam &phi, int k, const std::optional<int> &lam, const ValueSet &lambda2,
                            const ValueSet &lambda_prime)
{
    const NumericalSemigroup &gamma = phi.semigroup();
    const int v0 = phi.v0();
    const int v1 = phi.v1();
    auto gamma_witness = [&](int value) {
        const ValueSet g = semigroup_of_values(phi);
        const auto it = g.function_witnesses.find(value);
        if (it == g.function_witnesses.end()) {
            throw InternalError("no function of value " + std::to_string(value));
        }
        return it->second;
    };
    auto form_witness = [&](ValueKind kind, int value) {
        const ValueSet set = lambda_set(phi, kind);
        const auto it = set.form_witnesses.find(value);
        if (it == set.form_witnesses.end()) {
            throw InternalError("no " + to_string(kind) + " witness of value " + std::to_string(value));
        }
        return it->second;
    };

    if (gamma.contains(k)) {
        return {RecipeKind::GammaTarget, gamma_witness(k), {}};
    }
    if (gamma.contains(k + v0 - v1)) {
        return {RecipeKind::GammaSource, gamma_witness(k + v0 - v1), {}};
    }
    if (lambda2.contains(k + v0)) {
        return {RecipeKind::Lambda2Flow, {}, form_witness(ValueKind::Lambda2, k + v0)};
    }
    const CharData &cd = phi.char_data();
    if (lam && cd.genus() >= 2 && cd.n[1] == 2 && k == v1 + *lam - v0) {
        const int m1 = cd.puiseux_pairs[0].second;
        DifferentialForm w{BiPoly::monomial(m1 - 1, 0, Rational(v1)), BiPoly::monomial(0, 1, Rational(-v0))};
        const ExtOrder v = value_of_differential(phi, w);
        if (!(v == ExtOrder::finite(k + v0))) {
            throw InternalError("n1 = 2 recipe: differential has value " + v.str() + ", expected "
                                + std::to_string(k + v0));
        }
        return {RecipeKind::DoubledPair, {}, w};
    }
    if (lambda_prime.contains(k + v0)) {
        return {RecipeKind::LambdaPrimeFlow, {}, form_witness(ValueKind::LambdaPrime, k + v0)};
    }
    throw InternalError("no recipe eliminates t^" + std::to_string(k) + " although " + std::to_string(k + v0)
                        + " is in Lambda");
}

} // namespace detail

// Scales y to leading coefficient 1.
inline std::pair<PuiseuxParam, Rational> normalize_input(const PuiseuxParam &phi)
{
    const Rational lead = phi.coeff(phi.v1());
    if (lead == Rational(1)) {
        return {phi, Rational(1)};
    }
    const Rational f = lead.inverse();
    return {phi.with_y(phi.y() * f), f};
}

// Removes, in increasing order, every term t^k (k > v1, k != lambda) with k + v0 in Lambda.
inline NormalFormResult to_normal_form(const PuiseuxParam &phi)
{
    auto [input, scale] = normalize_input(phi);
    ValueSet lambda = lambda_set(input, ValueKind::Lambda);
    const std::optional<int> lam = zariski_invariant(input, lambda);
    const ValueSet lambda2 = lambda_set(input, ValueKind::Lambda2);
    const ValueSet lambda_prime = lambda_set(input, ValueKind::LambdaPrime);
    const int v0 = input.v0();

    PuiseuxParam cur = input;
    std::vector<ChangeStep> log;
    for (int k = input.v1() + 1; k < input.working_prec(); ++k) {
        if (cur.coeff(k).is_zero()) {
            if (lam && k == *lam) {
                throw InternalError("coefficient at lambda vanished during reduction");
            }
            continue;
        }
        if ((lam && k == *lam) || !lambda.contains(k + v0)) {
            continue;
        }
        const Recipe recipe = detail::select_recipe(cur, k, lam, lambda2, lambda_prime);
        auto [next, ch] = eliminate_term(cur, k, recipe);
        log.push_back({recipe.kind, k, std::move(ch)});
        cur = std::move(next);
    }

    for (const auto &[e, a] : cur.terms()) {
        if (e > cur.v1() && (!lam || e != *lam) && lambda.contains(e + v0)) {
            throw InternalError("eliminable term t^" + std::to_string(e) + " survived the reduction");
        }
        if (e > cur.v1() && lam && e < *lam) {
            throw InternalError("term t^" + std::to_string(e) + " below lambda survived the reduction");
        }
    }
    const int bound = lam ? lambda_gap_count(lambda, *lam, v0) : 0;
    return NormalFormResult{std::move(input), scale, std::move(cur), lam, std::move(lambda), std::move(log), bound};
}

// Applies the recorded scaling and changes to the raw input.
inline PuiseuxParam replay(const PuiseuxParam &phi, const NormalFormResult &nf)
{
    PuiseuxParam cur = phi.with_y(phi.y() * nf.input_scale);
    for (const auto &step : nf.change_log) {
        cur = apply_coordinate_change(cur, step.change);
    }
    return cur;
}

} // namespace plane_branch

#endif
