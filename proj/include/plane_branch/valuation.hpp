#ifndef PLANE_BRANCH_VALUATION_HPP
#define PLANE_BRANCH_VALUATION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <plane_branch/bipoly.hpp>
#include <plane_branch/branch.hpp>
#include <plane_branch/errors.hpp>
#include <plane_branch/series.hpp>

namespace plane_branch {

// omega = H dX + G dY.
struct DifferentialForm {
    BiPoly H;
    BiPoly G;

    [[nodiscard]] bool is_zero() const { return H.is_zero() && G.is_zero(); }
    friend bool operator==(const DifferentialForm &, const DifferentialForm &) = default;
};

enum class ValueKind { Gamma, Lambda, Lambda2, LambdaPrime };

inline std::string to_string(ValueKind k)
{
    switch (k) {
    case ValueKind::Gamma:
        return "gamma";
    case ValueKind::Lambda:
        return "lambda";
    case ValueKind::Lambda2:
        return "lambda2";
    case ValueKind::LambdaPrime:
        return "lambda_prime";
    }
    return "?";
}

// Whether omega lies in the submodule of Omega_2 associated with the kind.
inline bool satisfies_class(const DifferentialForm &w, ValueKind kind)
{
    switch (kind) {
    case ValueKind::Lambda:
        return true;
    case ValueKind::Lambda2:
        return w.H.in_maximal_ideal_squared() && w.G.in_maximal_ideal_squared();
    case ValueKind::LambdaPrime:
        return w.H.in_maximal_ideal_squared() && w.G.in_x2_y_ideal();
    case ValueKind::Gamma:
        break;
    }
    throw InternalError("satisfies_class: Gamma is a set of function values");
}

// Values attained by functions (Gamma) or by differentials of a class, decided up to `horizon`.
// Every value in [all_above, horizon] is attained, and so is every value beyond.
struct ValueSet {
    ValueKind kind = ValueKind::Lambda;
    std::vector<int> finite_part; // attained values below all_above
    int all_above = 0;
    int horizon = 0;
    std::map<int, BiPoly> function_witnesses;
    std::map<int, DifferentialForm> form_witnesses;

    [[nodiscard]] bool contains(int v) const
    {
        if (v >= all_above) {
            return true;
        }
        return std::binary_search(finite_part.begin(), finite_part.end(), v);
    }

    // Attained values in [lo, hi].
    [[nodiscard]] std::vector<int> members_between(int lo, int hi) const
    {
        std::vector<int> out;
        for (int v = lo; v <= hi; ++v) {
            if (contains(v)) {
                out.push_back(v);
            }
        }
        return out;
    }

    // Positive integers not attained (there are finitely many).
    [[nodiscard]] std::vector<int> gaps() const
    {
        std::vector<int> out;
        for (int v = 1; v < all_above; ++v) {
            if (!contains(v)) {
                out.push_back(v);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<int> gaps_above(int threshold) const
    {
        std::vector<int> out;
        for (int g : gaps()) {
            if (g > threshold) {
                out.push_back(g);
            }
        }
        return out;
    }

    friend bool operator==(const ValueSet &a, const ValueSet &b)
    {
        return a.kind == b.kind && a.finite_part == b.finite_part && a.all_above == b.all_above;
    }
};

namespace detail {

inline mpz_class lcm_z(const mpz_class &a, const mpz_class &b)
{
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class gcd_z(const mpz_class &a, const mpz_class &b)
{
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Factor turning the coefficients into coprime integers, keeping signs.
inline Rational primitive_factor(const std::vector<const Rational *> &coeffs)
{
    mpz_class den = 1;
    for (const Rational *c : coeffs) {
        den = lcm_z(den, c->denominator());
    }
    mpz_class g = 0;
    for (const Rational *c : coeffs) {
        g = gcd_z(g, mpz_class(c->numerator() * (den / c->denominator())));
    }
    if (g == 0) {
        return Rational(1);
    }
    return Rational(mpq_class(den, g));
}

inline BiPoly primitive(const BiPoly &p)
{
    std::vector<const Rational *> cs;
    for (const auto &[m, c] : p.terms()) {
        cs.push_back(&c);
    }
    return p * primitive_factor(cs);
}

inline DifferentialForm primitive(const DifferentialForm &w)
{
    std::vector<const Rational *> cs;
    for (const auto &[m, c] : w.H.terms()) {
        cs.push_back(&c);
    }
    for (const auto &[m, c] : w.G.terms()) {
        cs.push_back(&c);
    }
    const Rational f = primitive_factor(cs);
    return {w.H * f, w.G * f};
}

template <typename Payload>
struct EliminationRow {
    TSeries series;
    Payload payload;
};

inline void axpy(BiPoly &dst, const Rational &a, const BiPoly &src) { dst -= src * a; }
inline void axpy(DifferentialForm &dst, const Rational &a, const DifferentialForm &src)
{
    dst.H -= src.H * a;
    dst.G -= src.G * a;
}

// Leading-order Gaussian elimination: rows are reduced in the given order against the pivots
// collected so far. Returns pivot rows keyed by leading order (orders below the common precision).
template <typename Payload>
std::map<int, EliminationRow<Payload>> leading_order_echelon(std::vector<EliminationRow<Payload>> rows)
{
    std::map<int, EliminationRow<Payload>> pivots;
    for (auto &row : rows) {
        for (;;) {
            const int lo = row.series.low_index();
            if (lo >= row.series.prec()) {
                break;
            }
            const auto it = pivots.find(lo);
            if (it == pivots.end()) {
                pivots.emplace(lo, std::move(row));
                break;
            }
            const Rational f = row.series.coeff(lo) / it->second.series.coeff(lo);
            row.series = row.series - it->second.series * f;
            axpy(row.payload, f, it->second.payload);
        }
    }
    return pivots;
}

inline ValueSet finalize(ValueKind kind, const std::set<int> &attained, int horizon)
{
    ValueSet vs;
    vs.kind = kind;
    vs.horizon = horizon;
    int all_above = horizon + 1;
    while (all_above - 1 >= 1 && attained.count(all_above - 1) != 0) {
        --all_above;
    }
    vs.all_above = all_above;
    for (int v : attained) {
        if (v < all_above) {
            vs.finite_part.push_back(v);
        }
    }
    return vs;
}

} // namespace detail

inline ExtOrder value_of_function(const PuiseuxParam &phi, const BiPoly &h)
{
    return bipoly_pullback(h, phi).order();
}

// phi^*(H) x'(t) + phi^*(G) y'(t), known to the working precision minus one.
inline TSeries differential_pullback(const PuiseuxParam &phi, const DifferentialForm &w)
{
    const int prec = phi.working_prec() - 1;
    Pullback pb(phi, phi.working_prec());
    const TSeries dx = TSeries::monomial(phi.v0() - 1, Rational(phi.v0()), prec);
    const TSeries dy = phi.y().derivative();
    return TSeries::multiply(pb(w.H), dx, prec) + TSeries::multiply(pb(w.G), dy, prec);
}

// ord_t(phi^*(H) x' + phi^*(G) y') + 1.
inline ExtOrder value_of_differential(const PuiseuxParam &phi, const DifferentialForm &w)
{
    const TSeries s = differential_pullback(phi, w);
    const ExtOrder o = s.order();
    return o.is_finite() ? ExtOrder::finite(o.value() + 1) : ExtOrder::above_truncation(o.bound() + 1);
}

// Largest value decided exactly at the branch's working precision.
inline int value_horizon(const PuiseuxParam &phi) { return phi.working_prec() - 1; }

inline ValueSet semigroup_of_values(const PuiseuxParam &phi)
{
    const int horizon = value_horizon(phi);
    const int prec = phi.working_prec();
    Pullback pb(phi, prec);
    const int v0 = phi.v0();
    const int v1 = phi.v1();

    struct Gen {
        int value, a, b;
    };
    std::vector<Gen> gens;
    for (int b = 0; b * v1 <= horizon; ++b) {
        for (int a = 0; a * v0 + b * v1 <= horizon; ++a) {
            gens.push_back({a * v0 + b * v1, a, b});
        }
    }
    std::sort(gens.begin(), gens.end(),
              [](const Gen &l, const Gen &r) { return std::tie(l.value, l.a, l.b) < std::tie(r.value, r.a, r.b); });

    std::vector<detail::EliminationRow<BiPoly>> rows;
    rows.reserve(gens.size());
    for (const auto &g : gens) {
        rows.push_back({pb.monomial(g.a, g.b), BiPoly::monomial(g.a, g.b)});
    }
    const auto pivots = detail::leading_order_echelon(std::move(rows));

    std::set<int> attained;
    std::map<int, BiPoly> witnesses;
    for (const auto &[order, row] : pivots) {
        if (order <= horizon) {
            attained.insert(order);
            witnesses.emplace(order, detail::primitive(row.payload));
        }
    }
    ValueSet vs = detail::finalize(ValueKind::Gamma, attained, horizon);
    vs.function_witnesses = std::move(witnesses);
    return vs;
}

// Values of the differentials of a class, with one witness per attained value.
inline ValueSet lambda_set(const PuiseuxParam &phi, ValueKind kind)
{
    if (kind == ValueKind::Gamma) {
        return semigroup_of_values(phi);
    }
    const int horizon = value_horizon(phi);
    const int prec = phi.working_prec() - 1; // integrand precision: values up to prec decided
    const int v0 = phi.v0();
    const int v1 = phi.v1();
    Pullback pb(phi, phi.working_prec());
    const TSeries dy = phi.y().derivative();

    struct Gen {
        int value, a, b, component; // component 0: dX, 1: dY
    };
    auto admissible = [kind](int a, int b, int component) {
        switch (kind) {
        case ValueKind::Lambda2:
            return a + b >= 2;
        case ValueKind::LambdaPrime:
            return component == 0 ? a + b >= 2 : (a >= 2 || b >= 1);
        default:
            return true;
        }
    };
    std::vector<Gen> gens;
    for (int component = 0; component < 2; ++component) {
        const int shift = component == 0 ? v0 : v1;
        for (int b = 0; b * v1 + shift <= horizon; ++b) {
            for (int a = 0; a * v0 + b * v1 + shift <= horizon; ++a) {
                if (admissible(a, b, component)) {
                    gens.push_back({a * v0 + b * v1 + shift, a, b, component});
                }
            }
        }
    }
    std::sort(gens.begin(), gens.end(), [](const Gen &l, const Gen &r) {
        return std::tie(l.value, l.a, l.b, l.component) < std::tie(r.value, r.a, r.b, r.component);
    });

    std::vector<detail::EliminationRow<DifferentialForm>> rows;
    rows.reserve(gens.size());
    for (const auto &g : gens) {
        DifferentialForm w;
        TSeries s;
        if (g.component == 0) {
            w.H = BiPoly::monomial(g.a, g.b);
            s = pb.monomial(g.a, g.b).shifted(v0 - 1).truncated(prec) * Rational(v0);
        } else {
            w.G = BiPoly::monomial(g.a, g.b);
            s = TSeries::multiply(pb.monomial(g.a, g.b), dy, prec);
        }
        if (s.prec() < prec) {
            throw InternalError("lambda_set: generator pullback lost precision");
        }
        rows.push_back({s.truncated(prec), std::move(w)});
    }
    const auto pivots = detail::leading_order_echelon(std::move(rows));

    std::set<int> attained;
    std::map<int, DifferentialForm> witnesses;
    for (const auto &[order, row] : pivots) {
        if (order + 1 <= horizon) {
            attained.insert(order + 1);
            witnesses.emplace(order + 1, detail::primitive(row.payload));
        }
    }
    ValueSet vs = detail::finalize(kind, attained, horizon);
    vs.form_witnesses = std::move(witnesses);
    return vs;
}

// Lambda \ Gamma as a sorted list.
inline std::vector<int> lambda_minus_gamma(const ValueSet &lambda, const NumericalSemigroup &gamma)
{
    std::vector<int> out;
    for (int v : lambda.finite_part) {
        if (!gamma.contains(v)) {
            out.push_back(v);
        }
    }
    for (int v = lambda.all_above; v < gamma.conductor(); ++v) {
        if (!gamma.contains(v)) {
            out.push_back(v);
        }
    }
    return out;
}

// Zariski invariant min(Lambda \ Gamma) - v0; nullopt for the monomial class (Lambda \ Gamma empty).
inline std::optional<int> zariski_invariant(const PuiseuxParam &phi, const ValueSet &lambda)
{
    const auto diff = lambda_minus_gamma(lambda, phi.semigroup());
    if (diff.empty()) {
        return std::nullopt;
    }
    return diff.front() - phi.v0();
}

inline std::optional<int> zariski_invariant(const PuiseuxParam &phi)
{
    return zariski_invariant(phi, lambda_set(phi, ValueKind::Lambda));
}

// v(v0 X dY - v1 Y dX) - v0; meaningful for (t^v0, t^v1 + t^lambda + ...).
inline ExtOrder lambda_by_differential(const PuiseuxParam &phi)
{
    DifferentialForm w;
    w.G = BiPoly::monomial(1, 0, Rational(phi.v0()));
    w.H = BiPoly::monomial(0, 1, Rational(-phi.v1()));
    const ExtOrder v = value_of_differential(phi, w);
    return v.is_finite() ? ExtOrder::finite(v.value() - phi.v0()) : v;
}

// First exponent above v1 with a nonzero coefficient, if any below the working precision.
inline std::optional<int> first_term_after_leading(const PuiseuxParam &phi)
{
    for (int i = phi.v1() + 1; i < phi.y().prec(); ++i) {
        if (!phi.y().coeff(i).is_zero()) {
            return i;
        }
    }
    return std::nullopt;
}

struct SandwichReport {
    std::vector<int> s;                    // {v0, 2v0, v1, v0+v1, 2v1, v0+lambda}
    std::vector<int> lambda_minus_lambda2; // Lambda \ Lambda^(2), up to the horizon
    int extra_value = 0;                   // v1 + lambda
    std::vector<int> lower_violations;     // members of S that lie in Lambda^(2)
    std::map<int, DifferentialForm> lower_witnesses; // M^2 forms attaining them
    std::vector<int> upper_violations;     // members of Lambda \ Lambda^(2) outside S u {v1+lambda}
    bool top_equality = false;             // v1 + lambda in Lambda \ Lambda^(2) and not in S
    bool expect_top_equality = false;      // n1 = 2 and g >= 2

    [[nodiscard]] bool lower_holds() const { return lower_violations.empty(); }
    [[nodiscard]] bool upper_holds() const { return upper_violations.empty(); }
    [[nodiscard]] bool criterion_holds() const { return top_equality == expect_top_equality; }
};

// Compares S, Lambda \ Lambda^(2) and S u {v1+lambda}; the equality on the right is expected iff n1 = 2, g >= 2.
inline SandwichReport s_sandwich_check(const PuiseuxParam &phi)
{
    const ValueSet lam = lambda_set(phi, ValueKind::Lambda);
    const auto lambda = zariski_invariant(phi, lam);
    if (!lambda) {
        throw InputError("s_sandwich_check: branch is in the monomial class");
    }
    const ValueSet lam2 = lambda_set(phi, ValueKind::Lambda2);
    const int v0 = phi.v0();
    const int v1 = phi.v1();
    SandwichReport rep;
    rep.s = {v0, 2 * v0, v1, v0 + v1, 2 * v1, v0 + *lambda};
    std::sort(rep.s.begin(), rep.s.end());
    rep.s.erase(std::unique(rep.s.begin(), rep.s.end()), rep.s.end());
    rep.extra_value = v1 + *lambda;
    for (int v = 1; v <= lam.horizon; ++v) {
        if (lam.contains(v) && !lam2.contains(v)) {
            rep.lambda_minus_lambda2.push_back(v);
        }
    }
    const auto &d = rep.lambda_minus_lambda2;
    auto in = [](const std::vector<int> &v, int x) { return std::binary_search(v.begin(), v.end(), x); };
    for (int x : rep.s) {
        if (!in(d, x)) {
            rep.lower_violations.push_back(x);
            if (const auto it = lam2.form_witnesses.find(x); it != lam2.form_witnesses.end()) {
                rep.lower_witnesses.emplace(x, it->second);
            }
        }
    }
    for (int x : d) {
        if (!in(rep.s, x) && x != rep.extra_value) {
            rep.upper_violations.push_back(x);
        }
    }
    const CharData &cd = phi.char_data();
    rep.top_equality = in(d, rep.extra_value) && !in(rep.s, rep.extra_value);
    rep.expect_top_equality = cd.genus() >= 2 && cd.n[1] == 2;
    return rep;
}

} // namespace plane_branch

#endif
