#ifndef PLANE_BRANCH_COORDINATE_CHANGE_HPP
#define PLANE_BRANCH_COORDINATE_CHANGE_HPP

#include <string>

#include <plane_branch/bipoly.hpp>
#include <plane_branch/branch.hpp>
#include <plane_branch/errors.hpp>
#include <plane_branch/series.hpp>
#include <plane_branch/valuation.hpp>

namespace plane_branch {

// sigma(X, Y) = (r^v0 X + p, r^v1 Y + q) with v(p) > v0 and v(q) > v1.
struct CoordChange {
    Rational r{1};
    BiPoly p;
    BiPoly q;

    static CoordChange identity() { return {}; }
    friend bool operator==(const CoordChange &, const CoordChange &) = default;
};

namespace detail {

// y_1 with sigma o (t^v0, y) o rho^{-1} = (t_1^v0, y_1(t_1)); y is known to y.prec().
inline TSeries transform_y(int v0, int v1, const TSeries &y, const CoordChange &ch)
{
    if (ch.r.is_zero()) {
        throw InputError("coordinate change: r must be nonzero");
    }
    const int prec = y.prec();
    Pullback pb(v0, y, prec);
    const TSeries p_t = pb(ch.p);
    const TSeries q_t = pb(ch.q);
    const ExtOrder op = p_t.order();
    const ExtOrder oq = q_t.order();
    if (op.is_finite() && op.value() <= v0) {
        throw InputError("coordinate change: v(p) = " + op.str() + " must exceed v0 = " + std::to_string(v0));
    }
    if (oq.is_finite() && oq.value() <= v1) {
        throw InputError("coordinate change: v(q) = " + oq.str() + " must exceed v1 = " + std::to_string(v1));
    }

    const TSeries y_tilde = y * ch.r.pow(v1) + q_t;
    TSeries rho_inv;
    if (ch.p.is_zero()) {
        rho_inv = TSeries::monomial(1, ch.r.inverse(), prec);
    } else {
        // rho(t) = r t (1 + p(t) / (r^v0 t^v0))^(1/v0)
        TSeries w = (p_t * ch.r.pow(-v0)).shifted(-v0);
        if (w.prec() == 0) {
            throw InternalError("coordinate change: series too short for the reparametrization");
        }
        w.set_coeff(0, w.coeff(0) + Rational(1));
        const TSeries rho = series_root_unit(w, v0).shifted(1) * ch.r;
        rho_inv = series_reversion(rho);
    }
    return series_compose(y_tilde, rho_inv).truncated(prec);
}

} // namespace detail

inline PuiseuxParam apply_coordinate_change(const PuiseuxParam &phi, const CoordChange &ch)
{
    const TSeries y1 = detail::transform_y(phi.v0(), phi.v1(), phi.y(), ch);
    if (y1.prec() < phi.working_prec()) {
        throw InternalError("coordinate change lost precision: " + std::to_string(y1.prec()) + " < "
                            + std::to_string(phi.working_prec()));
    }
    if (y1.coeff(phi.v1()) != Rational(1) || y1.low_index() != phi.v1()) {
        throw InternalError("coordinate change altered the leading term of y");
    }
    return phi.with_y(y1);
}

// Homothety (r^v0 X, r^v1 Y): a_i -> r^(v1 - i) a_i.
inline CoordChange homothety(const Rational &r) { return {r, {}, {}}; }

// Time-one map of s * eta, eta = -G d/dX + H d/dY, as a change (1, p, q).
// Requires G in <X^2, Y> and H in M^2, so each application of eta raises the weight 2a + 3b;
// monomials of weight >= ceil(3 prec / v0) have value >= prec and are dropped.
inline CoordChange flow_change(const DifferentialForm &w, const Rational &s, int v0, int prec)
{
    if (!w.G.in_x2_y_ideal() || !w.H.in_maximal_ideal_squared()) {
        throw InternalError("flow_change: vector field is not in the admissible Lie algebra");
    }
    const int max_weight = (3 * prec + v0 - 1) / v0;
    auto light = [max_weight](const Monomial &m) { return 2 * m.x + 3 * m.y < max_weight; };
    const BiPoly g = w.G * s;
    const BiPoly h = w.H * s;
    auto eta = [&](const BiPoly &f) { return (h * f.partial_y() - g * f.partial_x()).filtered(light); };

    auto lie_series = [&](const BiPoly &f) {
        BiPoly sum;
        BiPoly term = f;
        for (int n = 1;; ++n) {
            term = eta(term) * Rational(1, n);
            if (term.is_zero()) {
                break;
            }
            sum += term;
        }
        return sum;
    };
    return {Rational(1), lie_series(BiPoly::X()), lie_series(BiPoly::Y())};
}

} // namespace plane_branch

#endif
