#ifndef PLANE_BRANCH_REPRODUCE_HPP
#define PLANE_BRANCH_REPRODUCE_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <plane_branch/coordinate_change.hpp>
#include <plane_branch/equivalence.hpp>
#include <plane_branch/json_io.hpp>
#include <plane_branch/normal_form.hpp>
#include <plane_branch/random_change.hpp>
#include <plane_branch/valuation.hpp>

namespace plane_branch {

struct ReproRow {
    std::string label;
    nlohmann::json sample;
    nlohmann::json expected;
    nlohmann::json computed;
    bool pass = false;
};

struct ReproReport {
    std::string id;
    std::vector<ReproRow> rows;

    [[nodiscard]] int passed_count() const
    {
        int n = 0;
        for (const auto &r : rows) {
            n += r.pass ? 1 : 0;
        }
        return n;
    }
    [[nodiscard]] bool passed() const { return passed_count() == static_cast<int>(rows.size()); }

    [[nodiscard]] nlohmann::json to_json() const
    {
        nlohmann::json rs = nlohmann::json::array();
        for (const auto &r : rows) {
            rs.push_back({{"label", r.label},
                          {"sample", r.sample},
                          {"expected", r.expected},
                          {"computed", r.computed},
                          {"pass", r.pass}});
        }
        return {{"example", id}, {"rows", rs}, {"passed", passed_count()}, {"total", rows.size()}};
    }
};

inline nlohmann::json load_samples(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open sample file " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw InputError("sample file " + path + ": " + e.what());
    }
}

namespace detail {

inline Rational sample_value(const nlohmann::json &row, const std::string &key)
{
    if (!row.contains(key)) {
        throw InputError("sample row lacks coefficient " + key);
    }
    return json_io::rational_from_json(row.at(key));
}

inline std::vector<int> support_above(const PuiseuxParam &phi, int above)
{
    std::vector<int> out;
    for (const auto &[e, a] : phi.terms()) {
        if (e > above) {
            out.push_back(e);
        }
    }
    return out;
}

inline Rational quadratic_condition(const Rational &a11) { return (Rational(13) + Rational(9) * a11 * a11) / Rational(8); }

inline Rational cubic_condition(const Rational &a11)
{
    return Rational(39, 10) * a11 + Rational(27, 20) * a11.pow(3);
}

inline Rational b_condition(const Rational &a11, const Rational &a19)
{
    return Rational(11, 4) * a11 * a19 - Rational(357, 512) - Rational(47399, 2560) * a11.pow(2)
           - Rational(10097, 320) * a11.pow(4) - Rational(17523, 1280) * a11.pow(6)
           - Rational(2187, 1280) * a11.pow(8);
}

struct TableRow {
    std::map<int, Rational> terms;
    std::vector<int> expected;
    bool condition_holds;
};

inline TableRow seven_eight_row(int row, const nlohmann::json &s)
{
    auto v = [&](const std::string &k) { return sample_value(s, k); };
    using R = Rational;
    switch (row) {
    case 1: {
        const R a11 = v("a11");
        return {{{8, 1}, {10, 1}, {11, a11}, {12, v("a12")}, {13, v("a13")}, {20, v("a20")}},
                {17, 25, 26, 33, 34, 41},
                v("a12") != quadratic_condition(a11)};
    }
    case 2: {
        const R a11 = v("a11");
        return {{{8, 1}, {10, 1}, {11, a11}, {12, quadratic_condition(a11)}, {13, v("a13")}, {19, v("a19")}},
                {17, 25, 27, 33, 34, 41},
                v("a13") != cubic_condition(a11)};
    }
    case 3: {
        const R a11 = v("a11");
        return {{{8, 1},
                 {10, 1},
                 {11, a11},
                 {12, quadratic_condition(a11)},
                 {13, cubic_condition(a11)},
                 {19, v("a19")},
                 {20, v("a20")}},
                {17, 25, 33, 34, 41},
                v("a20") != b_condition(a11, v("a19"))};
    }
    case 4: {
        const R a11 = v("a11");
        return {{{8, 1},
                 {10, 1},
                 {11, a11},
                 {12, quadratic_condition(a11)},
                 {13, cubic_condition(a11)},
                 {19, v("a19")},
                 {20, b_condition(a11, v("a19"))},
                 {27, v("a27")}},
                {17, 25, 33, 41},
                true};
    }
    case 5:
        return {{{8, 1}, {11, 1}, {12, v("a12")}, {13, v("a13")}, {20, v("a20")}}, {18, 25, 26, 33, 34, 41}, true};
    case 6:
        return {{{8, 1}, {12, 1}, {13, v("a13")}, {18, v("a18")}}, {19, 26, 27, 33, 34, 41}, true};
    case 7:
        return {{{8, 1}, {13, 1}, {18, v("a18")}, {19, v("a19")}, {26, v("a26")}},
                {20, 27, 33, 34, 41},
                v("a18") != Rational(-1, 2)};
    case 8:
        return {{{8, 1}, {13, 1}, {18, Rational(-1, 2)}, {19, v("a19")}, {26, v("a26")}}, {20, 27, 34, 41}, true};
    case 9: {
        const R a19 = v("a19");
        return {{{8, 1}, {18, 1}, {19, a19}, {20, v("a20")}, {27, v("a27")}},
                {25, 33, 34, 41},
                v("a20") != Rational(121, 120) * a19 * a19};
    }
    case 10: {
        const R a19 = v("a19");
        return {{{8, 1}, {18, 1}, {19, a19}, {20, Rational(121, 120) * a19 * a19}, {27, v("a27")}},
                {25, 33, 41},
                true};
    }
    case 11:
        return {{{8, 1}, {19, 1}, {20, v("a20")}}, {26, 33, 34, 41}, true};
    case 12:
        return {{{8, 1}, {20, 1}, {26, v("a26")}}, {27, 34, 41}, true};
    case 13:
        return {{{8, 1}, {26, 1}, {27, v("a27")}}, {33, 41}, true};
    case 14:
        return {{{8, 1}, {27, 1}}, {34, 41}, true};
    case 15:
        return {{{8, 1}, {34, 1}}, {41}, true};
    case 16:
        return {{{8, 1}}, {}, true};
    default:
        throw InputError("no row " + std::to_string(row));
    }
}

inline std::map<int, Rational> six_nine_row(int row, const nlohmann::json &s)
{
    auto v = [&](const std::string &k) { return sample_value(s, k); };
    std::map<int, Rational> t{{9, 1}, {10, 1}, {14, v("b1")}, {17, v("b2")}};
    switch (row) {
    case 1:
        t[11] = v("b");
        break;
    case 2:
        t[11] = Rational(29, 18);
        t[23] = v("b3");
        break;
    case 3:
        t[11] = Rational(-1, 2);
        t[20] = v("b3");
        break;
    case 4:
        t[11] = Rational(-1, 2);
        t[20] = v("b3");
        t[26] = v("b4");
        break;
    default:
        throw InputError("no row " + std::to_string(row));
    }
    std::erase_if(t, [](const auto &kv) { return kv.second.is_zero(); });
    return t;
}

inline Rational six_nine_a(const Rational &b1, const Rational &b2)
{
    return Rational(14) + Rational(769, 2) * b1 - Rational(532) * b2 - Rational(576) * b1 * b1;
}

inline bool six_nine_condition(int row, const nlohmann::json &s)
{
    const Rational b1 = sample_value(s, "b1");
    const Rational b2 = sample_value(s, "b2");
    switch (row) {
    case 1: {
        const Rational b = sample_value(s, "b");
        return b != Rational(-1, 2) && b != Rational(29, 18);
    }
    case 2:
        return true;
    case 3:
        return !six_nine_a(b1, b2).is_zero();
    case 4:
        return six_nine_a(b1, b2).is_zero();
    default:
        return false;
    }
}

inline bool is_fixed_point(const PuiseuxParam &phi)
{
    const NormalFormResult nf = to_normal_form(phi);
    return nf.change_log.empty() && nf.normal == phi;
}

// Listed exponents above lambda that the support law forbids (k + v0 in Lambda).
inline std::vector<int> support_conflicts(const PuiseuxParam &phi, const ValueSet &lambda)
{
    std::vector<int> out;
    const std::optional<int> lam = zariski_invariant(phi, lambda);
    if (!lam) {
        return out;
    }
    for (const auto &[e, a] : phi.terms()) {
        if (e > *lam && lambda.contains(e + phi.v0())) {
            out.push_back(e);
        }
    }
    return out;
}

// The reduction keeps every listed term except the conflicting ones, bit for bit.
inline bool reduces_to_listed_support(const PuiseuxParam &phi, const std::vector<int> &conflicts)
{
    const NormalFormResult nf = to_normal_form(phi);
    std::map<int, Rational> expected = phi.terms();
    for (int e : conflicts) {
        expected.erase(e);
    }
    return nf.normal.terms() == expected;
}

} // namespace detail

// Lambda \ Gamma for every row of the <7, 8> table, at the pinned samples.
inline ReproReport reproduce_seven_eight(const nlohmann::json &samples)
{
    ReproReport rep{"7.2", {}};
    const nlohmann::json &s = samples.at("7.2");
    for (int row = 1; row <= 16; ++row) {
        const std::string key = "row" + std::to_string(row);
        const detail::TableRow tr = detail::seven_eight_row(row, s.at(key));
        const PuiseuxParam phi = PuiseuxParam::from_terms(7, tr.terms);
        const ValueSet lam = lambda_set(phi, ValueKind::Lambda);
        const std::vector<int> got = lambda_minus_gamma(lam, phi.semigroup());
        const std::vector<int> conflicts = detail::support_conflicts(phi, lam);
        const bool reduces = detail::reduces_to_listed_support(phi, conflicts);
        ReproRow r;
        r.label = key;
        r.sample = {{"branch", json_io::branch_to_json(phi)}, {"condition_holds", tr.condition_holds}};
        r.expected = {{"lambda_minus_gamma", tr.expected}, {"conductor", 42}};
        r.computed = {{"lambda_minus_gamma", got},
                      {"conductor", phi.conductor()},
                      {"fixed_point", conflicts.empty() && reduces},
                      {"support_conflict", conflicts},
                      {"reduces_to_listed_support", reduces}};
        r.pass = tr.condition_holds && got == tr.expected && phi.conductor() == 42 && reduces;
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

// The four strata of <6, 9, 19>: each pinned form is a fixed point and a changed copy returns to its support.
inline ReproReport reproduce_six_nine(const nlohmann::json &samples)
{
    ReproReport rep{"7.1", {}};
    const nlohmann::json &s = samples.at("7.1");
    const auto seed = samples.at("seed").get<std::uint64_t>();
    for (int row = 1; row <= 4; ++row) {
        const std::string key = "row" + std::to_string(row);
        const PuiseuxParam phi = PuiseuxParam::from_terms(6, detail::six_nine_row(row, s.at(key)));
        const bool condition = detail::six_nine_condition(row, s.at(key));
        const bool fixed = detail::is_fixed_point(phi);
        const std::vector<int> support = detail::support_above(phi, phi.v1());

        RandomChangeSource rng(seed + static_cast<std::uint64_t>(row));
        const PuiseuxParam moved = apply_coordinate_change(phi, rng.next(phi));
        const NormalFormResult nf = to_normal_form(moved);
        const std::vector<int> reduced = detail::support_above(nf.normal, nf.normal.v1());
        const bool homothetic = homothety_solve(phi.terms(), nf.normal.terms(), phi.v1()).has_value();

        ReproRow r;
        r.label = key;
        r.sample = {{"branch", json_io::branch_to_json(phi)}, {"condition_holds", condition}};
        r.expected = {{"support", support}, {"fixed_point", true}};
        r.computed = {{"fixed_point", fixed},
                      {"moved_term_count", detail::support_above(moved, moved.v1()).size()},
                      {"reduced_support", reduced},
                      {"homothetic_to_pinned", homothetic},
                      {"lambda", nf.lambda ? nlohmann::json(*nf.lambda) : nlohmann::json(nullptr)}};
        r.pass = condition && fixed && reduced == support && homothetic;
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

struct CounterexampleData {
    PuiseuxParam original;
    PuiseuxParam image;     // computed sigma o phi o rho^{-1}
    PuiseuxParam displayed; // the image as displayed: same jet, t^20 coefficient replaced
    CoordChange change;
    Rational a13, a20, b1;
};

// The explicit change on (t^7, t^8 + t^10 + t^11 + 11/4 t^12 + a13 t^13 + a20 t^20).
inline CounterexampleData counterexample_change(const Rational &a13, const Rational &a20, const Rational &b1,
                                                const Rational &b5)
{
    using R = Rational;
    if (a13 == R(21, 4)) {
        throw InputError("counterexample: a13 must differ from 21/4");
    }
    const R b4 = R(1, 1120)
                 * (R(-2720) * a13 * b1 * b1 + R(557690) * a13 * b1 - R(277200) * b1 * a13 * a13
                    + R(16800) * b1 * a13.pow(3) + R(26880) * a13 * b5 + R(2459289) * b1 - R(141120) * b5
                    + R(14280) * b1 * b1 + R(2688) * b1 * a20)
                 / (R(4) * a13 - R(21));
    // b2 = k2 - 2/3 b3, b3 = k3 - 40 b8, b8 = k8 + 2/7 b2
    const R k2 = R(4, 7) * b1 * b1 - R(227, 6) * b1 + R(199, 24) * a13 * b1 - R(8, 3) * b5;
    const R k3 = R(6) * b4 - R(45, 2) * b1 * a13 * a13 + R(9565, 16) * b1 + R(72, 7) * b1 * b1
                 + R(4297, 16) * a13 * b1;
    const R k8 = R(-52, 7) * b1 + R(8, 7) * b4 - R(81, 28) * a13 * b1 + R(18, 49) * b1 * b1;
    const R b8 = (k8 + R(2, 7) * k2 - R(4, 21) * k3) / (R(1) - R(160, 21));
    const R b3 = k3 - R(40) * b8;
    const R b2 = k2 - R(2, 3) * b3;
    const R b6 = R(-25, 4) * b1 - R(29, 28) * a13 * b1 + R(8, 7) * b2 + R(4, 49) * b1 * b1;
    const R b7 = R(-3, 2) * a13 * b1 + R(8, 7) * b3 - R(641, 56) * b1 - R(12, 49) * b1 * b1;

    CoordChange ch;
    ch.p = BiPoly::monomial(2, 0, b1) + BiPoly::monomial(1, 1, R(-3, 2) * b1) + BiPoly::monomial(0, 2, R(-1, 4) * b1)
           + BiPoly::monomial(3, 0, b2) + BiPoly::monomial(2, 1, b3) + BiPoly::monomial(1, 2, b4)
           + BiPoly::monomial(0, 3, b5);
    ch.q = BiPoly::monomial(1, 1, R(8, 7) * b1) + BiPoly::monomial(0, 2, R(-12, 7) * b1)
           + BiPoly::monomial(3, 0, R(-135, 28) * b1 - R(15, 14) * a13 * b1) + BiPoly::monomial(2, 1, b6)
           + BiPoly::monomial(1, 2, b7) + BiPoly::monomial(0, 3, b8);

    std::map<int, Rational> terms{{8, 1}, {10, 1}, {11, 1}, {12, R(11, 4)}, {13, a13}, {20, a20}};
    const PuiseuxParam phi = PuiseuxParam::from_terms(7, terms);
    const PuiseuxParam image = apply_coordinate_change(phi, ch);
    terms[20] = a20 + R(5) * b1 * (R(3, 4) - a13 / R(7));
    std::erase_if(terms, [](const auto &kv) { return kv.second.is_zero(); });
    return {phi, image, PuiseuxParam::from_terms(7, terms), ch, a13, a20, b1};
}

inline ReproReport reproduce_counterexample(const nlohmann::json &samples)
{
    const nlohmann::json &s = samples.at("zariski-counterexample");
    const CounterexampleData d = counterexample_change(detail::sample_value(s, "a13"), detail::sample_value(s, "a20"),
                                                       detail::sample_value(s, "b1"), detail::sample_value(s, "b5"));
    ReproReport rep{"zariski-counterexample", {}};

    // Jet through t^20 equals the displayed one; every later term is removable (k + v0 in Lambda).
    const ValueSet lam = lambda_set(d.original, ValueKind::Lambda);
    bool jet_ok = true;
    std::vector<int> tail;
    for (int i = 0; i < d.image.working_prec(); ++i) {
        if (i <= 20) {
            jet_ok = jet_ok && d.image.coeff(i) == d.displayed.coeff(i);
        } else if (!d.image.coeff(i).is_zero()) {
            tail.push_back(i);
            jet_ok = jet_ok && lam.contains(i + d.image.v0());
        }
    }
    ReproRow jet;
    jet.label = "t20_coefficient";
    jet.sample = {{"a13", d.a13.str()}, {"a20", d.a20.str()}, {"b1", d.b1.str()}, {"change", json_io::to_json(d.change)}};
    jet.expected = {{"a20_new", d.displayed.coeff(20).str()}};
    jet.computed = {{"a20_new", d.image.coeff(20).str()}, {"removable_tail", tail}};
    jet.pass = jet_ok;
    rep.rows.push_back(std::move(jet));

    const EquivVerdict v_disp = decide_equivalence(d.original, d.displayed);
    const EquivVerdict v_img = decide_equivalence(d.original, d.image);
    const auto raw = homothety_solve(d.original.terms(), d.displayed.terms(), d.original.v1());
    ReproRow eq;
    eq.label = "equivalent_not_homothetic";
    eq.sample = {{"original", json_io::branch_to_json(d.original)}, {"displayed", json_io::branch_to_json(d.displayed)}};
    eq.expected = {{"verdict", "equivalent"}, {"raw_homothety", nullptr}};
    eq.computed = {{"verdict", to_string(v_disp.outcome)},
                   {"verdict_full_image", to_string(v_img.outcome)},
                   {"raw_homothety", raw ? nlohmann::json(raw->w.str()) : nlohmann::json(nullptr)}};
    eq.pass = v_disp.outcome == EquivOutcome::Equivalent && v_img.outcome == EquivOutcome::Equivalent && !raw;
    rep.rows.push_back(std::move(eq));
    return rep;
}

inline ReproReport reproduce(const std::string &id, const nlohmann::json &samples)
{
    if (id == "7.2") {
        return reproduce_seven_eight(samples);
    }
    if (id == "7.1") {
        return reproduce_six_nine(samples);
    }
    if (id == "zariski-counterexample") {
        return reproduce_counterexample(samples);
    }
    throw InputError("unknown example '" + id + "' (expected 7.1, 7.2 or zariski-counterexample)");
}

} // namespace plane_branch

#endif
