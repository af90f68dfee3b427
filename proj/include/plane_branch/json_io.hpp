#ifndef PLANE_BRANCH_JSON_IO_HPP
#define PLANE_BRANCH_JSON_IO_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include <plane_branch/bipoly.hpp>
#include <plane_branch/branch.hpp>
#include <plane_branch/coordinate_change.hpp>
#include <plane_branch/equivalence.hpp>
#include <plane_branch/errors.hpp>
#include <plane_branch/normal_form.hpp>
#include <plane_branch/semigroup.hpp>
#include <plane_branch/valuation.hpp>

namespace plane_branch::json_io {

using nlohmann::json;

inline Rational rational_from_json(const json &j)
{
    if (j.is_string()) {
        return Rational::parse(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    throw InputError("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

inline json to_json(const Rational &r) { return r.str(); }

inline json terms_to_json(const std::map<int, Rational> &terms)
{
    json out = json::array();
    for (const auto &[e, a] : terms) {
        out.push_back({e, a.str()});
    }
    return out;
}

inline json to_json(const BiPoly &p)
{
    json out = json::array();
    for (const auto &[m, c] : p.terms()) {
        out.push_back({m.x, m.y, c.str()});
    }
    return out;
}

inline BiPoly bipoly_from_json(const json &j)
{
    if (!j.is_array()) {
        throw InputError("polynomial must be an array of [degX, degY, coeff]");
    }
    BiPoly p;
    for (const auto &t : j) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer()) {
            throw InputError("bad polynomial term " + t.dump());
        }
        const int dx = t[0].get<int>();
        const int dy = t[1].get<int>();
        if (dx < 0 || dy < 0) {
            throw InputError("negative degree in polynomial term " + t.dump());
        }
        p.add_term({dx, dy}, rational_from_json(t[2]));
    }
    return p;
}

inline json to_json(const DifferentialForm &w) { return {{"dX", to_json(w.H)}, {"dY", to_json(w.G)}}; }

inline json to_json(const CoordChange &ch) { return {{"r", ch.r.str()}, {"p", to_json(ch.p)}, {"q", to_json(ch.q)}}; }

inline CoordChange change_from_json(const json &j)
{
    CoordChange ch;
    if (j.contains("r")) {
        ch.r = rational_from_json(j.at("r"));
    }
    if (j.contains("p")) {
        ch.p = bipoly_from_json(j.at("p"));
    }
    if (j.contains("q")) {
        ch.q = bipoly_from_json(j.at("q"));
    }
    return ch;
}

inline json branch_to_json(const PuiseuxParam &phi) { return {{"v0", phi.v0()}, {"terms", terms_to_json(phi.terms())}}; }

// {"v0": 7, "terms": [[8, "1"], [10, "1"]], "label": "..."}
inline PuiseuxParam branch_from_json(const json &j, int trunc_extra = 0)
{
    if (!j.is_object() || !j.contains("v0") || !j.contains("terms")) {
        throw InputError("branch must be an object with \"v0\" and \"terms\"");
    }
    if (!j.at("v0").is_number_integer()) {
        throw InputError("\"v0\" must be an integer");
    }
    std::map<int, Rational> terms;
    for (const auto &t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) {
            throw InputError("bad term " + t.dump() + ", expected [exponent, \"p/q\"]");
        }
        const int e = t[0].get<int>();
        if (e < 0) {
            throw InputError("negative exponent " + std::to_string(e));
        }
        const Rational a = rational_from_json(t[1]);
        if (terms.count(e) != 0) {
            throw InputError("repeated exponent " + std::to_string(e));
        }
        terms.emplace(e, a);
    }
    return PuiseuxParam::from_terms(j.at("v0").get<int>(), terms, trunc_extra);
}

inline json semigroup_report(const NumericalSemigroup &s)
{
    json out{{"generators", s.generators()}, {"conductor", s.conductor()}, {"gaps", s.gaps()}};
    if (const Diagnostic d = validate_plane_branch_semigroup(s.generators()); d) {
        const CharData cd = char_exponents_from_generators(s);
        json pairs = json::array();
        for (const auto &[n, m] : cd.puiseux_pairs) {
            pairs.push_back({n, m});
        }
        out["valid_plane_branch"] = true;
        out["beta"] = cd.beta;
        out["puiseux_pairs"] = pairs;
        out["genus"] = cd.genus();
    } else {
        out["valid_plane_branch"] = false;
        out["diagnostic"] = d.message;
    }
    return out;
}

inline json value_set_to_json(const ValueSet &vs)
{
    json out{{"class", to_string(vs.kind)},
             {"finite_part", vs.finite_part},
             {"all_above", vs.all_above},
             {"horizon", vs.horizon}};
    return out;
}

inline json lambda_report(const PuiseuxParam &phi, ValueKind kind)
{
    const ValueSet lam = lambda_set(phi, ValueKind::Lambda);
    const auto z = zariski_invariant(phi, lam);
    const ValueSet chosen = kind == ValueKind::Lambda ? lam : lambda_set(phi, kind);
    json witnesses = json::object();
    for (const auto &[v, w] : chosen.form_witnesses) {
        if (v < chosen.all_above) {
            witnesses[std::to_string(v)] = to_json(w);
        }
    }
    json out{{"gamma", phi.semigroup().generators()},
             {"conductor", phi.conductor()},
             {"lambda_minus_gamma", lambda_minus_gamma(lam, phi.semigroup())},
             {"zariski_lambda", z ? json(*z) : json(nullptr)},
             {"values", value_set_to_json(chosen)},
             {"witnesses", witnesses}};
    return out;
}

inline json normal_form_report(const NormalFormResult &nf)
{
    json changes = json::array();
    for (const auto &step : nf.change_log) {
        json c = to_json(step.change);
        c["recipe"] = to_string(step.kind);
        c["exponent"] = step.exponent;
        changes.push_back(c);
    }
    json out{{"normal", branch_to_json(nf.normal)},
             {"lambda", nf.lambda ? json(*nf.lambda) : json(nullptr)},
             {"lambda_minus_gamma", lambda_minus_gamma(nf.lambda_set, nf.normal.semigroup())},
             {"input_scale", nf.input_scale.str()},
             {"changes", changes}};
    if (nf.lambda) {
        const DimensionReport d = dimension_report(nf);
        out["dimension_bound"] = d.upper_bound;
        out["free_coefficients"] = d.free_coefficients;
    } else {
        out["dimension_bound"] = 0;
        out["free_coefficients"] = json::array();
    }
    return out;
}

inline json verdict_to_json(const EquivVerdict &v)
{
    json out{{"verdict", to_string(v.outcome)}, {"reason", to_string(v.reason)}};
    if (v.homothety) {
        out["homothety"] = {{"g", v.homothety->g}, {"w", v.homothety->w.str()}};
    } else {
        out["homothety"] = nullptr;
    }
    return out;
}

} // namespace plane_branch::json_io

#endif
