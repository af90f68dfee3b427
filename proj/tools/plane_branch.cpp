// Command-line front end: semigroup, lambda, normalform, equiv, reproduce.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <plane_branch/equivalence.hpp>
#include <plane_branch/json_io.hpp>
#include <plane_branch/normal_form.hpp>
#include <plane_branch/reproduce.hpp>
#include <plane_branch/semigroup.hpp>
#include <plane_branch/valuation.hpp>

#ifndef PLANE_BRANCH_DEFAULT_SAMPLES
#define PLANE_BRANCH_DEFAULT_SAMPLES "data/repro_samples.json"
#endif

namespace {

using nlohmann::json;
using namespace plane_branch;

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

std::vector<int> parse_int_list(const std::string &text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw InputError("bad integer '" + item + "'");
            }
        } catch (const std::logic_error &) {
            throw InputError("bad integer '" + item + "'");
        }
    }
    if (out.empty()) {
        throw InputError("empty integer list");
    }
    return out;
}

// Accepts inline JSON or a path to a JSON file.
json read_json_arg(const std::string &arg)
{
    std::string text = arg;
    if (!arg.empty() && arg.front() != '{' && arg.front() != '[') {
        std::ifstream in(arg);
        if (!in) {
            throw InputError("cannot read '" + arg + "'");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

ValueKind parse_class(const std::string &name)
{
    if (name == "lambda") {
        return ValueKind::Lambda;
    }
    if (name == "lambda2") {
        return ValueKind::Lambda2;
    }
    if (name == "lambda_prime") {
        return ValueKind::LambdaPrime;
    }
    throw InputError("unknown class '" + name + "'");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Analytic invariants and normal forms of plane branches"};
    app.require_subcommand(1);
    bool pretty = false;
    int trunc_extra = 0;
    app.add_flag("--pretty", pretty, "Indent JSON output");
    app.add_option("--trunc-extra", trunc_extra, "Extra series precision beyond c + 2 v0 + 1")->check(CLI::NonNegativeNumber);

    auto *sg = app.add_subcommand("semigroup", "Conductor, gaps and characteristic exponents");
    std::string generators;
    std::string beta;
    auto *gen_opt = sg->add_option("--generators", generators, "Comma-separated generators");
    sg->add_option("--beta", beta, "Comma-separated characteristic exponents")->excludes(gen_opt);

    auto *lam = app.add_subcommand("lambda", "Values of differentials and the Zariski invariant");
    std::string lam_branch;
    std::string lam_class = "lambda";
    lam->add_option("--branch", lam_branch, "Branch JSON (inline or file)")->required();
    lam->add_option("--class", lam_class, "lambda | lambda2 | lambda_prime");

    auto *nfc = app.add_subcommand("normalform", "Reduce a branch to normal form");
    std::string nf_branch;
    nfc->add_option("--branch", nf_branch, "Branch JSON (inline or file)")->required();

    auto *eq = app.add_subcommand("equiv", "Decide analytic equivalence of two branches");
    std::string eq_a;
    std::string eq_b;
    eq->add_option("--a", eq_a, "First branch JSON")->required();
    eq->add_option("--b", eq_b, "Second branch JSON")->required();

    auto *rep = app.add_subcommand("reproduce", "Reproduce a worked example");
    std::string example;
    std::string seed_file = PLANE_BRANCH_DEFAULT_SAMPLES;
    rep->add_option("example", example, "7.1 | 7.2 | zariski-counterexample")->required();
    rep->add_option("--seed-file", seed_file, "Sample coefficient file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    auto emit = [&](const json &j) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; };
    try {
        if (sg->parsed()) {
            if (generators.empty() && beta.empty()) {
                throw InputError("semigroup: give --generators or --beta");
            }
            if (!beta.empty()) {
                auto [s, cd] = generators_from_char_exponents(parse_int_list(beta));
                emit(json_io::semigroup_report(s));
            } else {
                emit(json_io::semigroup_report(NumericalSemigroup::from_generators(parse_int_list(generators))));
            }
        } else if (lam->parsed()) {
            const ValueKind kind = parse_class(lam_class);
            emit(json_io::lambda_report(json_io::branch_from_json(read_json_arg(lam_branch), trunc_extra), kind));
        } else if (nfc->parsed()) {
            const PuiseuxParam phi = json_io::branch_from_json(read_json_arg(nf_branch), trunc_extra);
            emit(json_io::normal_form_report(to_normal_form(phi)));
        } else if (eq->parsed()) {
            const PuiseuxParam a = json_io::branch_from_json(read_json_arg(eq_a), trunc_extra);
            const PuiseuxParam b = json_io::branch_from_json(read_json_arg(eq_b), trunc_extra);
            emit(json_io::verdict_to_json(decide_equivalence(a, b)));
        } else if (rep->parsed()) {
            const ReproReport report = reproduce(example, load_samples(seed_file));
            emit(report.to_json());
            if (!report.passed()) {
                std::cerr << example << ": " << report.passed_count() << "/" << report.rows.size() << " rows pass\n";
                return kExitMismatch;
            }
        }
    } catch (const InputError &e) {
        emit(json{{"error", e.what()}});
        return kExitInput;
    } catch (const json::exception &e) {
        emit(json{{"error", e.what()}});
        return kExitInput;
    } catch (const InternalError &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return 0;
}
