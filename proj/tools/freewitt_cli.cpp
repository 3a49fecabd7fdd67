// Copyright 2026 The freewitt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// freewitt: evaluate measure expressions and run the checks from the shell.
//
//   freewitt eval 'boxplus(dirac(1), semicircle(0, 2))'
//   freewitt check-id 'mix(1/2, dirac(-1), dirac(1))'
//   freewitt germ 'fpoisson(1, -2)' --region interval
//   freewitt check-axioms --order 12 --cases 100 --seed 7

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "freewitt/eval.hpp"
#include "freewitt/witt.hpp"

namespace {

using nlohmann::json;
using namespace freewitt;

struct Settings {
    std::size_t order = default_order;
    std::string backend = "exact";
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string expr;
    std::string region = "uhp";
    std::size_t cases = 100;
};

std::string key_value_tsv(const json& j)
{
    std::string out;
    std::size_t width = 0;
    for (const auto& [k, v] : j.items()) {
        width = std::max(width, k.size());
    }
    for (const auto& [k, v] : j.items()) {
        out += k + std::string(width - k.size(), ' ') + '\t' + (v.is_string() ? v.get<std::string>() : v.dump())
               + '\n';
    }
    return out;
}

void emit(const Settings& s, const json& j, const std::string& tsv)
{
    if (s.format == "tsv") {
        std::cout << tsv;
    } else {
        std::cout << j.dump(2) << '\n';
    }
}

EvalOptions eval_options(const Settings& s)
{
    EvalOptions o;
    o.order = s.order;
    return o;
}

int run_eval(const Settings& s)
{
    ExprPtr e = parse(s.expr);
    json record;
    if (s.backend == "exact") {
        record = result_record(*e, evaluate<Rational>(*e, eval_options(s)));
    } else {
        record = result_record(*e, evaluate<double>(*e, eval_options(s)));
    }
    emit(s, record, record_to_tsv(record));
    return 0;
}

int run_check_id(const Settings& s)
{
    ExprPtr e = parse(s.expr);
    FreeCumulants<Rational> k = evaluate_free(*e, eval_options(s));
    json j = to_json(is_conditionally_pd(k));
    j["expr"] = print(*e);
    emit(s, j, key_value_tsv(j));
    return 0;
}

int run_levy(const Settings& s)
{
    ExprPtr e = parse(s.expr);
    FreeCumulants<Rational> k = evaluate_free(*e, eval_options(s));
    LevyRecovery rec = cumulants_to_levy_pair(k);
    json j{{"expr", print(*e)}, {"identified", rec.identified}};
    if (rec.exact) {
        j["pair"] = levy_pair_to_json(*rec.exact);
        j["pair_exact"] = true;
    } else if (rec.numeric) {
        j["pair"] = levy_pair_to_json(*rec.numeric);
        j["pair_exact"] = false;
    }
    if (!rec.reason.empty()) {
        j["reason"] = rec.reason;
    }
    emit(s, j, key_value_tsv(j));
    return 0;
}

int run_germ(const Settings& s)
{
    ExprPtr e = parse(s.expr);
    FreeCumulants<Rational> k = evaluate_free(*e, eval_options(s));
    LevyRecovery rec = cumulants_to_levy_pair(k);
    if (!rec.exact) {
        throw std::domain_error("germ: no exact finite Levy pair at order " + std::to_string(s.order)
                                + (rec.reason.empty() ? "" : " (" + rec.reason + ")"));
    }
    GermRegion region = s.region == "interval" ? GermRegion::interval : GermRegion::upper_halfplane;
    json j = to_json(germ_check(*rec.exact, region, eval_options(s).germ));
    j["expr"] = print(*e);
    emit(s, j, key_value_tsv(j));
    return 0;
}

int run_check_axioms(const Settings& s)
{
    AxiomReport r = check_omega_e_axioms(s.order, s.cases, s.seed);
    json j = to_json(r);
    std::string tsv = "axiom_id\tcases\tfailures\tstatement\n";
    for (const auto& a : r.axioms) {
        tsv += a.axiom_id + '\t' + std::to_string(a.cases) + '\t' + std::to_string(a.failures.size()) + '\t'
               + a.statement + '\n';
    }
    emit(s, j, tsv);
    return r.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact computations with freely infinitely divisible measures"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--order", s.order, "truncation order N")->check(CLI::Range(1, 64))->capture_default_str();
    app.add_option("--backend", s.backend, "arithmetic backend")
        ->check(CLI::IsMember({"exact", "float"}))
        ->capture_default_str();
    app.add_option("--seed", s.seed, "random seed")->capture_default_str();
    app.add_option("--format", s.format, "output format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();

    std::map<std::string, int (*)(const Settings&)> handlers = {
        {"eval", run_eval},   {"check-id", run_check_id},         {"levy", run_levy},
        {"germ", run_germ},   {"check-axioms", run_check_axioms},
    };
    auto* eval = app.add_subcommand("eval", "evaluate an expression: cumulants, moments, certificate");
    eval->add_option("EXPR", s.expr, "measure expression")->required();
    auto* check_id = app.add_subcommand("check-id", "certify or refute free infinite divisibility");
    check_id->add_option("EXPR", s.expr, "measure expression")->required();
    auto* levy = app.add_subcommand("levy", "recover the Levy-Khintchine pair (gamma, rho)");
    levy->add_option("EXPR", s.expr, "measure expression")->required();
    auto* germ = app.add_subcommand("germ", "sample the analyticity conditions of the R-transform");
    germ->add_option("EXPR", s.expr, "measure expression")->required();
    germ->add_option("--region", s.region, "uhp or interval")
        ->check(CLI::IsMember({"uhp", "interval"}))
        ->capture_default_str();
    auto* axioms = app.add_subcommand("check-axioms", "randomized exact check of the algebraic laws");
    axioms->add_option("--cases", s.cases, "number of random cases")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return handlers.at(name)(s);
    } catch (const std::exception& e) {
        std::cerr << "freewitt " << name << ": " << e.what() << '\n';
        return 1;
    }
}
