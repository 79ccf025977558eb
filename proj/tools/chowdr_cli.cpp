// chowdr: evaluate cycle-class expressions, run double-ramification
// formulas and execute the verification suites over finite Chow-ring
// models. Exit codes: 0 success, 1 verification failure, 2 parse or
// validation error, 3 evaluation error, 4 precondition violation.

#include "chowdr/chowdr.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifdef _WIN32
#else
#include <unistd.h>
#endif

namespace {

using json = nlohmann::ordered_json;
using namespace chowdr;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_parse = 2;
constexpr int exit_eval = 3;
constexpr int exit_precondition = 4;

bool color_enabled()
{
    if (const char* env = std::getenv("CHOWDR_COLOR")) {
        std::string v = env;
        if (v == "0" || v == "off" || v == "false" || v == "never")
            return false;
        if (v == "1" || v == "on" || v == "true" || v == "always")
            return true;
    }
#ifdef _WIN32
    return false;
#else
    return isatty(fileno(stdout)) != 0;
#endif
}

std::string paint(const std::string& s, const char* code)
{
    static const bool on = color_enabled();
    if (!on)
        return s;
    return std::string("\033[") + code + "m" + s + "\033[0m";
}

std::string green(const std::string& s) { return paint(s, "32"); }
std::string red(const std::string& s) { return paint(s, "31"); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw validation_error("cannot read model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Class terms in canonical order: codimension, then basis name.
json class_to_json(const GradedClass& x)
{
    json terms = json::array();
    std::vector<std::pair<std::pair<int, std::string>, Rational>> parts;
    for (const auto& [k, c] : x.terms())
        parts.push_back({{k.codim, x.ring()->basis_name(k)}, c});
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, c] : parts)
        terms.push_back({{"codim", key.first}, {"basis", key.second}, {"coeff", to_string(c)}});
    return json{{"kind", "class"},
                {"ring", x.ring()->name()},
                {"terms", terms},
                {"text", to_string(x)}};
}

json suite_to_json(const SuiteReport& rep)
{
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"id", c.id},
                          {"statement", c.statement},
                          {"pass", c.pass},
                          {"expected", c.expected},
                          {"actual", c.actual}});
    return json{{"suite", rep.suite},
                {"checks", checks},
                {"passed", rep.passed()},
                {"failed", rep.failed()},
                {"status", rep.ok() ? "pass" : "fail"}};
}

int classify_error(const std::exception& e)
{
    if (dynamic_cast<const not_abelian_family*>(&e) || dynamic_cast<const not_a_curve_family*>(&e)
        || dynamic_cast<const invalid_rank*>(&e) || dynamic_cast<const invalid_genus*>(&e)
        || dynamic_cast<const not_positive_integer*>(&e))
        return exit_precondition;
    if (dynamic_cast<const syntax_error*>(&e) || dynamic_cast<const validation_error*>(&e)
        || dynamic_cast<const forward_reference*>(&e) || dynamic_cast<const unknown_model*>(&e))
        return exit_parse;
    if (dynamic_cast<const error*>(&e))
        return exit_eval; // unbound names, ring mismatches, evaluation faults
    return exit_eval;
}

int cmd_eval(const std::string& model_path, const std::string& expression, bool as_json)
{
    Registry reg = parse_model_file(read_file(model_path));
    ExprPtr ast = parse_expression(expression);
    EvalEnv env = environment(reg);
    EvalResult result = eval(ast, env);
    if (std::holds_alternative<Rational>(result)) {
        const Rational& q = std::get<Rational>(result);
        if (as_json)
            std::cout << json{{"kind", "rational"}, {"value", to_string(q)}}.dump() << "\n";
        else
            std::cout << to_string(q) << "\n";
    } else {
        const GradedClass& x = std::get<GradedClass>(result);
        if (as_json)
            std::cout << class_to_json(x).dump() << "\n";
        else
            std::cout << to_string(x) << "\n";
    }
    return exit_ok;
}

int cmd_dr(const std::string& model_path, const std::string& family_name,
           const std::string& formula, std::optional<long long> d_flag, bool as_json)
{
    Registry reg = parse_model_file(read_file(model_path));
    const FamilyModel& fam = reg.family(family_name);

    DrResult result;
    if (formula == "main") {
        Integer d;
        if (d_flag)
            d = *d_flag;
        else if (fam.rank)
            d = *fam.rank;
        else
            throw invalid_rank("family '" + family_name
                               + "' declares no rank; pass one with -d");
        result = dr_main(fam, d);
    } else if (formula == "abelian") {
        result = dr_abelian(fam);
    } else if (formula == "hain") {
        result = dr_hain(fam);
    } else if (formula == "albanese") {
        if (!fam.abelian_fibers)
            throw not_abelian_family("the Albanese route needs an abelian family; '"
                                     + family_name + "' is not flagged abelian");
        result = dr_albanese(fam.total, fam.proj, fam.cL, fam.g);
    } else {
        throw validation_error("unknown formula '" + formula
                               + "' (expected main, abelian, hain or albanese)");
    }

    if (as_json) {
        json out{{"formula", result.formula_used},
                 {"family", family_name},
                 {"models", result.model_names},
                 {"n", result.n},
                 {"g", result.g}};
        out["d"] = result.d ? json(result.d->str()) : json(nullptr);
        out["value"] = class_to_json(result.value);
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "family:  " << family_name << " (" << result.model_names << ")\n";
        std::cout << "formula: " << result.formula_used << "  n=" << result.n
                  << "  g=" << result.g;
        if (result.d)
            std::cout << "  d=" << result.d->str();
        std::cout << "\n";
        std::cout << "DR class: " << to_string(result.value) << "\n";
    }
    return exit_ok;
}

int cmd_verify(const std::string& suite, bool as_json)
{
    SuiteReport rep = run_suite(suite);
    if (as_json) {
        std::cout << suite_to_json(rep).dump() << "\n";
    } else {
        for (const auto& c : rep.checks) {
            std::cout << (c.pass ? green("[PASS]") : red("[FAIL]")) << " " << c.id << "  "
                      << c.statement << "\n";
            if (!c.pass)
                std::cout << "       expected: " << c.expected << "\n       actual:   "
                          << c.actual << "\n";
        }
        std::cout << rep.suite << ": " << rep.passed() << "/" << rep.checks.size()
                  << " checks passed in " << rep.duration_ms << " ms\n";
    }
    return rep.ok() ? exit_ok : exit_verify_failed;
}

int cmd_models_list(bool as_json)
{
    const Registry& reg = library().registry;
    if (as_json) {
        json rings = json::array();
        for (const auto& [name, ring] : reg.rings)
            rings.push_back({{"name", name}, {"dimension", ring->dimension()}});
        json morphisms = json::array();
        for (const auto& [name, m] : reg.morphisms)
            morphisms.push_back({{"name", name},
                                 {"source", m->source()->name()},
                                 {"target", m->target()->name()},
                                 {"rel_dim", m->rel_dim()}});
        json families = json::array();
        for (const auto& [name, f] : reg.families)
            families.push_back({{"name", name},
                                {"total", f.total->name()},
                                {"base", f.base->name()},
                                {"n", f.n},
                                {"g", f.g}});
        json classes = json::array();
        for (const auto& [name, c] : reg.classes)
            classes.push_back({{"name", name}, {"ring", c.ring()->name()}});
        std::cout << json{{"rings", rings},
                          {"morphisms", morphisms},
                          {"families", families},
                          {"classes", classes}}
                         .dump()
                  << "\n";
        return exit_ok;
    }
    std::cout << "rings:\n";
    for (const auto& [name, ring] : reg.rings)
        std::cout << "  " << name << " (dimension " << ring->dimension() << ")\n";
    std::cout << "morphisms:\n";
    for (const auto& [name, m] : reg.morphisms)
        std::cout << "  " << name << ": " << m->source()->name() << " -> "
                  << m->target()->name() << " (rel_dim " << m->rel_dim() << ")\n";
    std::cout << "families:\n";
    for (const auto& [name, f] : reg.families)
        std::cout << "  " << name << ": " << f.total->name() << " over " << f.base->name()
                  << " (n=" << f.n << ", g=" << f.g << ")\n";
    std::cout << "classes:\n";
    for (const auto& [name, c] : reg.classes)
        std::cout << "  " << name << " on " << c.ring()->name() << " = " << to_string(c)
                  << "\n";
    return exit_ok;
}

std::string lincomb_text(const GradedClass& x) { return to_string(x); }

int cmd_models_describe(const std::string& name, bool as_json)
{
    const Registry& reg = library().registry;
    auto rit = reg.rings.find(name);
    if (rit != reg.rings.end()) {
        const RingPtr& ring = rit->second;
        json basis = json::array();
        for (int c = 0; c <= ring->dimension(); ++c) {
            json row = json::array();
            for (const auto& sym : ring->basis(c))
                row.push_back(sym);
            basis.push_back(row);
        }
        json products = json::array();
        for (int a = 0; a < ring->total_basis(); ++a)
            for (int b = a; b < ring->total_basis(); ++b) {
                BasisKey ka = ring->key_of(a), kb = ring->key_of(b);
                if (ka.codim == 0 || kb.codim == 0
                    || ka.codim + kb.codim > ring->dimension())
                    continue;
                GradedClass v(ring);
                for (const auto& [flat, coeff] : ring->product(a, b))
                    v.accumulate(ring->key_of(flat), coeff);
                products.push_back({{"lhs", ring->basis_name(ka)},
                                    {"rhs", ring->basis_name(kb)},
                                    {"value", lincomb_text(v)}});
            }
        json morphisms = json::array();
        for (const auto& [mname, m] : reg.morphisms)
            if (m->source() == ring || m->target() == ring)
                morphisms.push_back({{"name", mname},
                                     {"source", m->source()->name()},
                                     {"target", m->target()->name()},
                                     {"rel_dim", m->rel_dim()}});
        if (as_json) {
            std::cout << json{{"kind", "ring"},
                              {"name", name},
                              {"dimension", ring->dimension()},
                              {"basis", basis},
                              {"point",
                               ring->point_class()
                                   ? json(ring->basis_name(*ring->point_class()))
                                   : json(nullptr)},
                              {"products", products},
                              {"morphisms", morphisms}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "ring " << name << " (dimension " << ring->dimension() << ")\n";
            for (int c = 0; c <= ring->dimension(); ++c) {
                std::cout << "  codim " << c << ": {";
                for (size_t i = 0; i < ring->basis(c).size(); ++i)
                    std::cout << (i ? ", " : "") << ring->basis(c)[i];
                std::cout << "}\n";
            }
            if (ring->point_class())
                std::cout << "  point: " << ring->basis_name(*ring->point_class()) << "\n";
            std::cout << "  products:\n";
            for (const auto& p : products)
                std::cout << "    " << p["lhs"].get<std::string>() << " * "
                          << p["rhs"].get<std::string>() << " = "
                          << p["value"].get<std::string>() << "\n";
            std::cout << "  morphisms:\n";
            for (const auto& m : morphisms)
                std::cout << "    " << m["name"].get<std::string>() << ": "
                          << m["source"].get<std::string>() << " -> "
                          << m["target"].get<std::string>() << " (rel_dim "
                          << m["rel_dim"].get<int>() << ")\n";
        }
        return exit_ok;
    }
    auto fit = reg.families.find(name);
    if (fit != reg.families.end()) {
        const FamilyModel& f = fit->second;
        json out{{"kind", "family"},
                 {"name", name},
                 {"total", f.total->name()},
                 {"base", f.base->name()},
                 {"proj", f.proj->name()},
                 {"n", f.n},
                 {"g", f.g},
                 {"cL", to_string(f.cL)},
                 {"cF", to_string(f.cF)},
                 {"fiber", f.fiber ? json(f.fiber->name()) : json(nullptr)},
                 {"abelian", f.abelian_fibers}};
        out["d"] = f.rank ? json(f.rank->str()) : json(nullptr);
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "family " << name << "\n";
            std::cout << "  total: " << f.total->name() << "\n  base:  " << f.base->name()
                      << "\n  proj:  " << f.proj->name() << "\n  n = " << f.n
                      << ", g = " << f.g << (f.abelian_fibers ? " (abelian fibers)" : "")
                      << "\n";
            std::cout << "  cL = " << to_string(f.cL) << "\n  cF = " << to_string(f.cF) << "\n";
            if (f.rank)
                std::cout << "  d = " << f.rank->str() << "\n";
        }
        return exit_ok;
    }
    auto mit = reg.morphisms.find(name);
    if (mit != reg.morphisms.end()) {
        const MorphPtr& m = mit->second;
        json pull = json::array(), push = json::array();
        for (int t = 0; t < m->target()->total_basis(); ++t)
            pull.push_back({{"symbol", m->target()->basis_name(m->target()->key_of(t))},
                            {"value", to_string(m->pull_basis(t))}});
        for (int sdx = 0; sdx < m->source()->total_basis(); ++sdx)
            push.push_back({{"symbol", m->source()->basis_name(m->source()->key_of(sdx))},
                            {"value", to_string(m->push_basis(sdx))}});
        json out{{"kind", "morphism"},
                 {"name", name},
                 {"source", m->source()->name()},
                 {"target", m->target()->name()},
                 {"rel_dim", m->rel_dim()},
                 {"pull", pull},
                 {"push", push}};
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "morphism " << name << ": " << m->source()->name() << " -> "
                      << m->target()->name() << " (rel_dim " << m->rel_dim() << ")\n";
            for (const auto& p : pull)
                std::cout << "  pull " << p["symbol"].get<std::string>() << " = "
                          << p["value"].get<std::string>() << "\n";
            for (const auto& p : push)
                std::cout << "  push " << p["symbol"].get<std::string>() << " = "
                          << p["value"].get<std::string>() << "\n";
        }
        return exit_ok;
    }
    throw unknown_model("no built-in model, family or morphism named '" + name + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"symbolic intersection-theory engine for double ramification cycles"};
    app.require_subcommand(1);

    std::string model_path, expression, family, formula = "main", suite = "all";
    std::string describe_name;
    long long d_value = 0;
    bool json_eval = false, json_dr = false, json_verify = false, json_models = false;

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a cycle-class expression");
    eval_cmd->add_option("-m,--model", model_path, "model file")->required();
    eval_cmd->add_option("-e,--expr", expression, "expression text")->required();
    eval_cmd->add_flag("--json", json_eval, "machine-readable output");

    CLI::App* dr_cmd = app.add_subcommand("dr", "compute a double ramification class");
    dr_cmd->add_option("-m,--model", model_path, "model file")->required();
    dr_cmd->add_option("-f,--family", family, "family name")->required();
    dr_cmd->add_option("--formula", formula, "main | abelian | hain | albanese");
    CLI::Option* d_opt = dr_cmd->add_option("-d,--rank", d_value, "polarization rank");
    dr_cmd->add_flag("--json", json_dr, "machine-readable output");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", suite,
                           "all | ring | geometry | fourier | poincare | dr | product | "
                           "scaling");
    verify_cmd->add_flag("--json", json_verify, "machine-readable output");

    CLI::App* models_cmd = app.add_subcommand("models", "inspect the built-in catalog");
    CLI::App* list_cmd = models_cmd->add_subcommand("list", "list built-in models");
    list_cmd->add_flag("--json", json_models, "machine-readable output");
    CLI::App* describe_cmd = models_cmd->add_subcommand("describe", "describe one entry");
    describe_cmd->add_option("name", describe_name, "ring, family or morphism name")
        ->required();
    describe_cmd->add_flag("--json", json_models, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_parse;
    }

    try {
        if (eval_cmd->parsed())
            return cmd_eval(model_path, expression, json_eval);
        if (dr_cmd->parsed())
            return cmd_dr(model_path, family, formula,
                          d_opt->count() ? std::optional<long long>(d_value) : std::nullopt,
                          json_dr);
        if (verify_cmd->parsed())
            return cmd_verify(suite, json_verify);
        if (models_cmd->parsed()) {
            if (describe_cmd->parsed())
                return cmd_models_describe(describe_name, json_models);
            return cmd_models_list(json_models);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e);
    }
    return exit_parse;
}
