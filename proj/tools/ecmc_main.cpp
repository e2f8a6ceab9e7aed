// Command-line front end: model checking, translations, dependency reports,
// team evaluation, randomized equivalence sweeps, and model generation.
//
// Exit codes: 0 success (a "false" verdict is still success), 1 a sweep
// found a counterexample, 2 I/O error, 3 parse error, 4 validation error,
// 5 expansion cap exceeded, 6 usage error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecmc/cod.hpp"
#include "ecmc/lexer.hpp"
#include "ecmc/model_io.hpp"
#include "ecmc/propcheck.hpp"
#include "ecmc/reduction.hpp"
#include "ecmc/semantics.hpp"

namespace {

using namespace ecmc;

// Ad-hoc signature for `translate` without a model file: variables are the
// identifiers compared or assigned in the text (plus dependence-atom
// arguments), each ranging over exactly the value labels it is mentioned
// with, in order of first appearance.  Variables seen without any value
// default to the binary range {0, 1}.  All variables are made exogenous;
// translations never consult the split.
SignaturePtr infer_signature(const std::string& text, bool team_mode) {
    std::vector<Token> toks = lex(text, team_mode ? LexMode::Team : LexMode::Modal);
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::string>> seen;
    auto touch = [&](const std::string& name) {
        if (!seen.count(name)) {
            seen[name] = {};
            order.push_back(name);
        }
    };
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i].kind != Tok::Ident) continue;
        if (team_mode && toks[i].text == "dep" && toks[i + 1].kind == Tok::LParen) {
            std::size_t j = i + 2;
            for (; j < toks.size() && toks[j].kind != Tok::RParen; ++j)
                if (toks[j].kind == Tok::Ident) touch(toks[j].text);
            i = j;
            continue;
        }
        Tok follow = toks[i + 1].kind;
        if (follow != Tok::Eq && follow != Tok::NotEq && follow != Tok::Assign) continue;
        touch(toks[i].text);
        if (i + 2 < toks.size() &&
            (toks[i + 2].kind == Tok::Ident || toks[i + 2].kind == Tok::Number)) {
            std::vector<std::string>& labels = seen[toks[i].text];
            if (std::find(labels.begin(), labels.end(), toks[i + 2].text) == labels.end())
                labels.push_back(toks[i + 2].text);
        }
    }
    if (order.empty())
        throw ValidationError(
            "cannot infer a signature from the formula; pass --model");
    std::map<std::string, std::vector<std::string>> ranges;
    for (const std::string& name : order) {
        std::vector<std::string> labels = seen[name];
        if (labels.empty()) labels = {"0", "1"};
        ranges[name] = std::move(labels);
    }
    return std::make_shared<const Signature>(order, std::vector<std::string>{}, ranges);
}

struct CheckOpts {
    std::string model_path;
    std::string formula;
    bool all_points = false;
    bool trace = false;
};

int cmd_check(const CheckOpts& o) {
    LoadedModel lm = load_model_file(o.model_path);
    PakcPtr f = parse_pakc(o.formula, *lm.sig);
    bool verdict = true;
    if (o.all_points) {
        EpistemicCausalModel m = make_epistemic(lm);
        for (const Valuation& a : m.team()) {
            PointedModel p(m, a);
            bool v;
            if (o.trace) {
                Trace t;
                v = eval(p, f, t);
                std::cout << "at " << a.to_string(*lm.sig) << ":\n" << format_trace(t);
            } else {
                v = eval(p, f);
            }
            verdict = verdict && v;
        }
    } else {
        PointedModel p = make_pointed(lm);
        if (o.trace) {
            Trace t;
            verdict = eval(p, f, t);
            std::cout << format_trace(t);
        } else {
            verdict = eval(p, f);
        }
    }
    std::cout << (verdict ? "true" : "false") << "\n";
    return 0;
}

struct TranslateOpts {
    std::string formula;
    std::string mode;
    std::string model_path;
};

int cmd_translate(const TranslateOpts& o) {
    bool team_source = o.mode.rfind("cod-", 0) == 0;
    SignaturePtr sig;
    if (!o.model_path.empty())
        sig = load_model_file(o.model_path, /*allow_empty_team=*/true).sig;
    else
        sig = infer_signature(o.formula, team_source);

    ExpansionCaps caps = caps_from_env();
    PakcPtr out;
    if (o.mode == "tr1") {
        out = tr1(parse_pakc(o.formula, *sig));
    } else if (o.mode == "tr2") {
        PakcPtr f = parse_pakc(o.formula, *sig);
        if (!within_fragment(f, Fragment::L1))
            throw ValidationError(
                "announcement elimination needs interventions over single atoms; "
                "this formula is " +
                std::string(fragment_name(classify(f))) + ", run tr1 or reduce first");
        out = tr2(f);
    } else if (o.mode == "reduce") {
        out = reduce(parse_pakc(o.formula, *sig));
    } else if (o.mode == "cod-e") {
        out = e_translate(parse_cod(o.formula, *sig), *sig);
    } else if (o.mode == "cod-tr") {
        out = tr_translate(parse_cod(o.formula, *sig), *sig, caps);
    } else if (o.mode == "cod-trstar") {
        out = tr_star_translate(parse_cod(o.formula, *sig), *sig, caps);
    } else {
        throw ValidationError("unknown translation mode: " + o.mode);
    }
    std::cout << print_pakc(out, *sig) << "\n";
    return 0;
}

struct DepsOpts {
    std::string model_path;
    bool verify_syntactic = false;
};

int cmd_deps(const DepsOpts& o) {
    // Parses without the recursivity gate so a cyclic model can be reported
    // with its cycle instead of a bare error.
    RawModelFile raw = parse_model_json(load_json_file(o.model_path));
    const Signature& sig = *raw.sig;
    if (auto cycle = find_cycle(raw.functions)) {
        std::string path;
        for (VarId v : *cycle) path += sig.var_name(v) + " -> ";
        path += sig.var_name(cycle->front());
        throw ValidationError("model is not recursive; cycle: " + path);
    }

    std::cout << "edges:\n";
    for (VarId z = sig.exo_count(); z < sig.var_count(); ++z)
        for (VarId x : parents(raw.functions, z))
            std::cout << "  " << sig.var_name(x) << " -> " << sig.var_name(z) << "\n";
    auto order = endogenous_order(raw.functions, /*lexicographic_names=*/true);
    std::cout << "order:";
    for (VarId v : *order) std::cout << " " << sig.var_name(v);
    std::cout << "\n";

    if (!o.verify_syntactic) return 0;

    LoadedModel lm = finalize_model(raw);
    EpistemicCausalModel m = make_epistemic(lm);
    ExpansionCaps caps = caps_from_env();
    PointedModel p(m, m.team().front());
    bool all_agree = true;
    for (VarId x = 0; x < sig.var_count(); ++x) {
        for (VarId z = 0; z < sig.var_count(); ++z) {
            if (x == z) continue;
            bool formula_verdict = eval(p, causes_formula(sig, x, z, caps));
            bool table_verdict = sig.is_endogenous(z) &&
                                 [&] {
                                     auto ps = parents(raw.functions, z);
                                     return std::find(ps.begin(), ps.end(), x) != ps.end();
                                 }();
            bool agree = formula_verdict == table_verdict;
            all_agree = all_agree && agree;
            std::cout << sig.var_name(x) << " ~> " << sig.var_name(z) << ": "
                      << (formula_verdict ? "true" : "false")
                      << (agree ? "" : "  DISAGREES WITH TABLES") << "\n";
        }
    }
    return all_agree ? 0 : 1;
}

struct TeamCheckOpts {
    std::string team_path;
    std::string formula;
    bool allow_empty = false;
};

int cmd_team_check(const TeamCheckOpts& o) {
    LoadedModel lm = load_model_file(o.team_path, o.allow_empty);
    CodPtr f = parse_cod(o.formula, *lm.sig);
    bool verdict = team_eval(make_causal_team(lm), f, caps_from_env());
    std::cout << (verdict ? "true" : "false") << "\n";
    return 0;
}

struct EquivOpts {
    std::string which;
    std::uint64_t seed = 0;
    std::uint64_t count = 0; // 0 means per-mode default
    int jobs = 1;
    int per_schema = 20;
    int min_vars = 0, max_vars = 0; // 0 means per-mode default
    int min_range = 0, max_range = 0;
    int max_team = 0;
    int max_depth = 0;
    int max_intervention = 2;
};

int cmd_equiv(const EquivOpts& o) {
    GeneratorConfig cfg;
    cfg.seed = o.seed;
    cfg.caps = caps_from_env();
    cfg.max_intervention = o.max_intervention;
    std::uint64_t count = o.count;

    CaseFn fn;
    std::string success;
    if (o.which == "reduction") {
        cfg.min_vars = 1, cfg.max_vars = 3, cfg.min_range = 1, cfg.max_range = 3;
        cfg.max_team = 8, cfg.max_depth = 5;
        if (count == 0) count = 500;
        fn = run_reduction_case;
    } else if (o.which == "global" || o.which == "local") {
        // Range 2 keeps the subset enumeration in the disjunction clause
        // comfortably inside the default caps.
        cfg.min_vars = 1, cfg.max_vars = 3, cfg.min_range = 1, cfg.max_range = 2;
        cfg.max_team = 8, cfg.max_depth = 4;
        if (count == 0) count = 200;
        fn = o.which == "global" ? run_global_case : run_local_case;
    } else if (o.which == "axioms") {
        cfg.min_vars = 2, cfg.max_vars = 3, cfg.min_range = 2, cfg.max_range = 3;
        cfg.max_team = 8, cfg.max_depth = 5;
        cfg.require_endogenous = true;
        if (count == 0) count = 100;
        int per = o.per_schema;
        fn = [per](const GeneratorConfig& c, std::uint64_t i) {
            return run_axioms_case(c, i, per);
        };
        success = "all instances valid";
    } else if (o.which == "downward") {
        cfg.min_vars = 1, cfg.max_vars = 3, cfg.min_range = 1, cfg.max_range = 3;
        cfg.max_team = 6, cfg.max_depth = 4;
        if (count == 0) count = 100;
        fn = run_downward_case;
    } else {
        throw ValidationError("unknown property sweep: " + o.which);
    }
    if (o.min_vars > 0) cfg.min_vars = o.min_vars;
    if (o.max_vars > 0) cfg.max_vars = o.max_vars;
    if (o.min_range > 0) cfg.min_range = o.min_range;
    if (o.max_range > 0) cfg.max_range = o.max_range;
    if (o.max_team > 0) cfg.max_team = o.max_team;
    if (o.max_depth > 0) cfg.max_depth = o.max_depth;

    RunSummary s = run_cases(cfg, count, o.jobs, fn);
    if (s.failed > 0) {
        std::cout << "counterexample found (" << s.failed << " failing case"
                  << (s.failed == 1 ? "" : "s") << ")\n"
                  << s.detail << "\n";
        return 1;
    }
    if (success.empty())
        std::cout << s.passed << "/" << s.passed << " equivalent";
    else
        std::cout << success << " (" << s.passed << " models)";
    if (s.skipped > 0) std::cout << " (" << s.skipped << " capped cases skipped)";
    std::cout << "\n";
    return 0;
}

struct GenOpts {
    std::uint64_t seed = 0;
    std::string out_path;
    bool team_file = false;
    int min_vars = 1, max_vars = 3;
    int min_range = 1, max_range = 3;
    int max_team = 8;
};

int cmd_gen(const GenOpts& o) {
    GeneratorConfig cfg;
    cfg.seed = o.seed;
    cfg.min_vars = o.min_vars, cfg.max_vars = o.max_vars;
    cfg.min_range = o.min_range, cfg.max_range = o.max_range;
    cfg.max_team = o.max_team;
    Rng rng = case_rng(cfg.seed, 0);
    EpistemicCausalModel m = generate_model(cfg, rng);
    std::optional<Valuation> actual;
    if (!o.team_file) actual = m.team().front();
    LoadedModel lm = to_loaded(m, std::move(actual));
    if (o.out_path.empty())
        std::cout << model_to_json(lm).dump(2) << "\n";
    else
        write_model_file(o.out_path, lm);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"model checker for causal reasoning under uncertainty"};
    app.require_subcommand(1);

    CheckOpts check;
    CLI::App* c = app.add_subcommand("check", "evaluate a formula on a model");
    c->add_option("model", check.model_path, "model file (JSON)")->required();
    c->add_option("formula", check.formula, "formula text")->required();
    c->add_flag("--all-points", check.all_points, "require truth at every team member");
    c->add_flag("--trace", check.trace, "print the evaluation tree");

    TranslateOpts tr;
    CLI::App* t = app.add_subcommand("translate", "rewrite a formula between fragments");
    t->add_option("formula", tr.formula, "formula text")->required();
    t->add_option("--mode", tr.mode, "tr1 | tr2 | reduce | cod-e | cod-tr | cod-trstar")
        ->required();
    t->add_option("--model", tr.model_path, "model file supplying the signature");

    DepsOpts deps;
    CLI::App* d = app.add_subcommand("deps", "report direct causal dependencies");
    d->add_option("model", deps.model_path, "model file (JSON)")->required();
    d->add_flag("--verify-syntactic", deps.verify_syntactic,
                "cross-check every pair against the defining formula");

    TeamCheckOpts tc;
    CLI::App* tk = app.add_subcommand("team-check", "evaluate a team formula");
    tk->add_option("team", tc.team_path, "team file (model JSON, actual ignored)")
        ->required();
    tk->add_option("formula", tc.formula, "formula text")->required();
    tk->add_flag("--allow-empty", tc.allow_empty, "accept an empty team");

    EquivOpts eq;
    CLI::App* e = app.add_subcommand("equiv", "randomized equivalence sweeps");
    e->add_option("--which", eq.which, "reduction | global | local | axioms | downward")
        ->required();
    e->add_option("--seed", eq.seed, "base seed (default 0)");
    e->add_option("--count", eq.count, "number of cases (default per sweep)");
    e->add_option("--jobs", eq.jobs, "worker threads")->check(CLI::Range(1, 256));
    e->add_option("--per-schema", eq.per_schema, "instances per schema (axioms)");
    e->add_option("--min-vars", eq.min_vars, "");
    e->add_option("--max-vars", eq.max_vars, "");
    e->add_option("--min-range", eq.min_range, "");
    e->add_option("--max-range", eq.max_range, "");
    e->add_option("--max-team", eq.max_team, "");
    e->add_option("--max-depth", eq.max_depth, "");
    e->add_option("--max-intervention", eq.max_intervention, "");

    GenOpts gen;
    CLI::App* g = app.add_subcommand("gen", "emit a random model file");
    g->add_option("--seed", gen.seed, "generator seed");
    g->add_option("--out", gen.out_path, "output path (default stdout)");
    g->add_flag("--team", gen.team_file, "omit the actual state (team file)");
    g->add_option("--min-vars", gen.min_vars, "");
    g->add_option("--max-vars", gen.max_vars, "");
    g->add_option("--min-range", gen.min_range, "");
    g->add_option("--max-range", gen.max_range, "");
    g->add_option("--max-team", gen.max_team, "");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 6;
    }

    try {
        if (c->parsed()) return cmd_check(check);
        if (t->parsed()) return cmd_translate(tr);
        if (d->parsed()) return cmd_deps(deps);
        if (tk->parsed()) return cmd_team_check(tc);
        if (e->parsed()) return cmd_equiv(eq);
        if (g->parsed()) return cmd_gen(gen);
        std::cerr << "error: no subcommand\n";
        return 6;
    } catch (const CapExceeded& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 5;
    } catch (const ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 70;
    }
}
