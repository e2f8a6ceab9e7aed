// End-to-end acceptance gate.  Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any requested criterion fails.  Run a
// single criterion with --criterion N, everything with no arguments.
#include <chrono>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "ecmc/cod.hpp"
#include "ecmc/enumerate.hpp"
#include "ecmc/generators.hpp"
#include "ecmc/model_io.hpp"
#include "ecmc/propcheck.hpp"
#include "ecmc/reduction.hpp"
#include "ecmc/semantics.hpp"

#include "test_util.hpp"

using namespace ecmc;

namespace {

struct Criterion {
    int number;
    std::string description;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

// ---------------------------------------------------------------------------
// 1. The two-switch circuit, end to end through the real binary.

bool circuit_reproduction(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    std::string model = testutil::models_dir() + "/circuit.json";
    struct Expect {
        const char* formula;
        const char* verdict;
    };
    for (const Expect& e : {Expect{"[B:=1] S=1", "true\n"},
                            Expect{"K [B:=1] S=1", "false\n"},
                            Expect{"[B:=1] K S=1", "false\n"}}) {
        testutil::CliResult r =
            testutil::run_cli("check " + model + " \"" + e.formula + "\"");
        if (r.exit_code != 0 || r.out != e.verdict) {
            detail = std::string("'") + e.formula + "' returned exit " +
                     std::to_string(r.exit_code) + ", output \"" + r.out + "\"";
            return false;
        }
    }

    EpistemicCausalModel m = testutil::circuit_model();
    auto b1 = InterventionAssignment::checked({{0, 1}}, m.signature());
    EpistemicCausalModel after = intervene_team(m, b1);
    std::vector<Valuation> expected{Valuation({1, 0, 0}), Valuation({1, 1, 1})};
    if (after.team() != expected) {
        detail = "intervened team differs from {(B=1,C=0,S=0), (B=1,C=1,S=1)}";
        return false;
    }

    double elapsed = seconds_since(start);
    if (elapsed >= 1.0) {
        detail = "took " + std::to_string(elapsed) + " s (budget 1 s)";
        return false;
    }
    detail = "3 verdicts, intervened team, " + std::to_string(elapsed) + " s";
    return true;
}

// ---------------------------------------------------------------------------
// 2. Every axiom schema valid on 100 random models, 20 instances each.

bool axiom_soundness(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    GeneratorConfig cfg;
    cfg.seed = 2026;
    cfg.min_vars = 2;
    cfg.max_vars = 3;
    cfg.min_range = 2;
    cfg.max_range = 3;
    cfg.max_team = 8;
    cfg.require_exogenous = true;
    cfg.require_endogenous = true;
    const int per_schema = 20;
    RunSummary s = run_cases(cfg, 100, 4, [&](const GeneratorConfig& c, std::uint64_t i) {
        return run_axioms_case(c, i, per_schema);
    });
    double elapsed = seconds_since(start);
    if (s.failed != 0 || s.skipped != 0) {
        detail = std::to_string(s.failed) + " failed / " + std::to_string(s.skipped) +
                 " skipped; first failure: " + s.detail;
        return false;
    }
    if (elapsed >= 120.0) {
        detail = "took " + std::to_string(elapsed) + " s (budget 120 s)";
        return false;
    }
    detail = "100 models x 18 schemas x " + std::to_string(per_schema) +
             " instances, " + std::to_string(elapsed) + " s";
    return true;
}

// ---------------------------------------------------------------------------
// 3. Reduction preserves truth everywhere and lands in the right fragments.

bool reduction_correctness(std::string& detail) {
    GeneratorConfig cfg;
    cfg.seed = 2027;
    cfg.max_vars = 3;
    cfg.max_range = 3;
    cfg.max_team = 8;
    cfg.max_depth = 5;
    RunSummary s = run_cases(cfg, 500, 4, run_reduction_case);
    if (s.failed != 0) {
        detail = std::to_string(s.failed) + " of 500 failed; first: " + s.detail;
        return false;
    }
    detail = std::to_string(s.passed) + "/500 cases, " + std::to_string(s.skipped) +
             " skipped";
    return s.passed + s.skipped == 500;
}

// ---------------------------------------------------------------------------
// 4 and 5. Correspondence between team satisfaction and the translations.
// Binary ranges keep the disjunction clause's subset enumeration inside the
// default caps, so no case is skipped.

GeneratorConfig correspondence_config(std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.max_vars = 3;
    cfg.min_range = 1;
    cfg.max_range = 2;
    cfg.max_team = 8;
    cfg.max_depth = 4;
    return cfg;
}

bool global_translation(std::string& detail) {
    RunSummary s = run_cases(correspondence_config(2028), 200, 4, run_global_case);
    if (s.failed != 0) {
        detail = std::to_string(s.failed) + " of 200 failed; first: " + s.detail;
        return false;
    }
    if (s.skipped != 0) {
        detail = std::to_string(s.skipped) + " cases skipped by caps";
        return false;
    }
    detail = "200/200 cases";
    return true;
}

bool local_translation(std::string& detail) {
    RunSummary s = run_cases(correspondence_config(2029), 200, 4, run_local_case);
    if (s.failed != 0) {
        detail = std::to_string(s.failed) + " of 200 failed; first: " + s.detail;
        return false;
    }
    if (s.skipped != 0) {
        detail = std::to_string(s.skipped) + " cases skipped by caps";
        return false;
    }
    detail = "200/200 cases";
    return true;
}

// ---------------------------------------------------------------------------
// 6. The defining formula of direct causation agrees with table parenthood
// on every binary model with up to three variables, enumerated exhaustively.

bool enumerate_direct_cause_agreement(std::string& detail) {
    std::uint64_t models = 0;
    std::uint64_t checks = 0;
    ExpansionCaps caps;

    for (int total = 2; total <= 3; ++total) {
        for (int exo = 0; exo <= total; ++exo) {
            int endo = total - exo;
            std::vector<std::string> exo_names, endo_names;
            std::map<std::string, std::vector<std::string>> ranges;
            for (int i = 0; i < exo; ++i) {
                exo_names.push_back("U" + std::to_string(i + 1));
                ranges[exo_names.back()] = {"0", "1"};
            }
            for (int i = 0; i < endo; ++i) {
                endo_names.push_back("V" + std::to_string(i + 1));
                ranges[endo_names.back()] = {"0", "1"};
            }
            auto sig = std::make_shared<const Signature>(exo_names, endo_names, ranges);

            // Each endogenous table is dense over the other total-1 binary
            // variables: 2^(total-1) entries, so 2^(2^(total-1)) tables.
            std::uint64_t entries = std::uint64_t{1} << (total - 1);
            std::uint64_t tables = std::uint64_t{1} << entries;
            std::vector<std::uint64_t> codes(static_cast<std::size_t>(endo), 0);
            while (true) {
                std::vector<FunctionTable> fns_tables;
                for (int i = 0; i < endo; ++i) {
                    FunctionTable t;
                    for (std::uint64_t e = 0; e < entries; ++e)
                        t.outputs.push_back((codes[static_cast<std::size_t>(i)] >> e) & 1);
                    fns_tables.push_back(std::move(t));
                }
                StructuralFunctionSet fns(sig, std::move(fns_tables));
                if (is_recursive(fns)) {
                    ++models;
                    EpistemicCausalModel m(sig, fns, compliant_valuations(fns));
                    PointedModel p(m, m.team().front());
                    for (VarId x = 0; x < sig->var_count(); ++x) {
                        for (VarId z = 0; z < sig->var_count(); ++z) {
                            if (x == z) continue;
                            bool claimed = eval(p, causes_formula(*sig, x, z, caps));
                            bool actual = false;
                            if (sig->is_endogenous(z)) {
                                auto ps = parents(fns, z);
                                actual = std::find(ps.begin(), ps.end(), x) != ps.end();
                            }
                            ++checks;
                            if (claimed != actual) {
                                detail = "model #" + std::to_string(models) + ": " +
                                         sig->var_name(x) + " ~> " + sig->var_name(z) +
                                         " formula says " + (claimed ? "true" : "false") +
                                         ", tables say " + (actual ? "true" : "false");
                                return false;
                            }
                        }
                    }
                }
                // Odometer over the endogenous variables' table codes.
                int carry = 0;
                while (carry < endo && ++codes[static_cast<std::size_t>(carry)] == tables) {
                    codes[static_cast<std::size_t>(carry)] = 0;
                    ++carry;
                }
                if (carry == endo) break;
            }
        }
    }
    detail = std::to_string(checks) + " ordered pairs over " + std::to_string(models) +
             " recursive models";
    return true;
}

// ---------------------------------------------------------------------------
// 7. Recursive function sets have exactly one compliant valuation per
// exogenous assignment, and solve finds it.

bool solve_uniqueness(std::string& detail) {
    GeneratorConfig cfg;
    cfg.max_vars = 3;
    cfg.max_range = 3;
    std::uint64_t grids = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng = case_rng(2031, i);
        SignaturePtr sig = generate_signature(cfg, rng);
        StructuralFunctionSet fns = generate_functions(sig, rng);
        std::vector<VarId> exo_vars;
        for (VarId u = 0; u < sig->exo_count(); ++u) exo_vars.push_back(u);
        for (Odometer e(range_sizes(*sig, exo_vars)); !e.done(); e.next()) {
            std::vector<Valuation> compliant;
            for (Odometer o(range_sizes(*sig, all_variables(*sig))); !o.done();
                 o.next()) {
                Valuation v(o.digits());
                bool extends = true;
                for (VarId u = 0; u < sig->exo_count(); ++u)
                    if (v[u] != e.digits()[u]) { extends = false; break; }
                if (extends && complies(v, fns)) compliant.push_back(v);
            }
            ++grids;
            if (compliant.size() != 1) {
                detail = "set #" + std::to_string(i) + ": " +
                         std::to_string(compliant.size()) +
                         " compliant valuations for one exogenous assignment";
                return false;
            }
            if (compliant.front() != solve(fns, e.digits())) {
                detail = "set #" + std::to_string(i) +
                         ": solve disagrees with exhaustive enumeration";
                return false;
            }
        }
    }
    detail = "100 function sets, " + std::to_string(grids) + " exogenous assignments";
    return true;
}

// ---------------------------------------------------------------------------
// 8. Downward closure plus the two supporting lemmas of the flat
// translation.

bool downward_closure(std::string& detail) {
    GeneratorConfig cfg;
    cfg.seed = 2032;
    cfg.max_vars = 3;
    cfg.max_range = 2;
    cfg.max_team = 6;
    cfg.max_depth = 4;
    RunSummary s = run_cases(cfg, 100, 4, run_downward_case);
    if (s.failed != 0) {
        detail = std::to_string(s.failed) + " of 100 failed; first: " + s.detail;
        return false;
    }
    detail = std::to_string(s.passed) + "/100 cases, " + std::to_string(s.skipped) +
             " skipped";
    return s.passed + s.skipped == 100;
}

// ---------------------------------------------------------------------------
// 9. Printing then parsing is the identity on random formulas.

bool parser_round_trip(std::string& detail) {
    GeneratorConfig cfg;
    cfg.max_vars = 3;
    cfg.max_range = 3;
    cfg.max_depth = 5;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = case_rng(2033, i);
        SignaturePtr sig = generate_signature(cfg, rng);
        PakcPtr f = generate_pakc_formula(*sig, cfg, rng, cfg.max_depth, false);
        if (!equal(parse_pakc(print_pakc(f, *sig), *sig), f)) {
            detail = "modal formula #" + std::to_string(i) +
                     " changed: " + print_pakc(f, *sig);
            return false;
        }
    }
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = case_rng(2034, i);
        SignaturePtr sig = generate_signature(cfg, rng);
        CodPtr f = generate_cod_formula(*sig, cfg, rng, cfg.max_depth, 2);
        if (!cod_equal(parse_cod(print_cod(f, *sig), *sig), f)) {
            detail = "team formula #" + std::to_string(i) +
                     " changed: " + print_cod(f, *sig);
            return false;
        }
    }
    detail = "1000 modal + 1000 team formulas";
    return true;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 6;
        }
    }

    std::vector<Criterion> criteria{
        {1, "circuit reproduction", circuit_reproduction},
        {2, "axiom soundness on random models", axiom_soundness},
        {3, "reduction to the basic fragment preserves truth", reduction_correctness},
        {4, "global team translation correspondence", global_translation},
        {5, "local team translation correspondence", local_translation},
        {6, "direct-cause formula matches table parenthood", enumerate_direct_cause_agreement},
        {7, "solve matches the unique compliant valuation", solve_uniqueness},
        {8, "downward closure and flat-translation lemmas", downward_closure},
        {9, "parser round-trip on random formulas", parser_round_trip},
    };

    bool all_ok = true;
    bool ran_any = false;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.number != only) continue;
        ran_any = true;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << "criterion " << c.number << ": " << (ok ? "PASS" : "FAIL")
                  << " | " << c.description << " | " << detail << "\n";
        all_ok = all_ok && ok;
    }
    if (!ran_any) {
        std::cerr << "no such criterion\n";
        return 6;
    }
    return all_ok ? 0 : 1;
}
