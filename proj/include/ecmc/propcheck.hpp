#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ecmc/generators.hpp"

namespace ecmc {

// Outcome of one randomized property check.  A case that trips an expansion
// cap is skipped, not failed; a failing case carries a reproducible
// description (seed, index, model, formula, diverging verdicts).
struct CaseResult {
    bool ok = true;
    bool skipped = false;
    std::string detail;
};

using CaseFn = std::function<CaseResult(const GeneratorConfig&, std::uint64_t)>;

// eval(f) = eval(tr1(f)) = eval(reduce(f)) at every pointing of a random
// model, plus the fragment guarantees on both outputs.
CaseResult run_reduction_case(const GeneratorConfig& cfg, std::uint64_t index);

// Global correspondence: the team satisfies a random formula iff its global
// translation is valid on the corresponding epistemic model.
CaseResult run_global_case(const GeneratorConfig& cfg, std::uint64_t index);

// Local correspondence, both directions, plus pointing invariance of the
// local translation's truth value.
CaseResult run_local_case(const GeneratorConfig& cfg, std::uint64_t index);

// One random model; every schema, `per_schema` instances each, all required
// valid on the model.  Schemas the signature cannot instantiate fail the
// case, so callers should configure generation accordingly (at least two
// variables, every range at least two, an exogenous variable).
CaseResult run_axioms_case(const GeneratorConfig& cfg, std::uint64_t index, int per_schema);

// Downward closure over every subteam of a random team, plus the two
// supporting lemmas for the flat translation: on singletons it matches the
// team semantics, and the selective-implication restriction equals the
// members satisfying the translated antecedent.
CaseResult run_downward_case(const GeneratorConfig& cfg, std::uint64_t index);

struct RunSummary {
    std::uint64_t passed = 0;
    std::uint64_t skipped = 0;
    std::uint64_t failed = 0;
    std::optional<std::uint64_t> first_failed_index;
    std::string detail; // description of the first failure
};

// Runs `count` cases over `jobs` threads.  Case i draws its randomness from
// case_rng(cfg.seed, i) only, so results do not depend on scheduling; the
// reported failure is the one with the smallest index.
RunSummary run_cases(const GeneratorConfig& cfg, std::uint64_t count, int jobs,
                     const CaseFn& one);

} // namespace ecmc
