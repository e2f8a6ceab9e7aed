#pragma once

#include <cstdint>
#include <random>

#include "ecmc/caps.hpp"
#include "ecmc/cod.hpp"
#include "ecmc/epistemic.hpp"
#include "ecmc/formula.hpp"

namespace ecmc {

using Rng = std::mt19937_64;

// Uniform-ish integer in [lo, hi]; implemented by modulo so that sequences
// are reproducible across standard library implementations.
int rnd_int(Rng& rng, int lo, int hi);

// Deterministic per-case generator: the same (seed, index) pair always
// yields the same stream, independent of evaluation order.  This is what
// makes parallel driver runs reproducible.
Rng case_rng(std::uint64_t seed, std::uint64_t index);

struct GeneratorConfig {
    int min_vars = 1;
    int max_vars = 3;
    int min_range = 1;
    int max_range = 3;
    int max_team = 8;
    int max_depth = 5;
    int max_intervention = 2;
    bool require_exogenous = true;
    bool require_endogenous = false;
    std::uint64_t seed = 0;
    ExpansionCaps caps{};
};

// Random signature within the configured bounds.  Variables are named U1,
// U2, ... (exogenous) and V1, V2, ... (endogenous); values are 0, 1, ....
SignaturePtr generate_signature(const GeneratorConfig& cfg, Rng& rng);

// Random recursive function set: endogenous variables are ordered by a
// random permutation and each may read exogenous variables and endogenous
// variables earlier in the permutation.
StructuralFunctionSet generate_functions(const SignaturePtr& sig, Rng& rng);

// Every compliant valuation, i.e. the solutions over all exogenous
// assignments, sorted.
std::vector<Valuation> compliant_valuations(const StructuralFunctionSet& fns);

// Random model: signature, functions, and a random nonempty team of
// compliant valuations of size at most cfg.max_team.
EpistemicCausalModel generate_model(const GeneratorConfig& cfg, Rng& rng);

// Random intervention assignment with `len` distinct variables.
InterventionAssignment random_assignment(const Signature& sig, Rng& rng, int len);

// Random formula of the modal language.  With gamma_stratum set the result
// contains no intervention and is usable as an intervention body or an
// announcement inside one.
PakcPtr generate_pakc_formula(const Signature& sig, const GeneratorConfig& cfg, Rng& rng,
                              int depth, bool gamma_stratum = false);

// Random formula of the team language; never nests counterfactuals, keeps
// selective-implication antecedents dependence-free, and spends at most
// or_budget disjunctions.
CodPtr generate_cod_formula(const Signature& sig, const GeneratorConfig& cfg, Rng& rng,
                            int depth, int or_budget);

} // namespace ecmc
