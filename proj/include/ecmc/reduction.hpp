#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecmc/formula.hpp"

namespace ecmc {

// Truth-preserving rewriting that pushes interventions down to atoms:
// inside an intervention, negation and conjunction commute outwards,
// knowledge hoists out, and announcements are eliminated by their recursion
// laws (innermost first).  The result lies in the announcement-free-inside-
// interventions fragment: every intervention wraps a single atom.
PakcPtr tr1(const PakcPtr& f);

// Truth-preserving elimination of announcements from formulas whose
// interventions already wrap single atoms.  The result lies in the
// announcement-free fragment.
PakcPtr tr2(const PakcPtr& f);

// Full reduction to the basic epistemic-causal fragment: reduce = tr2 ∘ tr1.
PakcPtr reduce(const PakcPtr& f);

// Request for schema instances.  Supported schema names: HP1..HP6, RH1,
// RH2, EX, K, T, 4, 5, CM, RP1..RP4.  Instances are deterministic in the
// seed; fewer than `count` may be returned when the signature cannot
// instantiate the schema (e.g. EX without exogenous variables).
struct AxiomInstanceRequest {
    std::string schema;
    SignaturePtr signature;
    int max_intervention = 2;
    int max_depth = 3;
    std::uint64_t seed = 0;
    int count = 20;
};

std::vector<PakcPtr> axiom_instances(const AxiomInstanceRequest& req);

// All supported schema names, in canonical order.
const std::vector<std::string>& axiom_schemas();

} // namespace ecmc
