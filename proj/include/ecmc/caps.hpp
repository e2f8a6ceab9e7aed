#pragma once

#include <cstdint>

namespace ecmc {

// Caps on combinatorial expansions.  Exceeding one raises CapExceeded; the
// caps exist so that definable-operator expansions and subset enumerations
// fail loudly instead of exhausting memory.
struct ExpansionCaps {
    // Upper bound on the number of disjuncts/conjuncts any single expansion
    // may produce (cause formulas, dependence formulas, disjunction
    // translations).
    std::uint64_t max_terms = 10000;
    // Upper bound on team size for the subset enumeration behind the
    // disjunction clause of team semantics.
    int max_or_team = 16;
};

// Defaults, overridable through the environment variables ECMC_MAX_TERMS
// and ECMC_MAX_OR_TEAM.
ExpansionCaps caps_from_env();

} // namespace ecmc
