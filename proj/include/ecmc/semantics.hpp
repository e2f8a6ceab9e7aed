#pragma once

#include <string>
#include <vector>

#include "ecmc/epistemic.hpp"
#include "ecmc/formula.hpp"

namespace ecmc {

// One line per evaluated subformula: clause name, formula text, size of the
// team in force, verdict.  Indentation follows evaluation depth.
struct TraceLine {
    int depth;
    std::string clause;
    std::string formula;
    std::size_t team_size;
    bool verdict;
};

using Trace = std::vector<TraceLine>;

// Satisfaction at a pointed model.  Announcements restrict the team (the
// announced formula is checked against every member under the full model);
// interventions move to the intervened pointed model; K quantifies over the
// team by re-pointing.
bool eval(const PointedModel& p, const PakcPtr& f);
bool eval(const PointedModel& p, const PakcPtr& f, Trace& trace);

// True if the formula holds at every pointing of the model.
bool valid_on_model(const EpistemicCausalModel& m, const PakcPtr& f);

std::string format_trace(const Trace& trace);

} // namespace ecmc
