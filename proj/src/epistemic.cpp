#include "ecmc/epistemic.hpp"

#include <algorithm>

namespace ecmc {

EpistemicCausalModel::EpistemicCausalModel(SignaturePtr sig, StructuralFunctionSet fns,
                                           std::vector<Valuation> team)
    : sig_(std::move(sig)), fns_(std::move(fns)), team_(std::move(team)) {
    if (!sig_) throw ValidationError("null signature");
    if (!(*sig_ == fns_.signature()))
        throw ValidationError("function set signature mismatch");
    if (team_.empty())
        throw ValidationError("epistemic model requires a nonempty team");
    if (!is_recursive(fns_))
        throw ValidationError("epistemic model requires a recursive function set");
    std::sort(team_.begin(), team_.end());
    team_.erase(std::unique(team_.begin(), team_.end()), team_.end());
    for (const auto& val : team_)
        if (!complies(val, fns_))
            throw ValidationError("team member " + val.to_string(*sig_) +
                                  " does not comply with the structural functions");
}

bool EpistemicCausalModel::contains(const Valuation& val) const {
    return std::binary_search(team_.begin(), team_.end(), val);
}

bool EpistemicCausalModel::operator==(const EpistemicCausalModel& other) const {
    return *sig_ == *other.sig_ && fns_ == other.fns_ && team_ == other.team_;
}

PointedModel::PointedModel(EpistemicCausalModel model, Valuation actual)
    : model_(std::move(model)), actual_(std::move(actual)) {
    if (!model_.contains(actual_))
        throw ValidationError("actual state is not a member of the team");
}

EpistemicCausalModel intervene_team(const EpistemicCausalModel& m,
                                    const InterventionAssignment& a) {
    StructuralFunctionSet fns = intervene_functions(m.functions(), a);
    std::vector<Valuation> team;
    team.reserve(m.team().size());
    for (const auto& val : m.team())
        team.push_back(intervene_valuation(fns, val, a));
    return EpistemicCausalModel(m.signature_ptr(), std::move(fns), std::move(team));
}

EpistemicCausalModel restrict_team(const EpistemicCausalModel& m,
                                   const std::vector<bool>& keep) {
    if (keep.size() != m.team().size())
        throw ValidationError("restriction mask has wrong size");
    std::vector<Valuation> team;
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (keep[i]) team.push_back(m.team()[i]);
    if (team.empty())
        throw ValidationError("restriction would empty the team");
    return EpistemicCausalModel(m.signature_ptr(), m.functions(), std::move(team));
}

PointedModel pointed_intervene(const PointedModel& p, const InterventionAssignment& a) {
    StructuralFunctionSet fns = intervene_functions(p.model().functions(), a);
    Valuation actual = intervene_valuation(fns, p.actual(), a);
    return PointedModel(intervene_team(p.model(), a), std::move(actual));
}

} // namespace ecmc
