#pragma once

#include "ecmc/structural.hpp"

namespace ecmc {

// Epistemic causal model: recursive structural functions together with a
// nonempty team of compliant valuations.  The team is a set; it is kept
// sorted and duplicate-free, so equal teams compare equal.
class EpistemicCausalModel {
public:
    EpistemicCausalModel(SignaturePtr sig, StructuralFunctionSet fns,
                         std::vector<Valuation> team);

    const Signature& signature() const { return *sig_; }
    const SignaturePtr& signature_ptr() const { return sig_; }
    const StructuralFunctionSet& functions() const { return fns_; }
    const std::vector<Valuation>& team() const { return team_; }

    bool contains(const Valuation& val) const;

    bool operator==(const EpistemicCausalModel& other) const;

private:
    SignaturePtr sig_;
    StructuralFunctionSet fns_;
    std::vector<Valuation> team_;
};

// A model pointed at one of its team members, the actual state.
class PointedModel {
public:
    PointedModel(EpistemicCausalModel model, Valuation actual);

    const EpistemicCausalModel& model() const { return model_; }
    const Valuation& actual() const { return actual_; }

private:
    EpistemicCausalModel model_;
    Valuation actual_;
};

// Pointwise team intervention.  Images of distinct members may coincide;
// the resulting team is the set of images.
EpistemicCausalModel intervene_team(const EpistemicCausalModel& m,
                                    const InterventionAssignment& a);

// Restriction of the team to the members selected by `keep` (indexed
// against m.team()).  Throws ValidationError if nothing survives: an
// epistemic model's team must stay nonempty.
EpistemicCausalModel restrict_team(const EpistemicCausalModel& m,
                                   const std::vector<bool>& keep);

// Intervention of a pointed model: the team is intervened pointwise and the
// point moves to the image of the old actual state.
PointedModel pointed_intervene(const PointedModel& p, const InterventionAssignment& a);

} // namespace ecmc
