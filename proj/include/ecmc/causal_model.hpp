#pragma once

#include "ecmc/structural.hpp"

namespace ecmc {

// A single-world causal model: recursive structural functions plus one
// compliant valuation.
class CausalModel {
public:
    CausalModel(SignaturePtr sig, StructuralFunctionSet fns, Valuation val);

    const Signature& signature() const { return *sig_; }
    const SignaturePtr& signature_ptr() const { return sig_; }
    const StructuralFunctionSet& functions() const { return fns_; }
    const Valuation& valuation() const { return val_; }

    bool operator==(const CausalModel& other) const;

private:
    SignaturePtr sig_;
    StructuralFunctionSet fns_;
    Valuation val_;
};

// Model-level intervention: intervened endogenous functions become
// constants, exogenous variables in the assignment take the assigned value,
// the rest keep their old value, and endogenous values are recomputed.
// An empty assignment returns a model equal to the input.
CausalModel intervene_model(const CausalModel& m, const InterventionAssignment& a);

} // namespace ecmc
