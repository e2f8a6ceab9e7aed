#include "ecmc/causal_model.hpp"

namespace ecmc {

CausalModel::CausalModel(SignaturePtr sig, StructuralFunctionSet fns, Valuation val)
    : sig_(std::move(sig)), fns_(std::move(fns)), val_(std::move(val)) {
    if (!sig_) throw ValidationError("null signature");
    if (!(*sig_ == fns_.signature()))
        throw ValidationError("function set signature mismatch");
    if (!is_recursive(fns_))
        throw ValidationError("causal model requires a recursive function set");
    if (!complies(val_, fns_))
        throw ValidationError("valuation does not comply with the structural functions");
}

bool CausalModel::operator==(const CausalModel& other) const {
    return *sig_ == *other.sig_ && fns_ == other.fns_ && val_ == other.val_;
}

CausalModel intervene_model(const CausalModel& m, const InterventionAssignment& a) {
    StructuralFunctionSet fns = intervene_functions(m.functions(), a);
    Valuation val = intervene_valuation(fns, m.valuation(), a);
    return CausalModel(m.signature_ptr(), std::move(fns), std::move(val));
}

} // namespace ecmc
