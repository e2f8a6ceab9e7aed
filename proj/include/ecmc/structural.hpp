#pragma once

#include <optional>
#include <vector>

#include "ecmc/signature.hpp"

namespace ecmc {

// Structural function for one endogenous variable V.  The domain is the set
// of assignments to ALL other variables (exogenous and endogenous alike), in
// canonical variable order; outputs are stored densely, with the last domain
// variable varying fastest.
struct FunctionTable {
    std::vector<ValId> outputs;

    bool operator==(const FunctionTable&) const = default;
};

// One structural function per endogenous variable.  Holds the signature:
// table indexing is meaningless without it.
class StructuralFunctionSet {
public:
    StructuralFunctionSet(SignaturePtr sig, std::vector<FunctionTable> tables);

    const SignaturePtr& signature_ptr() const { return sig_; }
    const Signature& signature() const { return *sig_; }

    const FunctionTable& table(VarId endogenous) const;

    // Value of the function for `endogenous` at the argument read off `val`
    // (the entry of `val` at `endogenous` itself is ignored).
    ValId apply(VarId endogenous, const Valuation& val) const;

    // Domain size of the table for an endogenous variable.
    std::uint64_t domain_size(VarId endogenous) const;

    // Dense table index of the domain tuple read off `val`.
    std::uint64_t domain_index(VarId endogenous, const Valuation& val) const;

    bool operator==(const StructuralFunctionSet& other) const;

private:
    SignaturePtr sig_;
    std::vector<FunctionTable> tables_; // by endogenous position
};

// Direct causes of an endogenous variable: X is a parent of V iff the table
// of V is non-constant in the X coordinate.  Result is sorted ascending.
std::vector<VarId> parents(const StructuralFunctionSet& fns, VarId endogenous);

// Topological order of the endogenous variables under the direct-cause
// relation, or nullopt if it is cyclic.  Ties are broken by preferring the
// smallest element under `lexicographic_names` = false (VarId order) or by
// variable name otherwise.
std::optional<std::vector<VarId>> endogenous_order(const StructuralFunctionSet& fns,
                                                   bool lexicographic_names = false);

// A function set is recursive iff direct causation is acyclic, i.e. its
// transitive closure is a strict partial order.
bool is_recursive(const StructuralFunctionSet& fns);

// Some cycle of endogenous variables under direct causation, if one exists.
std::optional<std::vector<VarId>> find_cycle(const StructuralFunctionSet& fns);

// A valuation complies with the functions if every endogenous variable
// carries exactly the value its function dictates.
bool complies(const Valuation& val, const StructuralFunctionSet& fns);

// Unique compliant valuation extending the given exogenous values (indexed
// by exogenous VarId).  Requires a recursive function set.
Valuation solve(const StructuralFunctionSet& fns, const std::vector<ValId>& exo_values);

// Replaces the function of each intervened endogenous variable by the
// constant function returning the assigned value.  Exogenous bindings do not
// affect the function set.  Cannot break recursivity.
StructuralFunctionSet intervene_functions(const StructuralFunctionSet& fns,
                                          const InterventionAssignment& a);

// Valuation after intervening on `val`: exogenous variables in `a` take the
// assigned value, other exogenous variables keep their old value, and
// endogenous variables are recomputed under `intervened` (which must be
// intervene_functions(original, a)).
Valuation intervene_valuation(const StructuralFunctionSet& intervened, const Valuation& val,
                              const InterventionAssignment& a);

} // namespace ecmc
