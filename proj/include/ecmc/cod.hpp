#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ecmc/caps.hpp"
#include "ecmc/formula.hpp"
#include "ecmc/structural.hpp"

namespace ecmc {

// Formulas of the causal-observational team language: literals, dependence
// atoms, conjunction, (splitting) disjunction, selective implication and
// interventionist counterfactuals.  There is no global negation; negation
// lives in the literals.
enum class CodKind { Eq, Neq, Dep, And, Or, SelImp, Cf };

class CodFormula;
using CodPtr = std::shared_ptr<const CodFormula>;

class CodFormula {
public:
    CodKind kind() const { return kind_; }

    VarId lit_var() const { return var_; }
    ValId lit_value() const { return value_; }

    const std::vector<VarId>& dep_inputs() const { return xs_; }
    VarId dep_output() const { return y_; }

    const CodPtr& left() const { return left_; }
    const CodPtr& right() const { return right_; }
    // SelImp: left is the antecedent, right the consequent.
    // Cf: right is the body.
    const CodPtr& body() const { return right_; }
    const CodPtr& antecedent() const { return left_; }

    // Cf binding list; duplicates are allowed here, unlike interventions.
    const std::vector<Binding>& bindings() const { return bindings_; }

    bool operator==(const CodFormula& other) const;

    friend CodPtr cod_eq(const Signature& sig, VarId var, ValId value);
    friend CodPtr cod_neq(const Signature& sig, VarId var, ValId value);
    friend CodPtr cod_dep(const Signature& sig, std::vector<VarId> xs, VarId y);
    friend CodPtr cod_and(CodPtr a, CodPtr b);
    friend CodPtr cod_or(CodPtr a, CodPtr b);
    friend CodPtr cod_selimp(CodPtr antecedent, CodPtr consequent);
    friend CodPtr cod_cf(const Signature& sig, std::vector<Binding> bindings, CodPtr body);

private:
    CodFormula() = default;

    CodKind kind_ = CodKind::Eq;
    VarId var_ = 0;
    ValId value_ = 0;
    std::vector<VarId> xs_;
    VarId y_ = 0;
    CodPtr left_;
    CodPtr right_;
    std::vector<Binding> bindings_;
};

CodPtr cod_eq(const Signature& sig, VarId var, ValId value);
CodPtr cod_neq(const Signature& sig, VarId var, ValId value);
// Inputs must be nonempty and pairwise distinct.
CodPtr cod_dep(const Signature& sig, std::vector<VarId> xs, VarId y);
CodPtr cod_and(CodPtr a, CodPtr b);
CodPtr cod_or(CodPtr a, CodPtr b);
// The antecedent may not contain dependence atoms.
CodPtr cod_selimp(CodPtr antecedent, CodPtr consequent);
// Bindings may repeat a variable; a variable bound to two different values
// makes the counterfactual vacuously true.
CodPtr cod_cf(const Signature& sig, std::vector<Binding> bindings, CodPtr body);

bool cod_equal(const CodPtr& a, const CodPtr& b);
bool contains_dep(const CodPtr& f);
// No counterfactual occurs inside another counterfactual's body.
bool is_non_nested(const CodPtr& f);

std::string print_cod(const CodPtr& f, const Signature& sig);
CodPtr parse_cod(std::string_view text, const Signature& sig);

// A team over a fixed recursive function set.  Unlike the epistemic model,
// the team may be empty.
class CausalTeam {
public:
    CausalTeam(SignaturePtr sig, StructuralFunctionSet fns, std::vector<Valuation> team);

    const Signature& signature() const { return *sig_; }
    const SignaturePtr& signature_ptr() const { return sig_; }
    const StructuralFunctionSet& functions() const { return fns_; }
    const std::vector<Valuation>& team() const { return team_; }

    bool operator==(const CausalTeam& other) const;

private:
    SignaturePtr sig_;
    StructuralFunctionSet fns_;
    std::vector<Valuation> team_;
};

// Team satisfaction.  Literals and dependence atoms hold universally over
// the team (hence trivially on the empty team); disjunction quantifies over
// splits of the team into two covering subteams (disjoint splits suffice,
// by downward closure); selective implication restricts the team to the
// members satisfying the antecedent in isolation; counterfactuals intervene
// on functions and team.  Disjunction enumeration over teams larger than
// caps.max_or_team raises CapExceeded.
bool team_eval(const CausalTeam& t, const CodPtr& f, const ExpansionCaps& caps);

// Flat translation into the modal language for dependence-free, non-nested
// formulas: literals and selective implication keep their classical
// reading, disjunction becomes the definable disjunction, counterfactuals
// become interventions.
PakcPtr e_translate(const CodPtr& f, const Signature& sig);

// Global translation: the team satisfies f iff tr(f) is valid on the
// corresponding epistemic model.  Requires a non-nested formula.  The
// disjunction clause enumerates all subsets of the full valuation space, so
// it is capped by caps.max_terms.
PakcPtr tr_translate(const CodPtr& f, const Signature& sig, const ExpansionCaps& caps);

// Local translation: satisfaction of f by the team implies tr*(f) at every
// pointing, and tr*(f) at some pointing implies satisfaction by the team.
PakcPtr tr_star_translate(const CodPtr& f, const Signature& sig, const ExpansionCaps& caps);

struct EquivalenceReport {
    bool team_verdict = false;
    bool holds_at_all_pointings = false;
    bool holds_at_some_pointing = false;
    bool pointing_invariant = false;
    bool agrees = false;
    std::string detail;
};

// Checks the global correspondence on a nonempty team.
EquivalenceReport check_global_equivalence(const CausalTeam& t, const CodPtr& f,
                                           const ExpansionCaps& caps);

// Checks both directions of the local correspondence, plus pointing
// invariance of the translated formula.
EquivalenceReport check_local_equivalence(const CausalTeam& t, const CodPtr& f,
                                          const ExpansionCaps& caps);

} // namespace ecmc
