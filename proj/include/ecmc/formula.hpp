#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ecmc/caps.hpp"
#include "ecmc/signature.hpp"

namespace ecmc {

// Formulas of the epistemic causal language.  Primitive connectives are
// atoms, negation, conjunction, knowledge, announcement and intervention;
// disjunction, implication and equivalence are definable and expand at
// construction.  Interventions are flat: their body may not contain another
// intervention anywhere (announcement and knowledge inside are fine).
enum class PakcKind { Atom, Not, And, Know, Announce, Intervene };

class PakcFormula;
using PakcPtr = std::shared_ptr<const PakcFormula>;

class PakcFormula {
public:
    PakcKind kind() const { return kind_; }

    VarId atom_var() const { return var_; }
    ValId atom_value() const { return value_; }

    // Not / Know / Intervene / Announce body.
    const PakcPtr& child() const { return left_; }
    // And operands.
    const PakcPtr& left() const { return left_; }
    const PakcPtr& right() const { return right_; }
    // Announce: the announced formula.
    const PakcPtr& announced() const { return right_; }

    const InterventionAssignment& assignment() const { return assignment_; }

    bool operator==(const PakcFormula& other) const;

    // Factories; the only way to build nodes.
    friend PakcPtr atom(const Signature& sig, VarId var, ValId value);
    friend PakcPtr neg(PakcPtr f);
    friend PakcPtr conj(PakcPtr a, PakcPtr b);
    friend PakcPtr know(PakcPtr f);
    friend PakcPtr announce(PakcPtr announced, PakcPtr body);
    friend PakcPtr intervene(InterventionAssignment a, PakcPtr body);

private:
    PakcFormula() = default;

    PakcKind kind_ = PakcKind::Atom;
    VarId var_ = 0;
    ValId value_ = 0;
    PakcPtr left_;
    PakcPtr right_;
    InterventionAssignment assignment_;
};

PakcPtr atom(const Signature& sig, VarId var, ValId value);
PakcPtr neg(PakcPtr f);
PakcPtr conj(PakcPtr a, PakcPtr b);
PakcPtr know(PakcPtr f);
PakcPtr announce(PakcPtr announced, PakcPtr body);
// Collapses an empty assignment: intervening on nothing is the identity, so
// the body itself is returned.  Rejects bodies containing interventions.
PakcPtr intervene(InterventionAssignment a, PakcPtr body);

// Convenience for named atoms.
PakcPtr atom(const Signature& sig, std::string_view var, std::string_view value);

// Definable connectives, expanded to the primitive base.
PakcPtr disj(PakcPtr a, PakcPtr b);     // ~(~a & ~b)
PakcPtr implies(PakcPtr a, PakcPtr b);  // ~(a & ~b)
PakcPtr iff(PakcPtr a, PakcPtr b);      // (a -> b) & (b -> a)

// A fixed contradiction / tautology over the signature's first variable.
PakcPtr falsum(const Signature& sig);
PakcPtr verum(const Signature& sig);

// Right fold; disj_all of no disjuncts is falsum, conj_all of no conjuncts
// is verum.
PakcPtr disj_all(std::span<const PakcPtr> fs, const Signature& sig);
PakcPtr conj_all(std::span<const PakcPtr> fs, const Signature& sig);

bool contains_intervene(const PakcPtr& f);
bool contains_announce(const PakcPtr& f);
std::size_t node_count(const PakcPtr& f);

bool equal(const PakcPtr& a, const PakcPtr& b);

// Language fragments, ordered by inclusion: Kc (no announcements,
// interventions wrap single atoms) is contained in L1 (announcements free,
// interventions wrap single atoms), which is contained in the full
// language.
enum class Fragment { Kc, L1, Pakc };

// Smallest fragment containing the formula.
Fragment classify(const PakcPtr& f);

// True if the formula's fragment is included in `frag`.
bool within_fragment(const PakcPtr& f, Fragment frag);

const char* fragment_name(Fragment frag);

// Defining formula of "X is a direct syntactic cause of Z": a disjunction,
// over all assignments w to the remaining variables and all ordered pairs
// x1 != x2, z1 != z2, of
//     [w, X:=x1](Z=z1) & [w, X:=x2](Z=z2).
// Requires x != z.  Throws CapExceeded if the expansion exceeds
// caps.max_terms disjuncts.
PakcPtr causes_formula(const Signature& sig, VarId x, VarId z, const ExpansionCaps& caps);

// Epistemic dependence of y on xs: for every tuple of values for xs, some
// value of y is known after truthfully announcing the tuple.  Requires xs
// nonempty, pairwise distinct, and y not among xs.
PakcPtr e_dependence_formula(const Signature& sig, const std::vector<VarId>& xs, VarId y,
                             const ExpansionCaps& caps);

// Causal dependence of y on xs: for every tuple of values for xs, some
// value of y is known after intervening with the tuple.
PakcPtr c_dependence_formula(const Signature& sig, const std::vector<VarId>& xs, VarId y,
                             const ExpansionCaps& caps);

// Canonical text form; parse_pakc(print_pakc(f)) is structurally equal to
// f.  Negated conjunctions of the shapes ~(~a & ~b) and ~(a & ~b) print as
// "a | b" and "a -> b".
std::string print_pakc(const PakcPtr& f, const Signature& sig);

// Parser for the surface grammar (see README).  Throws ParseError, carrying
// the text offset, on malformed input and on variables or values the
// signature does not declare.
PakcPtr parse_pakc(std::string_view text, const Signature& sig);

} // namespace ecmc
