#include "ecmc/formula.hpp"

#include <algorithm>
#include <cstdlib>

#include "ecmc/enumerate.hpp"

namespace ecmc {

ExpansionCaps caps_from_env() {
    ExpansionCaps caps;
    if (const char* s = std::getenv("ECMC_MAX_TERMS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) caps.max_terms = v;
    }
    if (const char* s = std::getenv("ECMC_MAX_OR_TEAM")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end && *end == '\0' && v > 0 && v <= 62) caps.max_or_team = static_cast<int>(v);
    }
    return caps;
}

std::vector<VarId> other_variables(const Signature& sig, const std::vector<VarId>& skip) {
    std::vector<VarId> out;
    for (VarId v = 0; v < sig.var_count(); ++v)
        if (std::find(skip.begin(), skip.end(), v) == skip.end()) out.push_back(v);
    return out;
}

std::vector<VarId> all_variables(const Signature& sig) {
    std::vector<VarId> out(sig.var_count());
    for (VarId v = 0; v < sig.var_count(); ++v) out[v] = v;
    return out;
}

namespace {

PakcPtr make_node(PakcFormula&& node) {
    return std::make_shared<const PakcFormula>(std::move(node));
}

} // namespace

PakcPtr atom(const Signature& sig, VarId var, ValId value) {
    if (var < 0 || var >= sig.var_count())
        throw ValidationError("atom over unknown variable");
    if (value < 0 || value >= sig.range_size(var))
        throw ValidationError("atom value out of range for variable " + sig.var_name(var));
    PakcFormula f;
    f.kind_ = PakcKind::Atom;
    f.var_ = var;
    f.value_ = value;
    return make_node(std::move(f));
}

PakcPtr atom(const Signature& sig, std::string_view var, std::string_view value) {
    VarId v = sig.require_var(var);
    return atom(sig, v, sig.require_value(v, value));
}

PakcPtr neg(PakcPtr f) {
    if (!f) throw ValidationError("null formula");
    PakcFormula n;
    n.kind_ = PakcKind::Not;
    n.left_ = std::move(f);
    return make_node(std::move(n));
}

PakcPtr conj(PakcPtr a, PakcPtr b) {
    if (!a || !b) throw ValidationError("null formula");
    PakcFormula n;
    n.kind_ = PakcKind::And;
    n.left_ = std::move(a);
    n.right_ = std::move(b);
    return make_node(std::move(n));
}

PakcPtr know(PakcPtr f) {
    if (!f) throw ValidationError("null formula");
    PakcFormula n;
    n.kind_ = PakcKind::Know;
    n.left_ = std::move(f);
    return make_node(std::move(n));
}

PakcPtr announce(PakcPtr announced, PakcPtr body) {
    if (!announced || !body) throw ValidationError("null formula");
    PakcFormula n;
    n.kind_ = PakcKind::Announce;
    n.left_ = std::move(body);
    n.right_ = std::move(announced);
    return make_node(std::move(n));
}

PakcPtr intervene(InterventionAssignment a, PakcPtr body) {
    if (!body) throw ValidationError("null formula");
    if (a.empty()) return body; // intervening on nothing is the identity
    if (contains_intervene(body))
        throw ValidationError("intervention body may not contain another intervention");
    PakcFormula n;
    n.kind_ = PakcKind::Intervene;
    n.left_ = std::move(body);
    n.assignment_ = std::move(a);
    return make_node(std::move(n));
}

PakcPtr disj(PakcPtr a, PakcPtr b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }
PakcPtr implies(PakcPtr a, PakcPtr b) { return neg(conj(std::move(a), neg(std::move(b)))); }
PakcPtr iff(PakcPtr a, PakcPtr b) {
    PakcPtr forward = implies(a, b); // built first: argument order is unspecified
    return conj(std::move(forward), implies(std::move(b), std::move(a)));
}

PakcPtr falsum(const Signature& sig) {
    PakcPtr a = atom(sig, VarId{0}, ValId{0});
    return conj(a, neg(a));
}

PakcPtr verum(const Signature& sig) { return neg(falsum(sig)); }

PakcPtr disj_all(std::span<const PakcPtr> fs, const Signature& sig) {
    if (fs.empty()) return falsum(sig);
    PakcPtr out = fs.back();
    for (auto i = static_cast<std::ptrdiff_t>(fs.size()) - 2; i >= 0; --i)
        out = disj(fs[i], std::move(out));
    return out;
}

PakcPtr conj_all(std::span<const PakcPtr> fs, const Signature& sig) {
    if (fs.empty()) return verum(sig);
    PakcPtr out = fs.back();
    for (auto i = static_cast<std::ptrdiff_t>(fs.size()) - 2; i >= 0; --i)
        out = conj(fs[i], std::move(out));
    return out;
}

bool PakcFormula::operator==(const PakcFormula& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
    case PakcKind::Atom:
        return var_ == other.var_ && value_ == other.value_;
    case PakcKind::Not:
    case PakcKind::Know:
        return *left_ == *other.left_;
    case PakcKind::And:
    case PakcKind::Announce:
        return *left_ == *other.left_ && *right_ == *other.right_;
    case PakcKind::Intervene:
        return assignment_ == other.assignment_ && *left_ == *other.left_;
    }
    return false;
}

bool equal(const PakcPtr& a, const PakcPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

bool contains_intervene(const PakcPtr& f) {
    switch (f->kind()) {
    case PakcKind::Atom: return false;
    case PakcKind::Not:
    case PakcKind::Know: return contains_intervene(f->child());
    case PakcKind::And: return contains_intervene(f->left()) || contains_intervene(f->right());
    case PakcKind::Announce:
        return contains_intervene(f->child()) || contains_intervene(f->announced());
    case PakcKind::Intervene: return true;
    }
    return false;
}

bool contains_announce(const PakcPtr& f) {
    switch (f->kind()) {
    case PakcKind::Atom: return false;
    case PakcKind::Not:
    case PakcKind::Know: return contains_announce(f->child());
    case PakcKind::And: return contains_announce(f->left()) || contains_announce(f->right());
    case PakcKind::Announce: return true;
    case PakcKind::Intervene: return contains_announce(f->child());
    }
    return false;
}

std::size_t node_count(const PakcPtr& f) {
    switch (f->kind()) {
    case PakcKind::Atom: return 1;
    case PakcKind::Not:
    case PakcKind::Know:
    case PakcKind::Intervene: return 1 + node_count(f->child());
    case PakcKind::And:
    case PakcKind::Announce: return 1 + node_count(f->left()) + node_count(f->right());
    }
    return 1;
}

namespace {

Fragment worst(Fragment a, Fragment b) { return a > b ? a : b; }

Fragment classify_impl(const PakcPtr& f) {
    switch (f->kind()) {
    case PakcKind::Atom:
        return Fragment::Kc;
    case PakcKind::Not:
    case PakcKind::Know:
        return classify_impl(f->child());
    case PakcKind::And:
        return worst(classify_impl(f->left()), classify_impl(f->right()));
    case PakcKind::Announce:
        return worst(Fragment::L1,
                     worst(classify_impl(f->child()), classify_impl(f->announced())));
    case PakcKind::Intervene:
        // Construction guarantees the body has no nested intervention, so
        // the only question is whether the body is a single atom.
        if (f->child()->kind() == PakcKind::Atom) return Fragment::Kc;
        return Fragment::Pakc;
    }
    return Fragment::Pakc;
}

} // namespace

Fragment classify(const PakcPtr& f) { return classify_impl(f); }

bool within_fragment(const PakcPtr& f, Fragment frag) { return classify(f) <= frag; }

const char* fragment_name(Fragment frag) {
    switch (frag) {
    case Fragment::Kc: return "KC";
    case Fragment::L1: return "L1";
    case Fragment::Pakc: return "PAKC";
    }
    return "?";
}

PakcPtr causes_formula(const Signature& sig, VarId x, VarId z, const ExpansionCaps& caps) {
    if (x < 0 || x >= sig.var_count() || z < 0 || z >= sig.var_count())
        throw ValidationError("causes_formula: unknown variable");
    if (x == z)
        throw ValidationError("causes_formula: candidate cause and effect must differ");

    std::vector<VarId> rest = other_variables(sig, {x, z});
    Odometer counter(range_sizes(sig, rest));
    std::uint64_t tuples = counter.combinations(caps.max_terms);
    std::uint64_t sx = static_cast<std::uint64_t>(sig.range_size(x));
    std::uint64_t sz = static_cast<std::uint64_t>(sig.range_size(z));
    std::uint64_t pairs = sx * (sx - 1) * sz * (sz - 1);
    if (tuples > caps.max_terms || (pairs > 0 && tuples > caps.max_terms / pairs))
        throw CapExceeded("causes_formula expansion exceeds cap");

    std::vector<PakcPtr> disjuncts;
    for (Odometer w(range_sizes(sig, rest)); !w.done(); w.next()) {
        std::vector<Binding> base;
        base.reserve(rest.size() + 1);
        for (std::size_t i = 0; i < rest.size(); ++i)
            base.push_back({rest[i], w.digits()[i]});
        for (ValId x1 = 0; x1 < sig.range_size(x); ++x1) {
            for (ValId x2 = 0; x2 < sig.range_size(x); ++x2) {
                if (x2 == x1) continue;
                for (ValId z1 = 0; z1 < sig.range_size(z); ++z1) {
                    for (ValId z2 = 0; z2 < sig.range_size(z); ++z2) {
                        if (z2 == z1) continue;
                        auto with_x = [&](ValId xv) {
                            std::vector<Binding> bs = base;
                            bs.push_back({x, xv});
                            return InterventionAssignment::checked(std::move(bs), sig);
                        };
                        disjuncts.push_back(
                            conj(intervene(with_x(x1), atom(sig, z, z1)),
                                 intervene(with_x(x2), atom(sig, z, z2))));
                    }
                }
            }
        }
    }
    return disj_all(disjuncts, sig);
}

namespace {

// Shared scaffolding of the two dependence formulas: for every value tuple
// of xs, some value of y is "detected" via make_disjunct(tuple, y-value).
template <typename MakeDisjunct>
PakcPtr dependence_scaffold(const Signature& sig, const std::vector<VarId>& xs, VarId y,
                            const ExpansionCaps& caps, MakeDisjunct&& make_disjunct) {
    if (xs.empty()) throw ValidationError("dependence formula needs at least one variable");
    for (VarId v : xs) {
        if (v < 0 || v >= sig.var_count())
            throw ValidationError("dependence formula: unknown variable");
        if (std::count(xs.begin(), xs.end(), v) != 1)
            throw ValidationError("dependence formula: duplicate variable " + sig.var_name(v));
    }
    if (y < 0 || y >= sig.var_count())
        throw ValidationError("dependence formula: unknown variable");
    if (std::find(xs.begin(), xs.end(), y) != xs.end())
        throw ValidationError("dependence formula: dependent variable listed as input");

    Odometer counter(range_sizes(sig, xs));
    std::uint64_t tuples = counter.combinations(caps.max_terms);
    std::uint64_t sy = static_cast<std::uint64_t>(sig.range_size(y));
    if (tuples > caps.max_terms || tuples > caps.max_terms / sy)
        throw CapExceeded("dependence formula expansion exceeds cap");

    std::vector<PakcPtr> conjuncts;
    for (Odometer t(range_sizes(sig, xs)); !t.done(); t.next()) {
        std::vector<PakcPtr> disjuncts;
        for (ValId yv = 0; yv < sig.range_size(y); ++yv)
            disjuncts.push_back(make_disjunct(t.digits(), yv));
        conjuncts.push_back(disj_all(disjuncts, sig));
    }
    return conj_all(conjuncts, sig);
}

} // namespace

PakcPtr e_dependence_formula(const Signature& sig, const std::vector<VarId>& xs, VarId y,
                             const ExpansionCaps& caps) {
    return dependence_scaffold(
        sig, xs, y, caps, [&](const std::vector<ValId>& tuple, ValId yv) {
            std::vector<PakcPtr> atoms;
            for (std::size_t i = 0; i < xs.size(); ++i)
                atoms.push_back(atom(sig, xs[i], tuple[i]));
            return know(announce(conj_all(atoms, sig), know(atom(sig, y, yv))));
        });
}

PakcPtr c_dependence_formula(const Signature& sig, const std::vector<VarId>& xs, VarId y,
                             const ExpansionCaps& caps) {
    return dependence_scaffold(
        sig, xs, y, caps, [&](const std::vector<ValId>& tuple, ValId yv) {
            std::vector<Binding> bs;
            for (std::size_t i = 0; i < xs.size(); ++i)
                bs.push_back({xs[i], tuple[i]});
            return intervene(InterventionAssignment::checked(std::move(bs), sig),
                             know(atom(sig, y, yv)));
        });
}

} // namespace ecmc
