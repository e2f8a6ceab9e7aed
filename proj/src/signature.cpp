#include "ecmc/signature.hpp"

#include <algorithm>
#include <set>

namespace ecmc {

Signature::Signature(std::vector<std::string> exogenous,
                     std::vector<std::string> endogenous,
                     const std::map<std::string, std::vector<std::string>>& ranges) {
    if (exogenous.empty() && endogenous.empty())
        throw ValidationError("signature must declare at least one variable");

    exo_count_ = static_cast<VarId>(exogenous.size());
    names_ = std::move(exogenous);
    names_.insert(names_.end(), endogenous.begin(), endogenous.end());

    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw ValidationError("empty variable name");
        if (!seen.insert(n).second)
            throw ValidationError("duplicate variable name: " + n);
    }

    ranges_.reserve(names_.size());
    for (const auto& n : names_) {
        auto it = ranges.find(n);
        if (it == ranges.end())
            throw ValidationError("missing range for variable: " + n);
        if (it->second.empty())
            throw ValidationError("empty range for variable: " + n);
        std::set<std::string> vals(it->second.begin(), it->second.end());
        if (vals.size() != it->second.size())
            throw ValidationError("duplicate value in range of variable: " + n);
        ranges_.push_back(it->second);
    }
    for (const auto& [name, _] : ranges)
        if (std::find(names_.begin(), names_.end(), name) == names_.end())
            throw ValidationError("range given for undeclared variable: " + name);
}

std::optional<VarId> Signature::find_var(std::string_view name) const {
    for (VarId v = 0; v < var_count(); ++v)
        if (names_[v] == name) return v;
    return std::nullopt;
}

VarId Signature::require_var(std::string_view name) const {
    if (auto v = find_var(name)) return *v;
    throw ValidationError("unknown variable: " + std::string(name));
}

std::optional<ValId> Signature::find_value(VarId v, std::string_view label) const {
    const auto& r = ranges_.at(v);
    for (ValId x = 0; x < static_cast<ValId>(r.size()); ++x)
        if (r[x] == label) return x;
    return std::nullopt;
}

ValId Signature::require_value(VarId v, std::string_view label) const {
    if (auto x = find_value(v, label)) return *x;
    throw ValidationError("value '" + std::string(label) + "' not in range of variable " +
                          var_name(v));
}

std::uint64_t Signature::valuation_count(std::uint64_t cap) const {
    std::uint64_t n = 1;
    for (VarId v = 0; v < var_count(); ++v) {
        std::uint64_t s = static_cast<std::uint64_t>(range_size(v));
        if (n > cap / s)
            throw CapExceeded("valuation space exceeds cap");
        n *= s;
    }
    return n;
}

std::string Valuation::to_string(const Signature& sig) const {
    std::string out = "(";
    for (VarId v = 0; v < sig.var_count(); ++v) {
        if (v > 0) out += ", ";
        out += sig.var_name(v) + "=" + sig.value_label(v, values_.at(v));
    }
    out += ")";
    return out;
}

InterventionAssignment InterventionAssignment::checked(std::vector<Binding> bindings,
                                                       const Signature& sig) {
    std::set<VarId> seen;
    for (const auto& b : bindings) {
        if (b.var < 0 || b.var >= sig.var_count())
            throw ValidationError("intervention binds unknown variable");
        if (b.value < 0 || b.value >= sig.range_size(b.var))
            throw ValidationError("intervention value out of range for variable " +
                                  sig.var_name(b.var));
        if (!seen.insert(b.var).second)
            throw ValidationError("duplicate variable in intervention: " + sig.var_name(b.var));
    }
    InterventionAssignment a;
    a.bindings_ = std::move(bindings);
    return a;
}

bool InterventionAssignment::binds(VarId v) const {
    return value_of(v).has_value();
}

std::optional<ValId> InterventionAssignment::value_of(VarId v) const {
    for (const auto& b : bindings_)
        if (b.var == v) return b.value;
    return std::nullopt;
}

InterventionAssignment InterventionAssignment::extended(Binding b, const Signature& sig) const {
    std::vector<Binding> bs = bindings_;
    bs.push_back(b);
    return checked(std::move(bs), sig);
}

} // namespace ecmc
