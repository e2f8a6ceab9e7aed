#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecmc/errors.hpp"

namespace ecmc {

// Variables and values are interned to dense indices at signature
// construction; everything downstream works with these ids.
using VarId = std::int32_t;
using ValId = std::int32_t;

// A signature fixes the exogenous and endogenous variables and a finite,
// nonempty range of values for each.  The canonical variable order is all
// exogenous variables (in declared order) followed by all endogenous ones;
// a VarId is an index into that order.
class Signature {
public:
    Signature(std::vector<std::string> exogenous,
              std::vector<std::string> endogenous,
              const std::map<std::string, std::vector<std::string>>& ranges);

    VarId var_count() const { return static_cast<VarId>(names_.size()); }
    VarId exo_count() const { return exo_count_; }
    VarId endo_count() const { return var_count() - exo_count_; }

    bool is_exogenous(VarId v) const { return v < exo_count_; }
    bool is_endogenous(VarId v) const { return v >= exo_count_; }

    const std::string& var_name(VarId v) const { return names_.at(v); }
    std::optional<VarId> find_var(std::string_view name) const;
    VarId require_var(std::string_view name) const;

    ValId range_size(VarId v) const { return static_cast<ValId>(ranges_.at(v).size()); }
    const std::vector<std::string>& range(VarId v) const { return ranges_.at(v); }
    const std::string& value_label(VarId v, ValId x) const { return ranges_.at(v).at(x); }
    std::optional<ValId> find_value(VarId v, std::string_view label) const;
    ValId require_value(VarId v, std::string_view label) const;

    // Number of total valuations, i.e. the product of all range sizes.
    // Throws CapExceeded if it does not fit in the given bound.
    std::uint64_t valuation_count(std::uint64_t cap = UINT64_MAX) const;

    bool operator==(const Signature& other) const = default;

private:
    std::vector<std::string> names_;               // canonical order
    VarId exo_count_ = 0;
    std::vector<std::vector<std::string>> ranges_; // by VarId
};

using SignaturePtr = std::shared_ptr<const Signature>;

// Total assignment of values to all variables, in canonical variable order.
// Ordered lexicographically so teams can be kept as sorted sets.
class Valuation {
public:
    Valuation() = default;
    explicit Valuation(std::vector<ValId> values) : values_(std::move(values)) {}

    ValId operator[](VarId v) const { return values_.at(v); }
    ValId& operator[](VarId v) { return values_.at(v); }
    VarId size() const { return static_cast<VarId>(values_.size()); }
    const std::vector<ValId>& values() const { return values_; }

    auto operator<=>(const Valuation&) const = default;

    std::string to_string(const Signature& sig) const;

private:
    std::vector<ValId> values_;
};

struct Binding {
    VarId var;
    ValId value;

    auto operator<=>(const Binding&) const = default;
};

// An ordered list of (variable, value) pairs with pairwise distinct
// variables; may be empty.  Used both as the model-level intervention
// argument and as the binding list of intervention formulas.
class InterventionAssignment {
public:
    InterventionAssignment() = default;

    // Validates distinctness and value ranges.
    static InterventionAssignment checked(std::vector<Binding> bindings, const Signature& sig);

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const std::vector<Binding>& bindings() const { return bindings_; }

    bool binds(VarId v) const;
    std::optional<ValId> value_of(VarId v) const;

    // Returns a copy extended by one binding; the variable must be fresh.
    InterventionAssignment extended(Binding b, const Signature& sig) const;

    bool operator==(const InterventionAssignment&) const = default;

private:
    std::vector<Binding> bindings_;
};

} // namespace ecmc
