#include "ecmc/structural.hpp"

#include <algorithm>
#include <set>

namespace ecmc {

namespace {

constexpr std::uint64_t kMaxTableEntries = 1u << 24;

// Strides of the mixed-radix encoding of "all variables except `skip`".
std::vector<std::uint64_t> domain_strides(const Signature& sig, VarId skip) {
    std::vector<std::uint64_t> strides(sig.var_count(), 0);
    std::uint64_t acc = 1;
    for (VarId v = sig.var_count() - 1; v >= 0; --v) {
        if (v == skip) continue;
        strides[v] = acc;
        acc *= static_cast<std::uint64_t>(sig.range_size(v));
    }
    return strides;
}

std::uint64_t domain_size_for(const Signature& sig, VarId skip) {
    std::uint64_t n = 1;
    for (VarId v = 0; v < sig.var_count(); ++v) {
        if (v == skip) continue;
        n *= static_cast<std::uint64_t>(sig.range_size(v));
        if (n > kMaxTableEntries)
            throw CapExceeded("function table too large");
    }
    return n;
}

} // namespace

StructuralFunctionSet::StructuralFunctionSet(SignaturePtr sig, std::vector<FunctionTable> tables)
    : sig_(std::move(sig)), tables_(std::move(tables)) {
    if (!sig_) throw ValidationError("null signature");
    if (static_cast<VarId>(tables_.size()) != sig_->endo_count())
        throw ValidationError("expected one function table per endogenous variable");
    for (VarId i = 0; i < sig_->endo_count(); ++i) {
        VarId v = sig_->exo_count() + i;
        std::uint64_t expect = domain_size_for(*sig_, v);
        if (tables_[i].outputs.size() != expect)
            throw ValidationError("function table for " + sig_->var_name(v) +
                                  " has wrong size");
        for (ValId out : tables_[i].outputs)
            if (out < 0 || out >= sig_->range_size(v))
                throw ValidationError("function table for " + sig_->var_name(v) +
                                      " has out-of-range output");
    }
}

const FunctionTable& StructuralFunctionSet::table(VarId endogenous) const {
    if (!sig_->is_endogenous(endogenous))
        throw ValidationError("no function table for exogenous variable " +
                              sig_->var_name(endogenous));
    return tables_.at(endogenous - sig_->exo_count());
}

std::uint64_t StructuralFunctionSet::domain_size(VarId endogenous) const {
    return table(endogenous).outputs.size();
}

std::uint64_t StructuralFunctionSet::domain_index(VarId endogenous, const Valuation& val) const {
    std::uint64_t idx = 0;
    for (VarId v = 0; v < sig_->var_count(); ++v) {
        if (v == endogenous) continue;
        idx = idx * static_cast<std::uint64_t>(sig_->range_size(v)) +
              static_cast<std::uint64_t>(val[v]);
    }
    return idx;
}

ValId StructuralFunctionSet::apply(VarId endogenous, const Valuation& val) const {
    return table(endogenous).outputs.at(domain_index(endogenous, val));
}

bool StructuralFunctionSet::operator==(const StructuralFunctionSet& other) const {
    return *sig_ == *other.sig_ && tables_ == other.tables_;
}

std::vector<VarId> parents(const StructuralFunctionSet& fns, VarId endogenous) {
    const Signature& sig = fns.signature();
    if (!sig.is_endogenous(endogenous))
        throw ValidationError("parents: variable is exogenous");
    const auto& outputs = fns.table(endogenous).outputs;
    auto strides = domain_strides(sig, endogenous);

    std::vector<VarId> result;
    for (VarId x = 0; x < sig.var_count(); ++x) {
        if (x == endogenous) continue;
        std::uint64_t stride = strides[x];
        std::uint64_t sx = static_cast<std::uint64_t>(sig.range_size(x));
        bool parent = false;
        // Scan the tuples whose X coordinate is 0 and vary X over them.
        for (std::uint64_t base = 0; base < outputs.size() && !parent; ++base) {
            if ((base / stride) % sx != 0) continue;
            ValId first = outputs[base];
            for (std::uint64_t t = 1; t < sx; ++t) {
                if (outputs[base + t * stride] != first) {
                    parent = true;
                    break;
                }
            }
        }
        if (parent) result.push_back(x);
    }
    return result;
}

std::optional<std::vector<VarId>> endogenous_order(const StructuralFunctionSet& fns,
                                                   bool lexicographic_names) {
    const Signature& sig = fns.signature();
    VarId n = sig.var_count();

    // Adjacency restricted to endogenous nodes; exogenous variables cannot
    // lie on a cycle since only endogenous variables have incoming edges.
    std::vector<std::vector<VarId>> children(n);
    std::vector<int> indegree(n, 0);
    for (VarId v = sig.exo_count(); v < n; ++v) {
        for (VarId p : parents(fns, v)) {
            if (!sig.is_endogenous(p)) continue;
            children[p].push_back(v);
            ++indegree[v];
        }
    }

    auto prefer = [&](VarId a, VarId b) {
        if (lexicographic_names) return sig.var_name(a) < sig.var_name(b);
        return a < b;
    };

    std::vector<VarId> ready;
    for (VarId v = sig.exo_count(); v < n; ++v)
        if (indegree[v] == 0) ready.push_back(v);

    std::vector<VarId> order;
    while (!ready.empty()) {
        auto it = std::min_element(ready.begin(), ready.end(), prefer);
        VarId v = *it;
        ready.erase(it);
        order.push_back(v);
        for (VarId c : children[v])
            if (--indegree[c] == 0) ready.push_back(c);
    }
    if (static_cast<VarId>(order.size()) != sig.endo_count()) return std::nullopt;
    return order;
}

bool is_recursive(const StructuralFunctionSet& fns) {
    return endogenous_order(fns).has_value();
}

std::optional<std::vector<VarId>> find_cycle(const StructuralFunctionSet& fns) {
    const Signature& sig = fns.signature();
    if (is_recursive(fns)) return std::nullopt;

    // Walk backwards along endogenous parent edges until a node repeats.
    std::vector<std::vector<VarId>> endo_parents(sig.var_count());
    for (VarId v = sig.exo_count(); v < sig.var_count(); ++v)
        for (VarId p : parents(fns, v))
            if (sig.is_endogenous(p)) endo_parents[v].push_back(p);

    // Strip nodes with no endogenous parents repeatedly; what survives
    // contains a cycle.
    std::vector<bool> removed(sig.var_count(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (VarId v = sig.exo_count(); v < sig.var_count(); ++v) {
            if (removed[v]) continue;
            bool all_removed = true;
            for (VarId p : endo_parents[v])
                if (!removed[p]) { all_removed = false; break; }
            if (all_removed) {
                removed[v] = true;
                changed = true;
            }
        }
    }

    VarId start = -1;
    for (VarId v = sig.exo_count(); v < sig.var_count(); ++v)
        if (!removed[v]) { start = v; break; }
    if (start < 0) return std::nullopt;

    std::vector<VarId> path;
    std::vector<int> pos(sig.var_count(), -1);
    VarId cur = start;
    while (pos[cur] < 0) {
        pos[cur] = static_cast<int>(path.size());
        path.push_back(cur);
        VarId next = -1;
        for (VarId p : endo_parents[cur])
            if (!removed[p]) { next = p; break; }
        cur = next;
    }
    return std::vector<VarId>(path.begin() + pos[cur], path.end());
}

bool complies(const Valuation& val, const StructuralFunctionSet& fns) {
    const Signature& sig = fns.signature();
    if (val.size() != sig.var_count())
        throw ValidationError("valuation has wrong arity for signature");
    for (VarId v = 0; v < sig.var_count(); ++v)
        if (val[v] < 0 || val[v] >= sig.range_size(v))
            throw ValidationError("valuation value out of range for " + sig.var_name(v));
    for (VarId v = sig.exo_count(); v < sig.var_count(); ++v)
        if (val[v] != fns.apply(v, val)) return false;
    return true;
}

Valuation solve(const StructuralFunctionSet& fns, const std::vector<ValId>& exo_values) {
    const Signature& sig = fns.signature();
    if (static_cast<VarId>(exo_values.size()) != sig.exo_count())
        throw ValidationError("solve: expected one value per exogenous variable");
    auto order = endogenous_order(fns);
    if (!order)
        throw ValidationError("solve: function set is not recursive");

    std::vector<ValId> values(sig.var_count(), 0);
    for (VarId u = 0; u < sig.exo_count(); ++u) {
        if (exo_values[u] < 0 || exo_values[u] >= sig.range_size(u))
            throw ValidationError("solve: exogenous value out of range for " + sig.var_name(u));
        values[u] = exo_values[u];
    }
    Valuation val(std::move(values));
    // Variables not yet computed still hold placeholder 0; a function's
    // output never depends on its non-parents, and every parent of the
    // current variable precedes it in the order, so this is sound.
    for (VarId v : *order)
        val[v] = fns.apply(v, val);
    return val;
}

StructuralFunctionSet intervene_functions(const StructuralFunctionSet& fns,
                                          const InterventionAssignment& a) {
    const Signature& sig = fns.signature();
    std::vector<FunctionTable> tables;
    tables.reserve(sig.endo_count());
    for (VarId i = 0; i < sig.endo_count(); ++i) {
        VarId v = sig.exo_count() + i;
        if (auto x = a.value_of(v)) {
            tables.push_back(FunctionTable{
                std::vector<ValId>(fns.table(v).outputs.size(), *x)});
        } else {
            tables.push_back(fns.table(v));
        }
    }
    return StructuralFunctionSet(fns.signature_ptr(), std::move(tables));
}

Valuation intervene_valuation(const StructuralFunctionSet& intervened, const Valuation& val,
                              const InterventionAssignment& a) {
    const Signature& sig = intervened.signature();
    std::vector<ValId> exo(sig.exo_count());
    for (VarId u = 0; u < sig.exo_count(); ++u)
        exo[u] = a.value_of(u).value_or(val[u]);
    return solve(intervened, exo);
}

} // namespace ecmc
