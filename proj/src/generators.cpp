#include "ecmc/generators.hpp"

#include <algorithm>

#include "ecmc/enumerate.hpp"

namespace ecmc {

int rnd_int(Rng& rng, int lo, int hi) {
    if (hi < lo) throw ValidationError("rnd_int: empty interval");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

Rng case_rng(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 of the pair, so neighbouring cases do not correlate.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
}

SignaturePtr generate_signature(const GeneratorConfig& cfg, Rng& rng) {
    if (cfg.min_vars < 1 || cfg.max_vars < cfg.min_vars || cfg.min_range < 1 ||
        cfg.max_range < cfg.min_range)
        throw ValidationError("generator bounds are inconsistent");
    int total = rnd_int(rng, cfg.min_vars, cfg.max_vars);
    int lo_exo = cfg.require_exogenous ? 1 : 0;
    int hi_exo = cfg.require_endogenous ? total - 1 : total;
    if (hi_exo < lo_exo)
        throw ValidationError("generator bounds leave no room for required variables");
    int n_exo = rnd_int(rng, lo_exo, hi_exo);

    std::vector<std::string> exo, endo;
    std::map<std::string, std::vector<std::string>> ranges;
    for (int i = 0; i < total; ++i) {
        bool is_exo = i < n_exo;
        std::string name =
            (is_exo ? "U" : "V") + std::to_string(is_exo ? i + 1 : i - n_exo + 1);
        (is_exo ? exo : endo).push_back(name);
        int size = rnd_int(rng, cfg.min_range, cfg.max_range);
        std::vector<std::string> labels;
        for (int x = 0; x < size; ++x) labels.push_back(std::to_string(x));
        ranges[name] = std::move(labels);
    }
    return std::make_shared<const Signature>(std::move(exo), std::move(endo),
                                             std::move(ranges));
}

StructuralFunctionSet generate_functions(const SignaturePtr& sig, Rng& rng) {
    // A random permutation of the endogenous variables; each variable's
    // table may depend on exogenous variables and endogenous variables
    // earlier in the permutation, which forces recursivity.
    std::vector<VarId> perm;
    for (VarId v = sig->exo_count(); v < sig->var_count(); ++v) perm.push_back(v);
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
        std::size_t j = i + static_cast<std::size_t>(
                                rnd_int(rng, 0, static_cast<int>(perm.size() - 1 - i)));
        std::swap(perm[i], perm[j]);
    }
    std::vector<int> rank(sig->var_count(), -1);
    for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = static_cast<int>(i);

    std::vector<FunctionTable> tables(static_cast<std::size_t>(sig->endo_count()));
    for (VarId v = sig->exo_count(); v < sig->var_count(); ++v) {
        std::vector<VarId> allowed;
        for (VarId u = 0; u < sig->var_count(); ++u) {
            if (u == v) continue;
            if (sig->is_exogenous(u) || rank[u] < rank[v]) allowed.push_back(u);
        }
        // Outputs indexed by the allowed-variable tuple.
        std::uint64_t reduced = 1;
        for (VarId u : allowed) reduced *= static_cast<std::uint64_t>(sig->range_size(u));
        std::vector<ValId> reduced_out(reduced);
        for (auto& out : reduced_out) out = rnd_int(rng, 0, sig->range_size(v) - 1);

        std::vector<VarId> others = other_variables(*sig, {v});
        FunctionTable table;
        for (Odometer o(range_sizes(*sig, others)); !o.done(); o.next()) {
            std::uint64_t idx = 0;
            for (VarId u : allowed) {
                auto at = std::find(others.begin(), others.end(), u) - others.begin();
                idx = idx * static_cast<std::uint64_t>(sig->range_size(u)) +
                      static_cast<std::uint64_t>(o.digits()[static_cast<std::size_t>(at)]);
            }
            table.outputs.push_back(reduced_out[idx]);
        }
        tables[static_cast<std::size_t>(v - sig->exo_count())] = std::move(table);
    }
    return StructuralFunctionSet(sig, std::move(tables));
}

std::vector<Valuation> compliant_valuations(const StructuralFunctionSet& fns) {
    const Signature& sig = fns.signature();
    std::vector<VarId> exo_vars;
    for (VarId u = 0; u < sig.exo_count(); ++u) exo_vars.push_back(u);
    std::vector<Valuation> out;
    for (Odometer o(range_sizes(sig, exo_vars)); !o.done(); o.next())
        out.push_back(solve(fns, o.digits()));
    std::sort(out.begin(), out.end());
    return out;
}

EpistemicCausalModel generate_model(const GeneratorConfig& cfg, Rng& rng) {
    SignaturePtr sig = generate_signature(cfg, rng);
    StructuralFunctionSet fns = generate_functions(sig, rng);
    std::vector<Valuation> candidates = compliant_valuations(fns);
    int most = std::min<int>(cfg.max_team, static_cast<int>(candidates.size()));
    int k = rnd_int(rng, 1, std::max(1, most));
    for (int i = 0; i < k; ++i) {
        int j = i + rnd_int(rng, 0, static_cast<int>(candidates.size()) - 1 - i);
        std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(static_cast<std::size_t>(k));
    return EpistemicCausalModel(sig, std::move(fns), std::move(candidates));
}

InterventionAssignment random_assignment(const Signature& sig, Rng& rng, int len) {
    len = std::min<int>(len, sig.var_count());
    std::vector<VarId> pool = all_variables(sig);
    for (int i = 0; i < len; ++i) {
        int j = i + rnd_int(rng, 0, static_cast<int>(pool.size()) - 1 - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<Binding> bs;
    for (int i = 0; i < len; ++i)
        bs.push_back({pool[i], rnd_int(rng, 0, sig.range_size(pool[i]) - 1)});
    return InterventionAssignment::checked(std::move(bs), sig);
}

PakcPtr generate_pakc_formula(const Signature& sig, const GeneratorConfig& cfg, Rng& rng,
                              int depth, bool gamma_stratum) {
    auto random_atom = [&] {
        VarId v = rnd_int(rng, 0, sig.var_count() - 1);
        return atom(sig, v, rnd_int(rng, 0, sig.range_size(v) - 1));
    };
    if (depth <= 0) return random_atom();

    // Weighted choice; interventions are excluded inside intervention scope.
    int roll = rnd_int(rng, 0, gamma_stratum ? 9 : 11);
    switch (roll) {
    case 0:
    case 1:
    case 2:
        return random_atom();
    case 3:
    case 4:
        return neg(generate_pakc_formula(sig, cfg, rng, depth - 1, gamma_stratum));
    case 5:
    case 6:
        return conj(generate_pakc_formula(sig, cfg, rng, depth - 1, gamma_stratum),
                    generate_pakc_formula(sig, cfg, rng, depth - 1, gamma_stratum));
    case 7:
    case 8:
        return know(generate_pakc_formula(sig, cfg, rng, depth - 1, gamma_stratum));
    case 9:
        return announce(generate_pakc_formula(sig, cfg, rng, depth - 1, gamma_stratum),
                        generate_pakc_formula(sig, cfg, rng, depth - 1, gamma_stratum));
    default:
        return intervene(
            random_assignment(sig, rng, rnd_int(rng, 1, std::max(1, cfg.max_intervention))),
            generate_pakc_formula(sig, cfg, rng, depth - 1, true));
    }
}

namespace {

CodPtr generate_cod(const Signature& sig, const GeneratorConfig& cfg, Rng& rng, int depth,
                    int& or_budget, bool inside_cf, bool alpha_stratum) {
    auto random_literal = [&]() -> CodPtr {
        VarId v = rnd_int(rng, 0, sig.var_count() - 1);
        ValId x = rnd_int(rng, 0, sig.range_size(v) - 1);
        return rnd_int(rng, 0, 2) == 0 ? cod_neq(sig, v, x) : cod_eq(sig, v, x);
    };
    auto random_dep = [&]() -> CodPtr {
        int n = std::min<int>(sig.var_count(), rnd_int(rng, 1, 2));
        std::vector<VarId> pool = all_variables(sig);
        for (int i = 0; i < n; ++i) {
            int j = i + rnd_int(rng, 0, static_cast<int>(pool.size()) - 1 - i);
            std::swap(pool[i], pool[j]);
        }
        std::vector<VarId> xs(pool.begin(), pool.begin() + n);
        return cod_dep(sig, std::move(xs), rnd_int(rng, 0, sig.var_count() - 1));
    };

    if (depth <= 0) return random_literal();

    int roll = rnd_int(rng, 0, 11);
    if (alpha_stratum && (roll == 2 || roll == 3)) roll = 0; // no dependence atoms
    if (inside_cf && (roll == 10 || roll == 11)) roll = 4;   // no nested counterfactuals
    if ((roll == 6) && or_budget <= 0) roll = 5;

    switch (roll) {
    case 0:
    case 1:
        return random_literal();
    case 2:
    case 3:
        return random_dep();
    case 4:
    case 5:
        return cod_and(generate_cod(sig, cfg, rng, depth - 1, or_budget, inside_cf,
                                    alpha_stratum),
                       generate_cod(sig, cfg, rng, depth - 1, or_budget, inside_cf,
                                    alpha_stratum));
    case 6: {
        --or_budget;
        return cod_or(generate_cod(sig, cfg, rng, depth - 1, or_budget, inside_cf,
                                   alpha_stratum),
                      generate_cod(sig, cfg, rng, depth - 1, or_budget, inside_cf,
                                   alpha_stratum));
    }
    case 7:
    case 8: {
        CodPtr antecedent =
            generate_cod(sig, cfg, rng, depth - 1, or_budget, inside_cf, true);
        CodPtr consequent =
            generate_cod(sig, cfg, rng, depth - 1, or_budget, inside_cf, alpha_stratum);
        return cod_selimp(std::move(antecedent), std::move(consequent));
    }
    case 9:
        return cod_and(random_literal(), random_literal());
    default: {
        int len = rnd_int(rng, 1, std::max(1, cfg.max_intervention));
        std::vector<Binding> bs;
        for (int i = 0; i < len; ++i) {
            VarId v = rnd_int(rng, 0, sig.var_count() - 1);
            bs.push_back({v, rnd_int(rng, 0, sig.range_size(v) - 1)});
        }
        return cod_cf(sig, std::move(bs),
                      generate_cod(sig, cfg, rng, depth - 1, or_budget, true, alpha_stratum));
    }
    }
}

} // namespace

CodPtr generate_cod_formula(const Signature& sig, const GeneratorConfig& cfg, Rng& rng,
                            int depth, int or_budget) {
    return generate_cod(sig, cfg, rng, depth, or_budget, false, false);
}

} // namespace ecmc
