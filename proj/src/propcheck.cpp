#include "ecmc/propcheck.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ecmc/cod.hpp"
#include "ecmc/model_io.hpp"
#include "ecmc/reduction.hpp"
#include "ecmc/semantics.hpp"

namespace ecmc {

namespace {

std::string describe_case(const GeneratorConfig& cfg, std::uint64_t index,
                          const LoadedModel& model, const std::string& formula,
                          const std::string& what) {
    std::ostringstream os;
    os << "seed " << cfg.seed << ", case " << index << ": " << what << "\n"
       << "formula: " << formula << "\n"
       << "model: " << model_to_json(model).dump(2);
    return os.str();
}

CausalTeam team_of(const EpistemicCausalModel& m) {
    return CausalTeam(m.signature_ptr(), m.functions(), m.team());
}

} // namespace

CaseResult run_reduction_case(const GeneratorConfig& cfg, std::uint64_t index) {
    Rng rng = case_rng(cfg.seed, index);
    EpistemicCausalModel m = generate_model(cfg, rng);
    const Signature& sig = m.signature();
    PakcPtr f = generate_pakc_formula(sig, cfg, rng, rnd_int(rng, 0, cfg.max_depth));
    PakcPtr once = tr1(f);
    PakcPtr twice = reduce(f);

    CaseResult r;
    auto fail = [&](const std::string& what) {
        r.ok = false;
        r.detail = describe_case(cfg, index, to_loaded(m, std::nullopt),
                                 print_pakc(f, sig), what);
    };
    if (!within_fragment(once, Fragment::L1)) {
        fail("single rewrite left the intervention-flat fragment: " +
             print_pakc(once, sig));
        return r;
    }
    if (!within_fragment(twice, Fragment::Kc)) {
        fail("full reduction is not announcement-free: " + print_pakc(twice, sig));
        return r;
    }
    for (const Valuation& a : m.team()) {
        PointedModel p(m, a);
        bool v = eval(p, f);
        bool v1 = eval(p, once);
        bool v2 = eval(p, twice);
        if (v1 != v || v2 != v) {
            std::ostringstream os;
            os << "verdicts diverge at " << a.to_string(sig) << ": formula " << v
               << ", after tr1 " << v1 << " (" << print_pakc(once, sig) << ")"
               << ", after reduce " << v2 << " (" << print_pakc(twice, sig) << ")";
            fail(os.str());
            return r;
        }
    }
    return r;
}

namespace {

CaseResult run_correspondence_case(const GeneratorConfig& cfg, std::uint64_t index,
                                   bool local) {
    Rng rng = case_rng(cfg.seed, index);
    EpistemicCausalModel m = generate_model(cfg, rng);
    const Signature& sig = m.signature();
    CausalTeam t = team_of(m);
    CodPtr f = generate_cod_formula(sig, cfg, rng, rnd_int(rng, 0, cfg.max_depth), 2);

    CaseResult r;
    EquivalenceReport rep = local ? check_local_equivalence(t, f, cfg.caps)
                                  : check_global_equivalence(t, f, cfg.caps);
    bool ok = rep.agrees && (!local || rep.pointing_invariant);
    if (!ok) {
        r.ok = false;
        r.detail = describe_case(cfg, index, to_loaded(t), print_cod(f, sig), rep.detail);
    }
    return r;
}

} // namespace

CaseResult run_global_case(const GeneratorConfig& cfg, std::uint64_t index) {
    return run_correspondence_case(cfg, index, false);
}

CaseResult run_local_case(const GeneratorConfig& cfg, std::uint64_t index) {
    return run_correspondence_case(cfg, index, true);
}

CaseResult run_axioms_case(const GeneratorConfig& cfg, std::uint64_t index,
                           int per_schema) {
    Rng rng = case_rng(cfg.seed, index);
    EpistemicCausalModel m = generate_model(cfg, rng);
    const Signature& sig = m.signature();

    CaseResult r;
    for (const std::string& schema : axiom_schemas()) {
        AxiomInstanceRequest req;
        req.schema = schema;
        req.signature = m.signature_ptr();
        req.max_intervention = cfg.max_intervention;
        req.max_depth = 3;
        req.seed = rng();
        req.count = per_schema;
        std::vector<PakcPtr> instances = axiom_instances(req);
        if (static_cast<int>(instances.size()) < per_schema) {
            r.ok = false;
            r.detail = describe_case(cfg, index, to_loaded(m, std::nullopt), schema,
                                     "signature cannot instantiate the schema " +
                                         std::to_string(instances.size()) + "/" +
                                         std::to_string(per_schema) + " times");
            return r;
        }
        for (const PakcPtr& inst : instances) {
            if (!valid_on_model(m, inst)) {
                r.ok = false;
                r.detail = describe_case(cfg, index, to_loaded(m, std::nullopt),
                                         print_pakc(inst, sig),
                                         "instance of " + schema + " is not valid");
                return r;
            }
        }
    }
    return r;
}

CaseResult run_downward_case(const GeneratorConfig& cfg, std::uint64_t index) {
    Rng rng = case_rng(cfg.seed, index);
    EpistemicCausalModel m = generate_model(cfg, rng);
    const Signature& sig = m.signature();
    CausalTeam t = team_of(m);
    int depth = rnd_int(rng, 0, std::min(cfg.max_depth, 4));
    CodPtr f = generate_cod_formula(sig, cfg, rng, depth, 1);

    CaseResult r;
    auto fail = [&](const std::string& what, const std::string& formula) {
        r.ok = false;
        r.detail = describe_case(cfg, index, to_loaded(t), formula, what);
    };

    // Downward closure: truth on the team implies truth on every subteam.
    if (team_eval(t, f, cfg.caps)) {
        const std::vector<Valuation>& full = t.team();
        for (std::uint64_t mask = 0; mask + 1 < (1ull << full.size()); ++mask) {
            std::vector<Valuation> sub;
            for (std::size_t i = 0; i < full.size(); ++i)
                if (mask & (1ull << i)) sub.push_back(full[i]);
            CausalTeam st(m.signature_ptr(), m.functions(), std::move(sub));
            if (!team_eval(st, f, cfg.caps)) {
                std::ostringstream os;
                os << "subteam of " << std::popcount(mask) << "/" << full.size()
                   << " members (mask " << mask << ") loses the formula";
                fail(os.str(), print_cod(f, sig));
                return r;
            }
        }
    }

    // Flat-translation lemmas, on a dependence-free formula.  Singleton
    // correctness: the translation's pointed verdict matches the team
    // verdict on that member alone.  Selection equality: the translated
    // antecedent selects exactly the members whose singletons satisfy it.
    GeneratorConfig flat_cfg = cfg;
    CodPtr alpha = generate_cod_formula(sig, flat_cfg, rng, std::min(depth, 3), 1);
    if (contains_dep(alpha)) alpha = cod_eq(sig, 0, 0);
    PakcPtr e_alpha = e_translate(alpha, sig);
    for (const Valuation& a : m.team()) {
        bool pointed = eval(PointedModel(m, a), e_alpha);
        bool singleton = team_eval(CausalTeam(m.signature_ptr(), m.functions(), {a}),
                                   alpha, cfg.caps);
        if (pointed != singleton) {
            std::ostringstream os;
            os << "flat translation " << print_pakc(e_alpha, sig) << " gives " << pointed
               << " at " << a.to_string(sig) << " but the singleton team gives "
               << singleton;
            fail(os.str(), print_cod(alpha, sig));
            return r;
        }
    }
    std::vector<Valuation> by_translation, by_selection;
    for (const Valuation& a : m.team()) {
        if (eval(PointedModel(m, a), e_alpha)) by_translation.push_back(a);
        if (team_eval(CausalTeam(m.signature_ptr(), m.functions(), {a}), alpha, cfg.caps))
            by_selection.push_back(a);
    }
    if (by_translation != by_selection) {
        fail("translated antecedent selects a different subteam than the semantics",
             print_cod(alpha, sig));
        return r;
    }
    return r;
}

RunSummary run_cases(const GeneratorConfig& cfg, std::uint64_t count, int jobs,
                     const CaseFn& one) {
    jobs = std::clamp(jobs, 1, 256);
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> skipped{0};
    std::mutex mu;
    std::map<std::uint64_t, std::string> failures;

    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            CaseResult res;
            try {
                res = one(cfg, i);
            } catch (const CapExceeded&) {
                res.skipped = true;
            } catch (const std::exception& e) {
                res.ok = false;
                res.detail = "seed " + std::to_string(cfg.seed) + ", case " +
                             std::to_string(i) + ": exception: " + e.what();
            }
            if (res.skipped) {
                skipped.fetch_add(1);
            } else if (!res.ok) {
                std::lock_guard<std::mutex> lock(mu);
                failures.emplace(i, std::move(res.detail));
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    RunSummary s;
    s.skipped = skipped.load();
    s.failed = failures.size();
    s.passed = count - s.skipped - s.failed;
    if (!failures.empty()) {
        s.first_failed_index = failures.begin()->first;
        s.detail = failures.begin()->second;
    }
    return s;
}

} // namespace ecmc
