#include "ecmc/reduction.hpp"

#include "ecmc/generators.hpp"

namespace ecmc {

// Both rewritings terminate by the usual reduction-law measure: each step
// either strictly shrinks the body under the eliminated operator or
// replaces an innermost announcement by its announcement-free equivalent.

PakcPtr tr1(const PakcPtr& f) {
    if (!f) throw ValidationError("null formula");
    switch (f->kind()) {
    case PakcKind::Atom:
        return f;
    case PakcKind::Not:
        return neg(tr1(f->child()));
    case PakcKind::And:
        return conj(tr1(f->left()), tr1(f->right()));
    case PakcKind::Know:
        return know(tr1(f->child()));
    case PakcKind::Announce:
        // Announcements outside interventions stay; only their parts are
        // rewritten.
        return announce(tr1(f->announced()), tr1(f->child()));
    case PakcKind::Intervene: {
        const InterventionAssignment& a = f->assignment();
        const PakcPtr& g = f->child();
        switch (g->kind()) {
        case PakcKind::Atom:
            return f;
        case PakcKind::Not:
            // Intervention commutes with negation.
            return tr1(neg(intervene(a, g->child())));
        case PakcKind::And:
            // Intervention distributes over conjunction.
            return tr1(conj(intervene(a, g->left()), intervene(a, g->right())));
        case PakcKind::Know:
            // Intervention commutes with knowledge.
            return tr1(know(intervene(a, g->child())));
        case PakcKind::Announce: {
            const PakcPtr& psi = g->announced();
            const PakcPtr& h = g->child();
            switch (h->kind()) {
            case PakcKind::Atom:
                // [psi!]p == psi -> p
                return tr1(intervene(a, implies(psi, h)));
            case PakcKind::Not:
                // [psi!]~d == psi -> ~[psi!]d
                return tr1(intervene(a, implies(psi, neg(announce(psi, h->child())))));
            case PakcKind::And:
                // [psi!](d1 & d2) == [psi!]d1 & [psi!]d2
                return tr1(intervene(
                    a, conj(announce(psi, h->left()), announce(psi, h->right()))));
            case PakcKind::Know:
                // [psi!]K d == psi -> K(psi -> [psi!]d)
                return tr1(intervene(
                    a, implies(psi, know(implies(psi, announce(psi, h->child()))))));
            case PakcKind::Announce:
                // Nested announcement: eliminate the inner one first.  The
                // inner announcement is intervention-free, so the
                // announcement-elimination rewriting applies to it as is.
                return tr1(intervene(a, announce(psi, tr2(h))));
            case PakcKind::Intervene:
                break; // impossible: construction keeps bodies intervention-free
            }
            throw ValidationError("malformed intervention body");
        }
        case PakcKind::Intervene:
            break; // impossible, as above
        }
        throw ValidationError("malformed intervention body");
    }
    }
    throw ValidationError("unreachable formula kind");
}

PakcPtr tr2(const PakcPtr& f) {
    if (!f) throw ValidationError("null formula");
    switch (f->kind()) {
    case PakcKind::Atom:
        return f;
    case PakcKind::Not:
        return neg(tr2(f->child()));
    case PakcKind::And:
        return conj(tr2(f->left()), tr2(f->right()));
    case PakcKind::Know:
        return know(tr2(f->child()));
    case PakcKind::Intervene:
        if (f->child()->kind() != PakcKind::Atom)
            throw ValidationError(
                "announcement elimination requires interventions over single atoms");
        return f;
    case PakcKind::Announce: {
        const PakcPtr& xi = f->announced();
        const PakcPtr& g = f->child();
        switch (g->kind()) {
        case PakcKind::Atom:
        case PakcKind::Intervene:
            // [xi!]p == xi -> p for atomic p, intervened or not.
            if (g->kind() == PakcKind::Intervene && g->child()->kind() != PakcKind::Atom)
                throw ValidationError(
                    "announcement elimination requires interventions over single atoms");
            return tr2(implies(xi, g));
        case PakcKind::Not:
            return tr2(implies(xi, neg(announce(xi, g->child()))));
        case PakcKind::And:
            return tr2(conj(announce(xi, g->left()), announce(xi, g->right())));
        case PakcKind::Know:
            return tr2(implies(xi, know(implies(xi, announce(xi, g->child())))));
        case PakcKind::Announce:
            // Innermost first.
            return tr2(announce(xi, tr2(g)));
        }
        throw ValidationError("unreachable formula kind");
    }
    }
    throw ValidationError("unreachable formula kind");
}

PakcPtr reduce(const PakcPtr& f) { return tr2(tr1(f)); }

namespace {

// Random distinct variables, optionally constrained.
std::vector<VarId> pick_distinct(const Signature& sig, Rng& rng, int n,
                                 const std::vector<VarId>& forbidden = {}) {
    std::vector<VarId> pool;
    for (VarId v = 0; v < sig.var_count(); ++v)
        if (std::find(forbidden.begin(), forbidden.end(), v) == forbidden.end())
            pool.push_back(v);
    if (static_cast<int>(pool.size()) < n) return {};
    for (int i = 0; i < n; ++i) {
        int j = i + rnd_int(rng, 0, static_cast<int>(pool.size()) - 1 - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n);
    return pool;
}

std::optional<VarId> pick_wide_var(const Signature& sig, Rng& rng,
                                   const std::vector<VarId>& forbidden = {}) {
    std::vector<VarId> pool;
    for (VarId v = 0; v < sig.var_count(); ++v)
        if (sig.range_size(v) >= 2 &&
            std::find(forbidden.begin(), forbidden.end(), v) == forbidden.end())
            pool.push_back(v);
    if (pool.empty()) return std::nullopt;
    return pool[rnd_int(rng, 0, static_cast<int>(pool.size()) - 1)];
}

ValId pick_value(const Signature& sig, Rng& rng, VarId v) {
    return rnd_int(rng, 0, sig.range_size(v) - 1);
}

ValId pick_other_value(const Signature& sig, Rng& rng, VarId v, ValId not_this) {
    ValId x = rnd_int(rng, 0, sig.range_size(v) - 2);
    return x >= not_this ? x + 1 : x;
}

struct InstanceContext {
    const Signature& sig;
    const GeneratorConfig& cfg;
    Rng& rng;

    InterventionAssignment assignment(int min_len, const std::vector<VarId>& forbidden) {
        int most = std::min(cfg.max_intervention, static_cast<int>(sig.var_count()) -
                                                      static_cast<int>(forbidden.size()));
        if (most < min_len) return InterventionAssignment{};
        int len = rnd_int(rng, min_len, most);
        std::vector<Binding> bs;
        for (VarId v : pick_distinct(sig, rng, len, forbidden))
            bs.push_back({v, pick_value(sig, rng, v)});
        return InterventionAssignment::checked(std::move(bs), sig);
    }

    PakcPtr formula(bool gamma) {
        return generate_pakc_formula(sig, cfg, rng, rnd_int(rng, 0, cfg.max_depth), gamma);
    }
};

// One instance of the named schema, or nullptr when the signature cannot
// support it.
PakcPtr instance_of(const std::string& schema, InstanceContext& ctx) {
    const Signature& sig = ctx.sig;
    Rng& rng = ctx.rng;

    if (schema == "K") {
        PakcPtr a = ctx.formula(false), b = ctx.formula(false);
        return implies(know(implies(a, b)), implies(know(a), know(b)));
    }
    if (schema == "T") {
        PakcPtr a = ctx.formula(false);
        return implies(know(a), a);
    }
    if (schema == "4") {
        PakcPtr a = ctx.formula(false);
        return implies(know(a), know(know(a)));
    }
    if (schema == "5") {
        PakcPtr a = ctx.formula(false);
        return implies(neg(know(a)), know(neg(know(a))));
    }
    if (schema == "HP1") {
        auto z = pick_wide_var(sig, rng);
        if (!z) return nullptr;
        InterventionAssignment a = ctx.assignment(0, {*z});
        ValId z1 = pick_value(sig, rng, *z);
        ValId z2 = pick_other_value(sig, rng, *z, z1);
        return implies(intervene(a, atom(sig, *z, z1)), neg(intervene(a, atom(sig, *z, z2))));
    }
    if (schema == "HP2") {
        auto zs = pick_distinct(sig, rng, 1);
        if (zs.empty()) return nullptr;
        VarId z = zs[0];
        InterventionAssignment a = ctx.assignment(0, {z});
        std::vector<PakcPtr> cases;
        for (ValId x = 0; x < sig.range_size(z); ++x)
            cases.push_back(intervene(a, atom(sig, z, x)));
        return disj_all(cases, sig);
    }
    if (schema == "HP3") {
        auto vars = pick_distinct(sig, rng, 2);
        if (vars.empty()) return nullptr;
        VarId z = vars[0], w = vars[1];
        InterventionAssignment a = ctx.assignment(0, {z, w});
        ValId zv = pick_value(sig, rng, z);
        ValId wv = pick_value(sig, rng, w);
        InterventionAssignment az = a.extended({z, zv}, sig);
        return implies(conj(intervene(a, atom(sig, z, zv)), intervene(a, atom(sig, w, wv))),
                       intervene(az, atom(sig, w, wv)));
    }
    if (schema == "HP4") {
        auto zs = pick_distinct(sig, rng, 1);
        if (zs.empty()) return nullptr;
        VarId z = zs[0];
        InterventionAssignment a = ctx.assignment(0, {z});
        ValId zv = pick_value(sig, rng, z);
        return intervene(a.extended({z, zv}, sig), atom(sig, z, zv));
    }
    if (schema == "HP5") {
        auto vars = pick_distinct(sig, rng, 2);
        if (vars.empty()) return nullptr;
        VarId z = vars[0], w = vars[1];
        InterventionAssignment a = ctx.assignment(0, {z, w});
        ValId zv = pick_value(sig, rng, z);
        ValId wv = pick_value(sig, rng, w);
        return implies(conj(intervene(a.extended({z, zv}, sig), atom(sig, w, wv)),
                            intervene(a.extended({w, wv}, sig), atom(sig, z, zv))),
                       intervene(a, atom(sig, w, wv)));
    }
    if (schema == "HP6") {
        int longest = std::min(3, static_cast<int>(sig.var_count()) - 1);
        if (longest < 1) return nullptr;
        int k = rnd_int(rng, 1, longest);
        auto chain = pick_distinct(sig, rng, k + 1);
        if (chain.empty()) return nullptr;
        // Chain links must target endogenous-or-any variables; the cause
        // formula itself only needs distinct endpoints, but links into a
        // variable equal to the previous one are already excluded by
        // distinctness.
        std::vector<PakcPtr> links;
        ExpansionCaps caps = ctx.cfg.caps;
        for (int i = 0; i + 1 <= k; ++i)
            links.push_back(causes_formula(sig, chain[i], chain[i + 1], caps));
        return implies(conj_all(links, sig), neg(causes_formula(sig, chain[k], chain[0], caps)));
    }
    if (schema == "RH1") {
        InterventionAssignment a = ctx.assignment(0, {});
        PakcPtr g1 = ctx.formula(true), g2 = ctx.formula(true);
        return iff(intervene(a, conj(g1, g2)), conj(intervene(a, g1), intervene(a, g2)));
    }
    if (schema == "RH2") {
        InterventionAssignment a = ctx.assignment(0, {});
        PakcPtr g = ctx.formula(true);
        return iff(intervene(a, neg(g)), neg(intervene(a, g)));
    }
    if (schema == "EX") {
        std::vector<VarId> exo;
        for (VarId u = 0; u < sig.exo_count(); ++u) exo.push_back(u);
        if (exo.empty()) return nullptr;
        VarId u = exo[rnd_int(rng, 0, static_cast<int>(exo.size()) - 1)];
        InterventionAssignment a = ctx.assignment(0, {u});
        ValId uv = pick_value(sig, rng, u);
        return iff(atom(sig, u, uv), intervene(a, atom(sig, u, uv)));
    }
    if (schema == "CM") {
        InterventionAssignment a = ctx.assignment(0, {});
        PakcPtr g = ctx.formula(true);
        return iff(intervene(a, know(g)), know(intervene(a, g)));
    }
    if (schema == "RP1") {
        PakcPtr psi = ctx.formula(false);
        // Alternate between empty and nonempty interventions: the schema is
        // stated for a possibly empty binding list, and with the empty list
        // it degenerates to the bare-atom case.
        InterventionAssignment a =
            rnd_int(rng, 0, 1) == 0 ? InterventionAssignment{} : ctx.assignment(1, {});
        auto zs = pick_distinct(sig, rng, 1);
        VarId z = zs[0];
        ValId zv = pick_value(sig, rng, z);
        PakcPtr core = intervene(a, atom(sig, z, zv));
        return iff(announce(psi, core), implies(psi, core));
    }
    if (schema == "RP2") {
        PakcPtr psi = ctx.formula(false), phi = ctx.formula(false);
        return iff(announce(psi, neg(phi)), implies(psi, neg(announce(psi, phi))));
    }
    if (schema == "RP3") {
        PakcPtr psi = ctx.formula(false), a = ctx.formula(false), b = ctx.formula(false);
        return iff(announce(psi, conj(a, b)), conj(announce(psi, a), announce(psi, b)));
    }
    if (schema == "RP4") {
        PakcPtr psi = ctx.formula(false), phi = ctx.formula(false);
        return iff(announce(psi, know(phi)),
                   implies(psi, know(implies(psi, announce(psi, phi)))));
    }
    throw ValidationError("unknown axiom schema: " + schema);
}

} // namespace

const std::vector<std::string>& axiom_schemas() {
    static const std::vector<std::string> schemas = {
        "HP1", "HP2", "HP3", "HP4", "HP5", "HP6", "RH1", "RH2", "EX",
        "K",   "T",   "4",   "5",   "CM",  "RP1", "RP2", "RP3", "RP4"};
    return schemas;
}

std::vector<PakcPtr> axiom_instances(const AxiomInstanceRequest& req) {
    if (!req.signature) throw ValidationError("null signature");
    if (req.count < 0 || req.max_intervention < 0 || req.max_depth < 0)
        throw ValidationError("axiom instance bounds must be nonnegative");

    GeneratorConfig cfg;
    cfg.max_depth = req.max_depth;
    cfg.max_intervention = req.max_intervention;
    Rng rng = case_rng(req.seed, 0x1a5f);

    InstanceContext ctx{*req.signature, cfg, rng};
    std::vector<PakcPtr> out;
    for (int i = 0; i < req.count; ++i) {
        PakcPtr inst = instance_of(req.schema, ctx);
        if (!inst) break; // unsupported on this signature; no use retrying
        out.push_back(std::move(inst));
    }
    return out;
}

} // namespace ecmc
