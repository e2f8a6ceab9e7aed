#include "ecmc/semantics.hpp"

namespace ecmc {

namespace {

const char* clause_name(PakcKind k) {
    switch (k) {
    case PakcKind::Atom: return "atom";
    case PakcKind::Not: return "not";
    case PakcKind::And: return "and";
    case PakcKind::Know: return "know";
    case PakcKind::Announce: return "announce";
    case PakcKind::Intervene: return "intervene";
    }
    return "?";
}

// Evaluation works on (model, member) pairs so that K and announcements can
// re-point and restrict without constructing PointedModel wrappers.
bool eval_at(const EpistemicCausalModel& m, const Valuation& actual, const PakcPtr& f,
             Trace* trace, int depth);

bool eval_clause(const EpistemicCausalModel& m, const Valuation& actual, const PakcPtr& f,
                 Trace* trace, int depth) {
    const Signature& sig = m.signature();
    switch (f->kind()) {
    case PakcKind::Atom: {
        VarId v = f->atom_var();
        if (v < 0 || v >= sig.var_count() || f->atom_value() < 0 ||
            f->atom_value() >= sig.range_size(v))
            throw ValidationError("formula does not fit the model signature");
        return actual[v] == f->atom_value();
    }
    case PakcKind::Not:
        return !eval_at(m, actual, f->child(), trace, depth + 1);
    case PakcKind::And:
        // Both sides are traced even when the left one already settles the
        // verdict; the trace should show the whole formula.
        if (trace) {
            bool l = eval_at(m, actual, f->left(), trace, depth + 1);
            bool r = eval_at(m, actual, f->right(), trace, depth + 1);
            return l && r;
        }
        return eval_at(m, actual, f->left(), nullptr, depth) &&
               eval_at(m, actual, f->right(), nullptr, depth);
    case PakcKind::Know:
        for (const auto& member : m.team())
            if (!eval_at(m, member, f->child(), trace, depth + 1)) return false;
        return true;
    case PakcKind::Announce: {
        if (!eval_at(m, actual, f->announced(), trace, depth + 1))
            return true; // the announcement cannot be made truthfully here
        std::vector<bool> keep(m.team().size());
        for (std::size_t i = 0; i < m.team().size(); ++i)
            keep[i] = eval_at(m, m.team()[i], f->announced(), nullptr, depth + 1);
        EpistemicCausalModel restricted = restrict_team(m, keep);
        return eval_at(restricted, actual, f->child(), trace, depth + 1);
    }
    case PakcKind::Intervene: {
        StructuralFunctionSet fns = intervene_functions(m.functions(), f->assignment());
        Valuation moved = intervene_valuation(fns, actual, f->assignment());
        EpistemicCausalModel intervened = intervene_team(m, f->assignment());
        return eval_at(intervened, moved, f->child(), trace, depth + 1);
    }
    }
    throw ValidationError("unreachable formula kind");
}

bool eval_at(const EpistemicCausalModel& m, const Valuation& actual, const PakcPtr& f,
             Trace* trace, int depth) {
    if (!trace) return eval_clause(m, actual, f, nullptr, depth);
    // Reserve the line before recursing so the trace reads parent-first.
    std::size_t idx = trace->size();
    trace->push_back(TraceLine{depth, clause_name(f->kind()), print_pakc(f, m.signature()),
                               m.team().size(), false});
    bool verdict = eval_clause(m, actual, f, trace, depth);
    (*trace)[idx].verdict = verdict;
    return verdict;
}

} // namespace

bool eval(const PointedModel& p, const PakcPtr& f) {
    if (!f) throw ValidationError("null formula");
    return eval_at(p.model(), p.actual(), f, nullptr, 0);
}

bool eval(const PointedModel& p, const PakcPtr& f, Trace& trace) {
    if (!f) throw ValidationError("null formula");
    return eval_at(p.model(), p.actual(), f, &trace, 0);
}

bool valid_on_model(const EpistemicCausalModel& m, const PakcPtr& f) {
    for (const auto& member : m.team())
        if (!eval_at(m, member, f, nullptr, 0)) return false;
    return true;
}

std::string format_trace(const Trace& trace) {
    std::string out;
    for (const auto& line : trace) {
        out.append(static_cast<std::size_t>(line.depth) * 2, ' ');
        out += line.clause;
        out += " | ";
        out += line.formula;
        out += " | ";
        out += std::to_string(line.team_size);
        out += " | ";
        out += line.verdict ? "true" : "false";
        out += "\n";
    }
    return out;
}

} // namespace ecmc
