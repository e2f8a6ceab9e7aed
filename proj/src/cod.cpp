#include "ecmc/cod.hpp"

#include <algorithm>

#include "ecmc/enumerate.hpp"
#include "ecmc/epistemic.hpp"
#include "ecmc/lexer.hpp"
#include "ecmc/semantics.hpp"

namespace ecmc {

namespace {

CodPtr make_node(CodFormula&& node) {
    return std::make_shared<const CodFormula>(std::move(node));
}

void check_literal(const Signature& sig, VarId var, ValId value) {
    if (var < 0 || var >= sig.var_count())
        throw ValidationError("literal over unknown variable");
    if (value < 0 || value >= sig.range_size(var))
        throw ValidationError("literal value out of range for variable " + sig.var_name(var));
}

} // namespace

CodPtr cod_eq(const Signature& sig, VarId var, ValId value) {
    check_literal(sig, var, value);
    CodFormula f;
    f.kind_ = CodKind::Eq;
    f.var_ = var;
    f.value_ = value;
    return make_node(std::move(f));
}

CodPtr cod_neq(const Signature& sig, VarId var, ValId value) {
    check_literal(sig, var, value);
    CodFormula f;
    f.kind_ = CodKind::Neq;
    f.var_ = var;
    f.value_ = value;
    return make_node(std::move(f));
}

CodPtr cod_dep(const Signature& sig, std::vector<VarId> xs, VarId y) {
    if (xs.empty()) throw ValidationError("dependence atom needs at least one input");
    for (VarId v : xs) {
        if (v < 0 || v >= sig.var_count())
            throw ValidationError("dependence atom over unknown variable");
        if (std::count(xs.begin(), xs.end(), v) != 1)
            throw ValidationError("duplicate input in dependence atom: " + sig.var_name(v));
    }
    if (y < 0 || y >= sig.var_count())
        throw ValidationError("dependence atom over unknown variable");
    CodFormula f;
    f.kind_ = CodKind::Dep;
    f.xs_ = std::move(xs);
    f.y_ = y;
    return make_node(std::move(f));
}

CodPtr cod_and(CodPtr a, CodPtr b) {
    if (!a || !b) throw ValidationError("null formula");
    CodFormula f;
    f.kind_ = CodKind::And;
    f.left_ = std::move(a);
    f.right_ = std::move(b);
    return make_node(std::move(f));
}

CodPtr cod_or(CodPtr a, CodPtr b) {
    if (!a || !b) throw ValidationError("null formula");
    CodFormula f;
    f.kind_ = CodKind::Or;
    f.left_ = std::move(a);
    f.right_ = std::move(b);
    return make_node(std::move(f));
}

CodPtr cod_selimp(CodPtr antecedent, CodPtr consequent) {
    if (!antecedent || !consequent) throw ValidationError("null formula");
    if (contains_dep(antecedent))
        throw ValidationError("selective-implication antecedent may not contain dependence atoms");
    CodFormula f;
    f.kind_ = CodKind::SelImp;
    f.left_ = std::move(antecedent);
    f.right_ = std::move(consequent);
    return make_node(std::move(f));
}

CodPtr cod_cf(const Signature& sig, std::vector<Binding> bindings, CodPtr body) {
    if (!body) throw ValidationError("null formula");
    for (const auto& b : bindings) {
        if (b.var < 0 || b.var >= sig.var_count())
            throw ValidationError("counterfactual binds unknown variable");
        if (b.value < 0 || b.value >= sig.range_size(b.var))
            throw ValidationError("counterfactual value out of range for variable " +
                                  sig.var_name(b.var));
    }
    CodFormula f;
    f.kind_ = CodKind::Cf;
    f.bindings_ = std::move(bindings);
    f.right_ = std::move(body);
    return make_node(std::move(f));
}

bool CodFormula::operator==(const CodFormula& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
    case CodKind::Eq:
    case CodKind::Neq:
        return var_ == other.var_ && value_ == other.value_;
    case CodKind::Dep:
        return xs_ == other.xs_ && y_ == other.y_;
    case CodKind::And:
    case CodKind::Or:
    case CodKind::SelImp:
        return *left_ == *other.left_ && *right_ == *other.right_;
    case CodKind::Cf:
        return bindings_ == other.bindings_ && *right_ == *other.right_;
    }
    return false;
}

bool cod_equal(const CodPtr& a, const CodPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

bool contains_dep(const CodPtr& f) {
    switch (f->kind()) {
    case CodKind::Eq:
    case CodKind::Neq: return false;
    case CodKind::Dep: return true;
    case CodKind::And:
    case CodKind::Or:
    case CodKind::SelImp: return contains_dep(f->left()) || contains_dep(f->right());
    case CodKind::Cf: return contains_dep(f->body());
    }
    return false;
}

namespace {

bool contains_cf(const CodPtr& f) {
    switch (f->kind()) {
    case CodKind::Eq:
    case CodKind::Neq:
    case CodKind::Dep: return false;
    case CodKind::And:
    case CodKind::Or:
    case CodKind::SelImp: return contains_cf(f->left()) || contains_cf(f->right());
    case CodKind::Cf: return true;
    }
    return false;
}

} // namespace

bool is_non_nested(const CodPtr& f) {
    switch (f->kind()) {
    case CodKind::Eq:
    case CodKind::Neq:
    case CodKind::Dep: return true;
    case CodKind::And:
    case CodKind::Or:
    case CodKind::SelImp: return is_non_nested(f->left()) && is_non_nested(f->right());
    case CodKind::Cf: return !contains_cf(f->body()) ;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Printing and parsing

namespace {

// Precedence, loosest first: |> (1), \/ (2), & (3), prefix (4), atoms (5).
void print_cod_rec(const CodFormula& f, const Signature& sig, int level, std::string& out) {
    auto wrap = [&](int prec, auto&& bodyfn) {
        bool parens = prec < level;
        if (parens) out += "(";
        bodyfn();
        if (parens) out += ")";
    };

    switch (f.kind()) {
    case CodKind::Eq:
        out += sig.var_name(f.lit_var()) + "=" + sig.value_label(f.lit_var(), f.lit_value());
        break;
    case CodKind::Neq:
        out += sig.var_name(f.lit_var()) + " != " +
               sig.value_label(f.lit_var(), f.lit_value());
        break;
    case CodKind::Dep: {
        out += "dep(";
        bool first = true;
        for (VarId v : f.dep_inputs()) {
            if (!first) out += ", ";
            first = false;
            out += sig.var_name(v);
        }
        out += "; " + sig.var_name(f.dep_output()) + ")";
        break;
    }
    case CodKind::And:
        wrap(3, [&] {
            print_cod_rec(*f.left(), sig, 4, out);
            out += " & ";
            print_cod_rec(*f.right(), sig, 3, out);
        });
        break;
    case CodKind::Or:
        wrap(2, [&] {
            print_cod_rec(*f.left(), sig, 3, out);
            out += " \\/ ";
            print_cod_rec(*f.right(), sig, 2, out);
        });
        break;
    case CodKind::SelImp:
        wrap(1, [&] {
            print_cod_rec(*f.left(), sig, 2, out);
            out += " |> ";
            print_cod_rec(*f.right(), sig, 1, out);
        });
        break;
    case CodKind::Cf:
        wrap(4, [&] {
            out += "[[";
            bool first = true;
            for (const auto& b : f.bindings()) {
                if (!first) out += ", ";
                first = false;
                out += sig.var_name(b.var) + ":=" + sig.value_label(b.var, b.value);
            }
            out += "]] ";
            print_cod_rec(*f.body(), sig, 4, out);
        });
        break;
    }
}

class CodParser {
public:
    CodParser(std::string_view text, const Signature& sig)
        : toks_(lex(text, LexMode::Team)), sig_(sig) {}

    CodPtr parse() {
        CodPtr f = formula();
        if (peek().kind != Tok::End)
            fail(std::string("unexpected ") + token_name(peek().kind));
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    Token expect(Tok kind) {
        if (peek().kind != kind)
            fail(std::string("expected ") + token_name(kind) + ", found " +
                 token_name(peek().kind));
        return take();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().pos);
    }

    CodPtr formula() { // selective implication, right-associative
        CodPtr lhs = disjunction();
        if (peek().kind == Tok::SelArrow) {
            take();
            return cod_selimp(std::move(lhs), formula());
        }
        return lhs;
    }

    CodPtr disjunction() {
        std::vector<CodPtr> parts{conjunction()};
        while (peek().kind == Tok::SplitOr) {
            take();
            parts.push_back(conjunction());
        }
        return fold_right(parts, cod_or);
    }

    CodPtr conjunction() {
        std::vector<CodPtr> parts{unary()};
        while (peek().kind == Tok::Amp) {
            take();
            parts.push_back(unary());
        }
        return fold_right(parts, cod_and);
    }

    static CodPtr fold_right(std::vector<CodPtr>& parts, CodPtr (*combine)(CodPtr, CodPtr)) {
        CodPtr out = parts.back();
        for (auto i = static_cast<std::ptrdiff_t>(parts.size()) - 2; i >= 0; --i)
            out = combine(parts[i], std::move(out));
        return out;
    }

    CodPtr unary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::LLBrack: {
            take();
            std::vector<Binding> bs;
            if (peek().kind != Tok::RRBrack) bs = bindings();
            expect(Tok::RRBrack);
            return cod_cf(sig_, std::move(bs), unary());
        }
        case Tok::LParen: {
            take();
            CodPtr f = formula();
            expect(Tok::RParen);
            return f;
        }
        case Tok::Ident:
            if (t.text == "dep" && peek(1).kind == Tok::LParen) return dependence();
            return literal();
        default:
            fail(std::string("expected a formula, found ") + token_name(t.kind));
        }
    }

    CodPtr dependence() {
        take(); // dep
        expect(Tok::LParen);
        std::vector<VarId> xs{resolve_var(expect(Tok::Ident))};
        while (peek().kind == Tok::Comma) {
            take();
            xs.push_back(resolve_var(expect(Tok::Ident)));
        }
        expect(Tok::Semi);
        VarId y = resolve_var(expect(Tok::Ident));
        expect(Tok::RParen);
        return cod_dep(sig_, std::move(xs), y);
    }

    CodPtr literal() {
        Token var = expect(Tok::Ident);
        bool negated;
        if (peek().kind == Tok::Eq)
            negated = false;
        else if (peek().kind == Tok::NotEq)
            negated = true;
        else
            fail(std::string("expected '=' or '!=', found ") + token_name(peek().kind));
        take();
        Token val = value_token();
        VarId v = resolve_var(var);
        ValId x = resolve_value(v, val);
        return negated ? cod_neq(sig_, v, x) : cod_eq(sig_, v, x);
    }

    std::vector<Binding> bindings() {
        std::vector<Binding> bs;
        while (true) {
            Token var = expect(Tok::Ident);
            expect(Tok::Assign);
            Token val = value_token();
            VarId v = resolve_var(var);
            bs.push_back({v, resolve_value(v, val)});
            if (peek().kind != Tok::Comma) break;
            take();
        }
        return bs;
    }

    Token value_token() {
        if (peek().kind != Tok::Ident && peek().kind != Tok::Number)
            fail(std::string("expected a value, found ") + token_name(peek().kind));
        return take();
    }

    VarId resolve_var(const Token& t) const {
        if (auto v = sig_.find_var(t.text)) return *v;
        throw ParseError("unknown variable '" + t.text + "'", t.pos);
    }

    ValId resolve_value(VarId v, const Token& t) const {
        if (auto x = sig_.find_value(v, t.text)) return *x;
        throw ParseError("value '" + t.text + "' not in range of variable " + sig_.var_name(v),
                         t.pos);
    }

    std::vector<Token> toks_;
    const Signature& sig_;
    std::size_t pos_ = 0;
};

} // namespace

std::string print_cod(const CodPtr& f, const Signature& sig) {
    if (!f) throw ValidationError("null formula");
    std::string out;
    print_cod_rec(*f, sig, 1, out);
    return out;
}

CodPtr parse_cod(std::string_view text, const Signature& sig) {
    return CodParser(text, sig).parse();
}

// ---------------------------------------------------------------------------
// Causal teams and satisfaction

CausalTeam::CausalTeam(SignaturePtr sig, StructuralFunctionSet fns, std::vector<Valuation> team)
    : sig_(std::move(sig)), fns_(std::move(fns)), team_(std::move(team)) {
    if (!sig_) throw ValidationError("null signature");
    if (!(*sig_ == fns_.signature()))
        throw ValidationError("function set signature mismatch");
    if (!is_recursive(fns_))
        throw ValidationError("causal team requires a recursive function set");
    std::sort(team_.begin(), team_.end());
    team_.erase(std::unique(team_.begin(), team_.end()), team_.end());
    for (const auto& val : team_)
        if (!complies(val, fns_))
            throw ValidationError("team member " + val.to_string(*sig_) +
                                  " does not comply with the structural functions");
}

bool CausalTeam::operator==(const CausalTeam& other) const {
    return *sig_ == *other.sig_ && fns_ == other.fns_ && team_ == other.team_;
}

namespace {

// Collapses duplicate bindings; nullopt when some variable is bound to two
// different values (the counterfactual is then vacuously true).
std::optional<InterventionAssignment> consistent_assignment(const std::vector<Binding>& bs,
                                                            const Signature& sig) {
    std::vector<Binding> uniq;
    for (const auto& b : bs) {
        bool dup = false;
        for (const auto& u : uniq) {
            if (u.var == b.var) {
                if (u.value != b.value) return std::nullopt;
                dup = true;
                break;
            }
        }
        if (!dup) uniq.push_back(b);
    }
    return InterventionAssignment::checked(std::move(uniq), sig);
}

bool eval_team(const StructuralFunctionSet& fns, const std::vector<Valuation>& team,
               const CodPtr& f, const ExpansionCaps& caps) {
    const Signature& sig = fns.signature();
    switch (f->kind()) {
    case CodKind::Eq:
        for (const auto& s : team)
            if (s[f->lit_var()] != f->lit_value()) return false;
        return true;
    case CodKind::Neq:
        for (const auto& s : team)
            if (s[f->lit_var()] == f->lit_value()) return false;
        return true;
    case CodKind::Dep: {
        const auto& xs = f->dep_inputs();
        VarId y = f->dep_output();
        for (std::size_t i = 0; i < team.size(); ++i) {
            for (std::size_t j = i + 1; j < team.size(); ++j) {
                bool same_inputs = true;
                for (VarId x : xs)
                    if (team[i][x] != team[j][x]) { same_inputs = false; break; }
                if (same_inputs && team[i][y] != team[j][y]) return false;
            }
        }
        return true;
    }
    case CodKind::And:
        return eval_team(fns, team, f->left(), caps) && eval_team(fns, team, f->right(), caps);
    case CodKind::Or: {
        std::size_t n = team.size();
        if (n > static_cast<std::size_t>(caps.max_or_team))
            throw CapExceeded("team too large for disjunction split enumeration");
        // Disjoint covers suffice: the language is downward closed, so any
        // witnessing cover can be thinned to a partition.
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<Valuation> first, second;
            for (std::size_t i = 0; i < n; ++i)
                (mask & (std::uint64_t{1} << i) ? first : second).push_back(team[i]);
            if (eval_team(fns, first, f->left(), caps) &&
                eval_team(fns, second, f->right(), caps))
                return true;
        }
        return false;
    }
    case CodKind::SelImp: {
        std::vector<Valuation> kept;
        for (const auto& s : team)
            if (eval_team(fns, std::vector<Valuation>{s}, f->antecedent(), caps))
                kept.push_back(s);
        return eval_team(fns, kept, f->body(), caps);
    }
    case CodKind::Cf: {
        auto a = consistent_assignment(f->bindings(), sig);
        if (!a) return true; // contradictory antecedent: vacuous
        StructuralFunctionSet intervened = intervene_functions(fns, *a);
        std::vector<Valuation> image;
        image.reserve(team.size());
        for (const auto& s : team)
            image.push_back(intervene_valuation(intervened, s, *a));
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        return eval_team(intervened, image, f->body(), caps);
    }
    }
    throw ValidationError("unreachable formula kind");
}

} // namespace

bool team_eval(const CausalTeam& t, const CodPtr& f, const ExpansionCaps& caps) {
    if (!f) throw ValidationError("null formula");
    return eval_team(t.functions(), t.team(), f, caps);
}

// ---------------------------------------------------------------------------
// Translations

PakcPtr e_translate(const CodPtr& f, const Signature& sig) {
    if (!f) throw ValidationError("null formula");
    switch (f->kind()) {
    case CodKind::Eq:
        return atom(sig, f->lit_var(), f->lit_value());
    case CodKind::Neq:
        return neg(atom(sig, f->lit_var(), f->lit_value()));
    case CodKind::Dep:
        throw ValidationError("dependence atoms have no flat translation");
    case CodKind::And:
        return conj(e_translate(f->left(), sig), e_translate(f->right(), sig));
    case CodKind::Or:
        return disj(e_translate(f->left(), sig), e_translate(f->right(), sig));
    case CodKind::SelImp:
        return implies(e_translate(f->left(), sig), e_translate(f->right(), sig));
    case CodKind::Cf: {
        if (contains_cf(f->body()))
            throw ValidationError("nested counterfactuals are not translated");
        auto a = consistent_assignment(f->bindings(), sig);
        if (!a) return verum(sig); // vacuous on the team side as well
        return intervene(*a, e_translate(f->body(), sig));
    }
    }
    throw ValidationError("unreachable formula kind");
}

namespace {

// All valuations of the signature, canonical order.
std::vector<Valuation> enumerate_valuations(const Signature& sig) {
    std::vector<Valuation> out;
    for (Odometer o(range_sizes(sig, all_variables(sig))); !o.done(); o.next())
        out.push_back(Valuation(o.digits()));
    return out;
}

// Characteristic formula of one valuation: the conjunction of all its atoms.
PakcPtr characteristic(const Signature& sig, const Valuation& val) {
    std::vector<PakcPtr> atoms;
    for (VarId v = 0; v < sig.var_count(); ++v)
        atoms.push_back(atom(sig, v, val[v]));
    return conj_all(atoms, sig);
}

PakcPtr tr_impl(const CodPtr& f, const Signature& sig, const ExpansionCaps& caps, bool star) {
    switch (f->kind()) {
    case CodKind::Eq:
        return know(atom(sig, f->lit_var(), f->lit_value()));
    case CodKind::Neq:
        return know(neg(atom(sig, f->lit_var(), f->lit_value())));
    case CodKind::Dep: {
        const auto& xs = f->dep_inputs();
        VarId y = f->dep_output();
        Odometer counter(range_sizes(sig, xs));
        std::uint64_t sy = static_cast<std::uint64_t>(sig.range_size(y));
        std::uint64_t tuples = counter.combinations(caps.max_terms);
        if (tuples > caps.max_terms || tuples > caps.max_terms / sy)
            throw CapExceeded("dependence translation exceeds cap");
        std::vector<PakcPtr> conjuncts;
        for (Odometer t(range_sizes(sig, xs)); !t.done(); t.next()) {
            std::vector<PakcPtr> atoms_for_tuple;
            for (std::size_t i = 0; i < xs.size(); ++i)
                atoms_for_tuple.push_back(atom(sig, xs[i], t.digits()[i]));
            PakcPtr announced = conj_all(atoms_for_tuple, sig);
            std::vector<PakcPtr> disjuncts;
            for (ValId yv = 0; yv < sig.range_size(y); ++yv) {
                PakcPtr core = announce(announced, know(atom(sig, y, yv)));
                disjuncts.push_back(star ? know(core) : core);
            }
            conjuncts.push_back(disj_all(disjuncts, sig));
        }
        return conj_all(conjuncts, sig);
    }
    case CodKind::And:
        return conj(tr_impl(f->left(), sig, caps, star), tr_impl(f->right(), sig, caps, star));
    case CodKind::Or: {
        std::uint64_t total = sig.valuation_count(63);
        if (total > 62 || (std::uint64_t{1} << total) > caps.max_terms)
            throw CapExceeded("disjunction translation exceeds cap");
        std::vector<Valuation> space = enumerate_valuations(sig);
        PakcPtr trl = tr_impl(f->left(), sig, caps, star);
        PakcPtr trr = tr_impl(f->right(), sig, caps, star);
        std::vector<PakcPtr> disjuncts;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
            std::vector<PakcPtr> rows;
            for (std::uint64_t i = 0; i < total; ++i)
                if (mask & (std::uint64_t{1} << i)) rows.push_back(characteristic(sig, space[i]));
            PakcPtr chi = disj_all(rows, sig);
            disjuncts.push_back(
                know(conj(announce(chi, trl), announce(neg(chi), trr))));
        }
        return disj_all(disjuncts, sig);
    }
    case CodKind::SelImp: {
        // The consequent drops to the global translation even in the local
        // one; the outer K makes the whole clause pointing-invariant.
        PakcPtr core = announce(e_translate(f->antecedent(), sig),
                                tr_impl(f->body(), sig, caps, false));
        return star ? know(core) : core;
    }
    case CodKind::Cf: {
        auto a = consistent_assignment(f->bindings(), sig);
        if (!a) return verum(sig);
        return intervene(*a, tr_impl(f->body(), sig, caps, star));
    }
    }
    throw ValidationError("unreachable formula kind");
}

PakcPtr translate_checked(const CodPtr& f, const Signature& sig, const ExpansionCaps& caps,
                          bool star) {
    if (!f) throw ValidationError("null formula");
    if (!is_non_nested(f))
        throw ValidationError("nested counterfactuals are not translated");
    return tr_impl(f, sig, caps, star);
}

} // namespace

PakcPtr tr_translate(const CodPtr& f, const Signature& sig, const ExpansionCaps& caps) {
    return translate_checked(f, sig, caps, false);
}

PakcPtr tr_star_translate(const CodPtr& f, const Signature& sig, const ExpansionCaps& caps) {
    return translate_checked(f, sig, caps, true);
}

// ---------------------------------------------------------------------------
// Correspondence checks

namespace {

EquivalenceReport check_correspondence(const CausalTeam& t, const CodPtr& f,
                                       const ExpansionCaps& caps, bool star) {
    if (t.team().empty())
        throw ValidationError("correspondence checks need a nonempty team");

    EquivalenceReport report;
    report.team_verdict = team_eval(t, f, caps);

    PakcPtr g = star ? tr_star_translate(f, t.signature(), caps)
                     : tr_translate(f, t.signature(), caps);
    EpistemicCausalModel m(t.signature_ptr(), t.functions(), t.team());

    std::size_t holds = 0;
    for (const auto& member : m.team())
        if (eval(PointedModel(m, member), g)) ++holds;

    report.holds_at_all_pointings = holds == m.team().size();
    report.holds_at_some_pointing = holds > 0;
    report.pointing_invariant = holds == 0 || holds == m.team().size();

    if (!star) {
        report.agrees = report.team_verdict == report.holds_at_all_pointings;
        if (!report.agrees)
            report.detail = report.team_verdict
                                ? "team satisfies the formula but the translation fails "
                                  "at some pointing"
                                : "translation is valid but the team does not satisfy "
                                  "the formula";
    } else {
        bool forward = !report.team_verdict || report.holds_at_all_pointings;
        bool backward = !report.holds_at_some_pointing || report.team_verdict;
        report.agrees = forward && backward;
        if (!forward)
            report.detail = "team satisfaction does not force the translation everywhere";
        else if (!backward)
            report.detail = "translation holds somewhere but the team does not satisfy "
                            "the formula";
    }
    return report;
}

} // namespace

EquivalenceReport check_global_equivalence(const CausalTeam& t, const CodPtr& f,
                                           const ExpansionCaps& caps) {
    return check_correspondence(t, f, caps, false);
}

EquivalenceReport check_local_equivalence(const CausalTeam& t, const CodPtr& f,
                                          const ExpansionCaps& caps) {
    return check_correspondence(t, f, caps, true);
}

} // namespace ecmc
