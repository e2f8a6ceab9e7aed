#include "ecmc/model_io.hpp"

#include <algorithm>
#include <fstream>

#include "ecmc/enumerate.hpp"

namespace ecmc {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Function expressions.  A small surface for writing structural functions:
//
//   valexpr  := "if" boolexpr "then" valexpr "else" valexpr | VALUE | VAR
//   boolexpr := boolterm ("|" boolterm)*
//   boolterm := boolunary ("&" boolunary)*
//   boolunary:= "~" boolunary | "(" boolexpr ")" | VAR ("=" | "!=") (VALUE | VAR)
//
// Expressions are compiled to dense tables at load time.  A bare identifier
// is read as a variable when one of that name exists, as a value label
// otherwise.

struct ExprToken {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<ExprToken> lex_expr(const std::string& text) {
    std::vector<ExprToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i + 1;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({ExprToken::Ident, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({ExprToken::Number, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (text.compare(i, 2, "!=") == 0) {
            out.push_back({ExprToken::Punct, "!=", i});
            i += 2;
            continue;
        }
        if (std::string("=&|~()").find(c) != std::string::npos) {
            out.push_back({ExprToken::Punct, std::string(1, c), i});
            ++i;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "' in function expression",
                         i);
    }
    out.push_back({ExprToken::End, "", text.size()});
    return out;
}

// Evaluates an expression for the function of `target` against candidate
// argument valuations.
class ExprCompiler {
public:
    ExprCompiler(const Signature& sig, VarId target, const std::string& text)
        : sig_(sig), target_(target), toks_(lex_expr(text)) {}

    // Value of the expression under `val` (the target's slot is ignored and
    // must not be read).
    ValId evaluate(const Valuation& val) {
        pos_ = 0;
        val_ = &val;
        ValId out = valexpr();
        if (peek().kind != ExprToken::End)
            throw ParseError("trailing input in function expression", peek().pos);
        return out;
    }

private:
    const ExprToken& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    ExprToken take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool at_punct(const char* p) const {
        return peek().kind == ExprToken::Punct && peek().text == p;
    }

    void expect_punct(const char* p) {
        if (!at_punct(p))
            throw ParseError(std::string("expected '") + p + "' in function expression",
                             peek().pos);
        take();
    }

    bool at_keyword(const char* k) const {
        return peek().kind == ExprToken::Ident && peek().text == k;
    }

    VarId read_var(const ExprToken& t) const {
        auto v = sig_.find_var(t.text);
        if (!v)
            throw ParseError("unknown variable '" + t.text + "' in function expression", t.pos);
        if (*v == target_)
            throw ValidationError("function for " + sig_.var_name(target_) +
                                  " may not read " + sig_.var_name(target_));
        return *v;
    }

    ValId valexpr() {
        if (at_keyword("if")) {
            take();
            bool cond = boolexpr();
            if (!at_keyword("then"))
                throw ParseError("expected 'then' in function expression", peek().pos);
            take();
            ValId a = valexpr();
            if (!at_keyword("else"))
                throw ParseError("expected 'else' in function expression", peek().pos);
            take();
            ValId b = valexpr();
            return cond ? a : b;
        }
        if (peek().kind != ExprToken::Ident && peek().kind != ExprToken::Number)
            throw ParseError("expected a value or variable in function expression", peek().pos);
        ExprToken t = take();
        if (t.kind == ExprToken::Ident && sig_.find_var(t.text)) {
            VarId v = read_var(t);
            const std::string& label = sig_.value_label(v, (*val_)[v]);
            if (auto x = sig_.find_value(target_, label)) return *x;
            throw ValidationError("value '" + label + "' of " + sig_.var_name(v) +
                                  " is not in the range of " + sig_.var_name(target_));
        }
        if (auto x = sig_.find_value(target_, t.text)) return *x;
        throw ParseError("value '" + t.text + "' not in range of variable " +
                             sig_.var_name(target_),
                         t.pos);
    }

    bool boolexpr() {
        bool acc = boolterm();
        while (at_punct("|")) {
            take();
            bool rhs = boolterm();
            acc = acc || rhs;
        }
        return acc;
    }

    bool boolterm() {
        bool acc = boolunary();
        while (at_punct("&")) {
            take();
            bool rhs = boolunary();
            acc = acc && rhs;
        }
        return acc;
    }

    bool boolunary() {
        if (at_punct("~")) {
            take();
            return !boolunary();
        }
        if (at_punct("(")) {
            take();
            bool b = boolexpr();
            expect_punct(")");
            return b;
        }
        if (peek().kind != ExprToken::Ident)
            throw ParseError("expected a comparison in function expression", peek().pos);
        ExprToken lhs = take();
        VarId v = read_var(lhs);
        bool negated;
        if (at_punct("=")) {
            negated = false;
        } else if (at_punct("!=")) {
            negated = true;
        } else {
            throw ParseError("expected '=' or '!=' in function expression", peek().pos);
        }
        take();
        if (peek().kind != ExprToken::Ident && peek().kind != ExprToken::Number)
            throw ParseError("expected a value or variable in function expression", peek().pos);
        ExprToken rhs = take();
        bool result;
        if (rhs.kind == ExprToken::Ident && sig_.find_var(rhs.text)) {
            VarId w = read_var(rhs);
            result = sig_.value_label(v, (*val_)[v]) == sig_.value_label(w, (*val_)[w]);
        } else {
            auto x = sig_.find_value(v, rhs.text);
            if (!x)
                throw ParseError("value '" + rhs.text + "' not in range of variable " +
                                     sig_.var_name(v),
                                 rhs.pos);
            result = (*val_)[v] == *x;
        }
        return negated ? !result : result;
    }

    const Signature& sig_;
    VarId target_;
    std::vector<ExprToken> toks_;
    std::size_t pos_ = 0;
    const Valuation* val_ = nullptr;
};

std::string value_to_label(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_boolean()) return j.get<bool>() ? "1" : "0";
    throw ValidationError("values must be strings or integers");
}

FunctionTable compile_expression(const Signature& sig, VarId target, const std::string& text) {
    ExprCompiler compiler(sig, target, text);
    std::vector<VarId> others = other_variables(sig, {target});
    FunctionTable table;
    std::vector<ValId> slots(sig.var_count(), 0);
    for (Odometer o(range_sizes(sig, others)); !o.done(); o.next()) {
        for (std::size_t i = 0; i < others.size(); ++i) slots[others[i]] = o.digits()[i];
        table.outputs.push_back(compiler.evaluate(Valuation(slots)));
    }
    return table;
}

FunctionTable compile_table(const Signature& sig, VarId target, const json& spec) {
    if (!spec.contains("inputs") || !spec["inputs"].is_array())
        throw ValidationError("table for " + sig.var_name(target) + " needs an inputs array");
    if (!spec.contains("rows") || !spec["rows"].is_array())
        throw ValidationError("table for " + sig.var_name(target) + " needs a rows array");

    std::vector<VarId> inputs;
    for (const auto& name : spec["inputs"]) {
        if (!name.is_string())
            throw ValidationError("table inputs must be variable names");
        VarId v = sig.require_var(name.get<std::string>());
        if (v == target)
            throw ValidationError("function for " + sig.var_name(target) + " may not read " +
                                  sig.var_name(target));
        if (std::count(inputs.begin(), inputs.end(), v) != 0)
            throw ValidationError("duplicate table input " + sig.var_name(v));
        inputs.push_back(v);
    }

    // Map from the listed-inputs tuple to output, then extend over the full
    // domain of all other variables (unlisted variables do not matter).
    std::uint64_t listed = 1;
    for (VarId v : inputs) listed *= static_cast<std::uint64_t>(sig.range_size(v));
    std::vector<ValId> by_listed(listed, -1);

    auto listed_index = [&](const std::vector<ValId>& tuple) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < inputs.size(); ++i)
            idx = idx * static_cast<std::uint64_t>(sig.range_size(inputs[i])) +
                  static_cast<std::uint64_t>(tuple[i]);
        return idx;
    };

    for (const auto& row : spec["rows"]) {
        if (!row.is_array() || row.size() != inputs.size() + 1)
            throw ValidationError("table row for " + sig.var_name(target) +
                                  " must list one value per input plus the output");
        std::vector<ValId> tuple;
        for (std::size_t i = 0; i < inputs.size(); ++i)
            tuple.push_back(sig.require_value(inputs[i], value_to_label(row[i])));
        ValId out = sig.require_value(target, value_to_label(row[inputs.size()]));
        std::uint64_t idx = listed_index(tuple);
        if (by_listed[idx] != -1)
            throw ValidationError("duplicate table row for " + sig.var_name(target));
        by_listed[idx] = out;
    }
    for (std::uint64_t i = 0; i < listed; ++i)
        if (by_listed[i] == -1)
            throw ValidationError("table for " + sig.var_name(target) +
                                  " does not cover all input combinations");

    std::vector<VarId> others = other_variables(sig, {target});
    FunctionTable table;
    std::vector<ValId> tuple(inputs.size());
    for (Odometer o(range_sizes(sig, others)); !o.done(); o.next()) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            auto at = std::find(others.begin(), others.end(), inputs[i]) - others.begin();
            tuple[i] = o.digits()[static_cast<std::size_t>(at)];
        }
        table.outputs.push_back(by_listed[listed_index(tuple)]);
    }
    return table;
}

Valuation row_to_valuation(const Signature& sig, const StructuralFunctionSet& fns,
                           const json& row) {
    if (!row.is_object())
        throw ValidationError("team rows must be objects mapping variables to values");
    std::vector<std::optional<ValId>> given(sig.var_count());
    for (const auto& [key, value] : row.items()) {
        VarId v = sig.require_var(key);
        given[v] = sig.require_value(v, value_to_label(value));
    }

    bool all_given = true;
    for (VarId v = 0; v < sig.var_count(); ++v)
        if (!given[v]) { all_given = false; break; }

    if (all_given) {
        std::vector<ValId> values(sig.var_count());
        for (VarId v = 0; v < sig.var_count(); ++v) values[v] = *given[v];
        Valuation val(std::move(values));
        if (!complies(val, fns))
            throw ValidationError("team row " + val.to_string(sig) +
                                  " does not comply with the structural functions");
        return val;
    }

    // Exactly the exogenous variables: solve for the rest.
    for (VarId v = 0; v < sig.var_count(); ++v) {
        bool want = sig.is_exogenous(v);
        if (given[v].has_value() != want)
            throw ValidationError(
                "team rows must assign either every variable or exactly the exogenous ones");
    }
    std::vector<ValId> exo(sig.exo_count());
    for (VarId u = 0; u < sig.exo_count(); ++u) exo[u] = *given[u];
    return solve(fns, exo);
}

} // namespace

RawModelFile parse_model_json(const json& j) {
    if (!j.is_object()) throw ValidationError("model file must be a JSON object");
    if (!j.contains("signature") || !j["signature"].is_object())
        throw ValidationError("model file needs a signature object");
    const json& sj = j["signature"];

    auto names = [&](const char* key) {
        std::vector<std::string> out;
        if (!sj.contains(key)) return out;
        if (!sj[key].is_array())
            throw ValidationError(std::string("signature ") + key + " must be an array");
        for (const auto& n : sj[key]) {
            if (!n.is_string())
                throw ValidationError(std::string("signature ") + key +
                                      " must contain variable names");
            out.push_back(n.get<std::string>());
        }
        return out;
    };

    std::vector<std::string> exo = names("exogenous");
    std::vector<std::string> endo = names("endogenous");

    if (!sj.contains("ranges") || !sj["ranges"].is_object())
        throw ValidationError("signature needs a ranges object");
    std::map<std::string, std::vector<std::string>> ranges;
    for (const auto& [key, value] : sj["ranges"].items()) {
        if (!value.is_array())
            throw ValidationError("range of " + key + " must be an array");
        std::vector<std::string> labels;
        for (const auto& l : value) labels.push_back(value_to_label(l));
        ranges[key] = std::move(labels);
    }

    auto sig = std::make_shared<const Signature>(exo, endo, ranges);

    std::vector<FunctionTable> tables(static_cast<std::size_t>(sig->endo_count()));
    const json empty_obj = json::object();
    const json& fj = j.contains("functions") ? j["functions"] : empty_obj;
    if (!fj.is_object()) throw ValidationError("functions must be an object");
    for (const auto& [key, value] : fj.items()) {
        VarId v = sig->require_var(key);
        if (!sig->is_endogenous(v))
            throw ValidationError("function given for exogenous variable " + key);
        if (value.is_object() && value.contains("expr") && value["expr"].is_string())
            tables[static_cast<std::size_t>(v - sig->exo_count())] =
                compile_expression(*sig, v, value["expr"].get<std::string>());
        else if (value.is_object() && value.contains("table"))
            tables[static_cast<std::size_t>(v - sig->exo_count())] =
                compile_table(*sig, v, value["table"]);
        else
            throw ValidationError("function for " + key +
                                  " must be {\"expr\": ...} or {\"table\": ...}");
    }
    for (VarId i = 0; i < sig->endo_count(); ++i)
        if (!fj.contains(sig->var_name(sig->exo_count() + i)))
            throw ValidationError("missing function for endogenous variable " +
                                  sig->var_name(sig->exo_count() + i));

    json team_rows = j.contains("team") ? j["team"] : json::array();
    if (!team_rows.is_array())
        throw ValidationError("team must be an array of rows");
    SignaturePtr sig_copy = sig;
    return RawModelFile{std::move(sig_copy), StructuralFunctionSet(sig, std::move(tables)),
                        std::move(team_rows), j.contains("actual") ? j["actual"] : json()};
}

LoadedModel finalize_model(const RawModelFile& raw, bool allow_empty_team) {
    if (!is_recursive(raw.functions)) {
        std::string names;
        if (auto cycle = find_cycle(raw.functions)) {
            for (VarId v : *cycle) {
                if (!names.empty()) names += ", ";
                names += raw.sig->var_name(v);
            }
        }
        throw ValidationError("function set is not recursive (cycle through " + names + ")");
    }

    std::vector<Valuation> team;
    for (const auto& row : raw.team_rows)
        team.push_back(row_to_valuation(*raw.sig, raw.functions, row));

    std::optional<Valuation> actual;
    if (!raw.actual_raw.is_null()) {
        if (raw.actual_raw.is_number_integer()) {
            auto idx = raw.actual_raw.get<long long>();
            if (idx < 0 || idx >= static_cast<long long>(team.size()))
                throw ValidationError("actual index out of range of the team list");
            actual = team[static_cast<std::size_t>(idx)];
        } else {
            actual = row_to_valuation(*raw.sig, raw.functions, raw.actual_raw);
        }
    }

    std::sort(team.begin(), team.end());
    team.erase(std::unique(team.begin(), team.end()), team.end());
    if (team.empty() && !allow_empty_team)
        throw ValidationError("model file has an empty team");
    if (actual && !std::binary_search(team.begin(), team.end(), *actual))
        throw ValidationError("actual state is not a member of the team");

    return LoadedModel{raw.sig, raw.functions, std::move(team), std::move(actual)};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what(),
                         e.byte);
    }
}

LoadedModel load_model_file(const std::string& path, bool allow_empty_team) {
    return finalize_model(parse_model_json(load_json_file(path)), allow_empty_team);
}

json model_to_json(const LoadedModel& m) {
    const Signature& sig = *m.sig;
    json sj;
    sj["exogenous"] = json::array();
    sj["endogenous"] = json::array();
    for (VarId v = 0; v < sig.exo_count(); ++v) sj["exogenous"].push_back(sig.var_name(v));
    for (VarId v = sig.exo_count(); v < sig.var_count(); ++v)
        sj["endogenous"].push_back(sig.var_name(v));
    json ranges = json::object();
    for (VarId v = 0; v < sig.var_count(); ++v) ranges[sig.var_name(v)] = sig.range(v);
    sj["ranges"] = std::move(ranges);

    json functions = json::object();
    for (VarId v = sig.exo_count(); v < sig.var_count(); ++v) {
        std::vector<VarId> others = other_variables(sig, {v});
        json inputs = json::array();
        for (VarId o : others) inputs.push_back(sig.var_name(o));
        json rows = json::array();
        std::size_t at = 0;
        for (Odometer o(range_sizes(sig, others)); !o.done(); o.next(), ++at) {
            json row = json::array();
            for (std::size_t i = 0; i < others.size(); ++i)
                row.push_back(sig.value_label(others[i], o.digits()[i]));
            row.push_back(sig.value_label(v, m.functions.table(v).outputs.at(at)));
            rows.push_back(std::move(row));
        }
        functions[sig.var_name(v)] = {{"table", {{"inputs", inputs}, {"rows", rows}}}};
    }

    auto valuation_row = [&](const Valuation& val) {
        json row = json::object();
        for (VarId v = 0; v < sig.var_count(); ++v)
            row[sig.var_name(v)] = sig.value_label(v, val[v]);
        return row;
    };

    json team = json::array();
    for (const auto& val : m.team) team.push_back(valuation_row(val));

    json out;
    out["signature"] = std::move(sj);
    out["functions"] = std::move(functions);
    out["team"] = std::move(team);
    if (m.actual) out["actual"] = valuation_row(*m.actual);
    return out;
}

void write_model_file(const std::string& path, const LoadedModel& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    out << model_to_json(m).dump(2) << "\n";
    if (!out) throw IoError("error writing model file: " + path);
}

EpistemicCausalModel make_epistemic(const LoadedModel& m) {
    return EpistemicCausalModel(m.sig, m.functions, m.team);
}

PointedModel make_pointed(const LoadedModel& m) {
    if (!m.actual)
        throw ValidationError(
            "model file has no actual state; add one or evaluate at all pointings");
    return PointedModel(make_epistemic(m), *m.actual);
}

CausalTeam make_causal_team(const LoadedModel& m) {
    return CausalTeam(m.sig, m.functions, m.team);
}

LoadedModel to_loaded(const EpistemicCausalModel& m, std::optional<Valuation> actual) {
    return LoadedModel{m.signature_ptr(), m.functions(), m.team(), std::move(actual)};
}

LoadedModel to_loaded(const CausalTeam& t) {
    return LoadedModel{t.signature_ptr(), t.functions(), t.team(), std::nullopt};
}

} // namespace ecmc
