#include <functional>

#include "ecmc/formula.hpp"
#include "ecmc/lexer.hpp"

namespace ecmc {

namespace {

class PakcParser {
public:
    PakcParser(std::string_view text, const Signature& sig)
        : toks_(lex(text, LexMode::Modal)), sig_(sig) {}

    PakcPtr parse() {
        PakcPtr f = formula();
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

    // Binary levels are right-associative.
    PakcPtr formula() { return fold(Tok::DArrow, &PakcParser::implication, iff); }
    PakcPtr implication() { return fold(Tok::Arrow, &PakcParser::disjunction, implies); }
    PakcPtr disjunction() { return fold(Tok::Pipe, &PakcParser::conjunction, disj); }
    PakcPtr conjunction() { return fold(Tok::Amp, &PakcParser::unary, conj); }

    PakcPtr fold(Tok op, PakcPtr (PakcParser::*next)(), PakcPtr (*combine)(PakcPtr, PakcPtr)) {
        std::vector<PakcPtr> parts{(this->*next)()};
        while (peek().kind == op) {
            take();
            parts.push_back((this->*next)());
        }
        PakcPtr out = parts.back();
        for (auto i = static_cast<std::ptrdiff_t>(parts.size()) - 2; i >= 0; --i)
            out = combine(parts[i], std::move(out));
        return out;
    }

    PakcPtr unary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Tilde:
            take();
            return neg(unary());
        case Tok::Ident:
            // "K" is the knowledge operator unless it is immediately used as
            // an atom variable, as in "K=1".
            if (t.text == "K" && peek(1).kind != Tok::Eq) {
                take();
                return know(unary());
            }
            return parse_atom();
        case Tok::LParen: {
            take();
            PakcPtr f = formula();
            expect(Tok::RParen);
            return f;
        }
        case Tok::LBrack: {
            take();
            if (peek().kind == Tok::RBrack) { // empty intervention: identity
                take();
                return intervene(InterventionAssignment{}, unary());
            }
            if (peek().kind == Tok::Ident && peek(1).kind == Tok::Assign) {
                InterventionAssignment a = bindings();
                expect(Tok::RBrack);
                return intervene(std::move(a), unary());
            }
            PakcPtr announced = formula();
            expect(Tok::BangBrack);
            return announce(std::move(announced), unary());
        }
        default:
            fail(std::string("expected a formula, found ") + token_name(t.kind));
        }
    }

    InterventionAssignment bindings() {
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
        return InterventionAssignment::checked(std::move(bs), sig_);
    }

    PakcPtr parse_atom() {
        Token var = expect(Tok::Ident);
        expect(Tok::Eq);
        Token val = value_token();
        VarId v = resolve_var(var);
        return atom(sig_, v, resolve_value(v, val));
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

// Printing precedence, loosest first: <-> (1), -> (2), | (3), & (4),
// prefix operators (5), atoms (6).  Right-associative binary operators
// print their left operand one level tighter.
struct SugarMatch {
    enum Kind { None, Or, Imp } kind = None;
    const PakcPtr* a = nullptr;
    const PakcPtr* b = nullptr;
};

SugarMatch detect_sugar(const PakcFormula& f) {
    if (f.kind() != PakcKind::Not) return {};
    const PakcPtr& inner = f.child();
    if (inner->kind() != PakcKind::And) return {};
    const PakcPtr& l = inner->left();
    const PakcPtr& r = inner->right();
    if (r->kind() != PakcKind::Not) return {};
    if (l->kind() == PakcKind::Not)
        return {SugarMatch::Or, &l->child(), &r->child()};
    return {SugarMatch::Imp, &l, &r->child()};
}

void print_rec(const PakcFormula& f, const Signature& sig, int level, std::string& out) {
    auto wrap = [&](int prec, auto&& body) {
        bool parens = prec < level;
        if (parens) out += "(";
        body();
        if (parens) out += ")";
    };

    if (SugarMatch s = detect_sugar(f); s.kind != SugarMatch::None) {
        int prec = s.kind == SugarMatch::Or ? 3 : 2;
        wrap(prec, [&] {
            print_rec(**s.a, sig, prec + 1, out);
            out += s.kind == SugarMatch::Or ? " | " : " -> ";
            print_rec(**s.b, sig, prec, out);
        });
        return;
    }

    switch (f.kind()) {
    case PakcKind::Atom:
        out += sig.var_name(f.atom_var()) + "=" + sig.value_label(f.atom_var(), f.atom_value());
        break;
    case PakcKind::Not:
        wrap(5, [&] {
            out += "~";
            print_rec(*f.child(), sig, 5, out);
        });
        break;
    case PakcKind::And:
        wrap(4, [&] {
            print_rec(*f.left(), sig, 5, out);
            out += " & ";
            print_rec(*f.right(), sig, 4, out);
        });
        break;
    case PakcKind::Know:
        wrap(5, [&] {
            out += "K ";
            print_rec(*f.child(), sig, 5, out);
        });
        break;
    case PakcKind::Announce:
        wrap(5, [&] {
            out += "[";
            print_rec(*f.announced(), sig, 1, out);
            out += " !] ";
            print_rec(*f.child(), sig, 5, out);
        });
        break;
    case PakcKind::Intervene:
        wrap(5, [&] {
            out += "[";
            bool first = true;
            for (const auto& b : f.assignment().bindings()) {
                if (!first) out += ", ";
                first = false;
                out += sig.var_name(b.var) + ":=" + sig.value_label(b.var, b.value);
            }
            out += "] ";
            print_rec(*f.child(), sig, 5, out);
        });
        break;
    }
}

} // namespace

PakcPtr parse_pakc(std::string_view text, const Signature& sig) {
    return PakcParser(text, sig).parse();
}

std::string print_pakc(const PakcPtr& f, const Signature& sig) {
    if (!f) throw ValidationError("null formula");
    std::string out;
    print_rec(*f, sig, 1, out);
    return out;
}

} // namespace ecmc
