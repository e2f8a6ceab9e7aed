#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ecmc/errors.hpp"

namespace ecmc {

// Token set shared by the two formula languages; each lexing mode admits
// only its own punctuation.
enum class Tok {
    Ident,
    Number,
    LParen,        // (
    RParen,        // )
    LBrack,        // [
    RBrack,        // ]
    BangBrack,     // !]
    LLBrack,       // [[
    RRBrack,       // ]]
    Comma,         // ,
    Semi,          // ;
    Assign,        // :=
    Eq,            // =
    NotEq,         // !=
    Amp,           // &
    Pipe,          // |
    SplitOr,       // \/
    Arrow,         // ->
    DArrow,        // <->
    Tilde,         // ~
    SelArrow,      // |>
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

enum class LexMode {
    Modal,  // announcements, interventions, K
    Team,   // dependence atoms, split disjunction, counterfactual brackets
};

std::vector<Token> lex(std::string_view text, LexMode mode);

const char* token_name(Tok t);

} // namespace ecmc
