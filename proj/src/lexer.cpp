#include "ecmc/lexer.hpp"

#include <array>
#include <cctype>

namespace ecmc {

namespace {

struct Punct {
    std::string_view text;
    Tok kind;
};

// Longest match first within each table.
constexpr std::array<Punct, 14> kModalPunct{{
    {"<->", Tok::DArrow},
    {"->", Tok::Arrow},
    {":=", Tok::Assign},
    {"!]", Tok::BangBrack},
    {"(", Tok::LParen},
    {")", Tok::RParen},
    {"[", Tok::LBrack},
    {"]", Tok::RBrack},
    {",", Tok::Comma},
    {"=", Tok::Eq},
    {"&", Tok::Amp},
    {"|", Tok::Pipe},
    {"~", Tok::Tilde},
    {";", Tok::Semi},
}};

constexpr std::array<Punct, 12> kTeamPunct{{
    {"[[", Tok::LLBrack},
    {"]]", Tok::RRBrack},
    {":=", Tok::Assign},
    {"!=", Tok::NotEq},
    {"\\/", Tok::SplitOr},
    {"|>", Tok::SelArrow},
    {"(", Tok::LParen},
    {")", Tok::RParen},
    {",", Tok::Comma},
    {";", Tok::Semi},
    {"=", Tok::Eq},
    {"&", Tok::Amp},
}};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::vector<Token> lex(std::string_view text, LexMode mode) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), i});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Number, std::string(text.substr(i, j - i)), i});
            i = j;
            continue;
        }
        bool matched = false;
        auto try_table = [&](const auto& table) {
            for (const auto& p : table) {
                if (text.substr(i).starts_with(p.text)) {
                    out.push_back({p.kind, std::string(p.text), i});
                    i += p.text.size();
                    matched = true;
                    return;
                }
            }
        };
        if (mode == LexMode::Modal)
            try_table(kModalPunct);
        else
            try_table(kTeamPunct);
        if (!matched)
            throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

const char* token_name(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::BangBrack: return "'!]'";
    case Tok::LLBrack: return "'[['";
    case Tok::RRBrack: return "']]'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Assign: return "':='";
    case Tok::Eq: return "'='";
    case Tok::NotEq: return "'!='";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::SplitOr: return "'\\/'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::Tilde: return "'~'";
    case Tok::SelArrow: return "'|>'";
    case Tok::End: return "end of input";
    }
    return "?";
}

} // namespace ecmc
