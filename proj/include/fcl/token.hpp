#pragma once

#include <string>
#include <vector>

#include "fcl/errors.hpp"

namespace fcl {

enum class TokenKind {
    Identifier,
    Number,
    String,
    Punct,
    Operator,
    Keyword,
};

struct Token {
    TokenKind kind;
    std::string lexeme; // exact source slice, quotes included for strings
    SourceSpan span;

    bool is(TokenKind k, const char* text) const {
        return kind == k && lexeme == text;
    }
};

/// Splits source into tokens. Whitespace and `#` line comments are skipped;
/// the concatenation of token lexemes plus the skipped gaps reconstructs the
/// source exactly. Throws FclError(Lex) on unterminated strings, bad escapes
/// and illegal characters.
std::vector<Token> tokenize(const std::string& source);

} // namespace fcl
