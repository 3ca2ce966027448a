#include "fcl/token.hpp"

#include <cctype>

namespace fcl {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool ident_continue(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool is_keyword(const std::string& word) {
    return word == "function" || word == "TRUE" || word == "FALSE" || word == "NULL";
}

[[noreturn]] void lex_error(std::string msg, std::size_t start, std::size_t end) {
    throw FclError(ErrorKind::Lex, std::move(msg), SourceSpan{start, end});
}

} // namespace

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Lex: return "LexError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Name: return "NameError";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::MissingArg: return "MissingArgError";
    case ErrorKind::Fc: return "FcError";
    case ErrorKind::Pipe: return "PipeError";
    case ErrorKind::Domain: return "DomainError";
    }
    return "Error";
}

std::vector<Token> tokenize(const std::string& source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = source.size();

    auto push = [&](TokenKind kind, std::size_t start, std::size_t end) {
        tokens.push_back(Token{kind, source.substr(start, end - start), SourceSpan{start, end}});
    };

    while (i < n) {
        char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        if (c == '#') { // comment to end of line
            while (i < n && source[i] != '\n') ++i;
            continue;
        }

        std::size_t start = i;

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(source[i + 1])))) {
            while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) ++i;
            if (i < n && source[i] == '.') {
                ++i;
                while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) ++i;
            }
            if (i < n && (source[i] == 'e' || source[i] == 'E')) {
                std::size_t mark = i;
                ++i;
                if (i < n && (source[i] == '+' || source[i] == '-')) ++i;
                if (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
                    while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) ++i;
                } else {
                    i = mark; // `1e` with no exponent digits: the e starts an identifier
                }
            }
            push(TokenKind::Number, start, i);
            continue;
        }

        if (ident_start(c)) {
            ++i;
            while (i < n && ident_continue(source[i])) ++i;
            std::string word = source.substr(start, i - start);
            push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, start, i);
            continue;
        }

        if (c == '"' || c == '\'') {
            char quote = c;
            ++i;
            while (true) {
                if (i >= n || source[i] == '\n')
                    lex_error("unterminated string literal", start, i);
                char d = source[i];
                if (d == '\\') {
                    if (i + 1 >= n)
                        lex_error("unterminated string literal", start, i + 1);
                    char e = source[i + 1];
                    if (e != '\\' && e != '"' && e != 'n' && e != 't')
                        lex_error(std::string("unknown escape '\\") + e + "' in string literal",
                                  i, i + 2);
                    i += 2;
                    continue;
                }
                ++i;
                if (d == quote) break;
            }
            push(TokenKind::String, start, i);
            continue;
        }

        switch (c) {
        case '(': case ')': case '{': case '}': case ',': case ';':
            ++i;
            push(TokenKind::Punct, start, i);
            continue;
        case '+': case '*': case '/':
            ++i;
            push(TokenKind::Operator, start, i);
            continue;
        case '-':
            ++i;
            push(TokenKind::Operator, start, i);
            continue;
        case '<':
            // `<-` binds greedily, as in R: write `x < -5` with a space.
            if (i + 1 < n && (source[i + 1] == '-' || source[i + 1] == '=')) i += 2;
            else ++i;
            push(TokenKind::Operator, start, i);
            continue;
        case '>':
            if (i + 1 < n && source[i + 1] == '=') i += 2;
            else ++i;
            push(TokenKind::Operator, start, i);
            continue;
        case '=':
            if (i + 1 < n && source[i + 1] == '=') i += 2;
            else ++i;
            push(TokenKind::Operator, start, i);
            continue;
        case '!':
            if (i + 1 < n && source[i + 1] == '=') {
                i += 2;
                push(TokenKind::Operator, start, i);
                continue;
            }
            lex_error("stray '!' (only '!=' is an operator)", start, i + 1);
        case '%':
            if (i + 2 < n && source[i + 1] == '>' && source[i + 2] == '%') {
                i += 3;
                push(TokenKind::Operator, start, i);
                continue;
            }
            lex_error("malformed operator beginning with '%' (expected '%>%')", start, i + 1);
        default:
            lex_error(std::string("illegal character '") + c + "'", start, i + 1);
        }
    }

    return tokens;
}

} // namespace fcl
