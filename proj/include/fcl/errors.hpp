#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fcl {

/// Half-open byte range into the original source text.
struct SourceSpan {
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;
};

enum class ErrorKind {
    Lex,
    Parse,
    Name,
    Type,
    Arity,
    MissingArg,
    Fc,
    Pipe,
    Domain,
};

const char* error_kind_name(ErrorKind kind);

/// Single exception type for all language-level failures; `kind()` tells the
/// caller which contract was violated. Lex and parse errors carry a span.
class FclError : public std::runtime_error {
public:
    FclError(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}
    FclError(ErrorKind kind, std::string message, SourceSpan span)
        : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

    ErrorKind kind() const { return kind_; }
    const std::optional<SourceSpan>& span() const { return span_; }

private:
    ErrorKind kind_;
    std::optional<SourceSpan> span_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, std::string message) {
    throw FclError(kind, std::move(message));
}

} // namespace fcl
