#pragma once

// Source positions and diagnostics shared by the lexer, parser and
// well-formedness checks.

#include <cstdint>
#include <string>
#include <vector>

namespace ebadt {

// Half-open byte range into one source file, with 1-based line/column of the
// start for human-readable messages.
struct SourceSpan {
    std::string file;   // file name as given to the parser ("" for inline text)
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
};

inline std::string to_string(const SourceSpan& s) {
    std::string out = s.file.empty() ? std::string("<input>") : s.file;
    out += ":" + std::to_string(s.line) + ":" + std::to_string(s.column);
    return out;
}

struct Diagnostic {
    std::string code;     // stable machine-readable id, e.g. "parse.unexpected-token"
    std::string message;  // human-readable explanation
    SourceSpan span;
};

inline std::string to_string(const Diagnostic& d) {
    return to_string(d.span) + ": error [" + d.code + "]: " + d.message;
}

// Fail-fast parse/validation failure carrying a structured diagnostic.
struct DiagnosticError {
    Diagnostic diagnostic;
};

[[noreturn]] inline void fail(std::string code, std::string message, SourceSpan span = {}) {
    throw DiagnosticError{Diagnostic{std::move(code), std::move(message), std::move(span)}};
}

}  // namespace ebadt
