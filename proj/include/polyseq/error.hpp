#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyseq {

// Stable error codes; the CLI prints code_name() alongside the message.
enum class ErrorCode {
    Parse,
    UnknownSymbol,
    ArityMismatch,
    UndeclaredVariable,
    MissingAssignment,
    SignatureMismatch,
    NameClash,
    BudgetExceeded,
    InvalidArgument,
    NotQuantifierFree,
    CapExceeded,
    SymmetryViolation,
    NotEquivalence,
    CompatibilityViolation,
    CertificateMismatch,
    NegativeValue,
    UnboundedDegree,
    VerificationFailed,
    UnknownEntry,
    Io,
};

const char* code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(ErrorCode::Parse, message + " at line " + std::to_string(line) +
                                      ", column " + std::to_string(column)),
          line_(line), column_(column), detail_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

} // namespace polyseq
