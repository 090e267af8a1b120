#include "polyseq/error.hpp"
#include "polyseq/structure.hpp"

#include <algorithm>

namespace polyseq {

const char* code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::UnknownSymbol: return "unknown-symbol";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::UndeclaredVariable: return "undeclared-variable";
    case ErrorCode::MissingAssignment: return "missing-assignment";
    case ErrorCode::SignatureMismatch: return "signature-mismatch";
    case ErrorCode::NameClash: return "name-clash";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::NotQuantifierFree: return "not-quantifier-free";
    case ErrorCode::CapExceeded: return "cap-exceeded";
    case ErrorCode::SymmetryViolation: return "symmetry-violation";
    case ErrorCode::NotEquivalence: return "not-an-equivalence";
    case ErrorCode::CompatibilityViolation: return "compatibility-violation";
    case ErrorCode::CertificateMismatch: return "certificate-mismatch";
    case ErrorCode::NegativeValue: return "negative-value";
    case ErrorCode::UnboundedDegree: return "unbounded-degree";
    case ErrorCode::VerificationFailed: return "verification-failed";
    case ErrorCode::UnknownEntry: return "unknown-entry";
    case ErrorCode::Io: return "io-error";
    }
    return "error";
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto& sym = symbols_[i];
        if (sym.name.empty()) {
            throw Error(ErrorCode::InvalidArgument, "empty symbol name");
        }
        if (sym.arity < 1) {
            throw Error(ErrorCode::InvalidArgument,
                        "symbol '" + sym.name + "' must have arity >= 1");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (symbols_[j].name == sym.name) {
                throw Error(ErrorCode::NameClash, "duplicate symbol '" + sym.name + "'");
            }
        }
    }
}

Signature::Signature(std::initializer_list<Symbol> symbols)
    : Signature(std::vector<Symbol>(symbols)) {}

Signature Signature::graph() { return Signature{{"E", 2}}; }

std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
}

Signature Signature::with(Symbol symbol) const {
    if (contains(symbol.name)) {
        throw Error(ErrorCode::NameClash, "symbol '" + symbol.name + "' already present");
    }
    auto symbols = symbols_;
    symbols.push_back(std::move(symbol));
    return Signature(std::move(symbols));
}

std::string fresh_symbol_name(const Signature& sig, const std::string& base) {
    std::string name = base;
    while (sig.contains(name)) name += '\'';
    return name;
}

} // namespace polyseq
