#include "polyseq/interpretation.hpp"

#include "polyseq/error.hpp"

#include <cstdlib>

namespace polyseq {

namespace {

void require_formula(const Formula& f, const Signature& source, std::size_t free_count,
                     const std::string& what) {
    if (f.signature() != source) {
        throw Error(ErrorCode::SignatureMismatch, what + " is not bound against the source signature");
    }
    if (f.free_count() != free_count) {
        throw Error(ErrorCode::ArityMismatch, what + " has " + std::to_string(f.free_count()) +
                                                  " free variables, expected " +
                                                  std::to_string(free_count));
    }
}

} // namespace

std::uint64_t default_tuple_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("POLYSEQ_TUPLE_BUDGET")) {
            char* end = nullptr;
            auto v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1'000'000};
    }();
    return value;
}

bool InterpretationScheme::quantifier_free() const {
    if (!rho0.quantifier_free()) return false;
    for (const auto& r : rhos) {
        if (!r.quantifier_free()) return false;
    }
    return true;
}

bool GraphicalScheme::quantifier_free() const {
    return iota.quantifier_free() && rho.quantifier_free();
}

bool QuotientScheme::quantifier_free() const {
    if (!base.quantifier_free() || !varpi.quantifier_free()) return false;
    for (const auto& c : certificates) {
        if (!c.eta.quantifier_free()) return false;
    }
    return true;
}

void validate_scheme(const InterpretationScheme& s) {
    if (s.p == 0) throw Error(ErrorCode::InvalidArgument, "scheme exponent must be positive");
    require_formula(s.rho0, s.source, s.p, "domain formula");
    if (s.rhos.size() != s.target.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "scheme defines " + std::to_string(s.rhos.size()) + " relations, target has " +
                        std::to_string(s.target.size()));
    }
    for (std::size_t i = 0; i < s.rhos.size(); ++i) {
        require_formula(s.rhos[i], s.source,
                        s.p * static_cast<std::size_t>(s.target[i].arity),
                        "formula for '" + s.target[i].name + "'");
    }
}

void validate_scheme(const GraphicalScheme& s) {
    if (s.p == 0) throw Error(ErrorCode::InvalidArgument, "scheme exponent must be positive");
    require_formula(s.iota, s.source, s.p, "vertex formula");
    require_formula(s.rho, s.source, 2 * s.p, "edge formula");
}

void validate_scheme(const QuotientScheme& s) {
    validate_scheme(s.base);
    require_formula(s.varpi, s.base.source, 2 * s.base.p, "equivalence formula");
    for (std::size_t i = 0; i < s.certificates.size(); ++i) {
        require_formula(s.certificates[i].eta, s.base.source, s.base.p,
                        "class formula " + std::to_string(i + 1));
    }
}

InterpretationScheme to_interpretation(const GraphicalScheme& g) {
    InterpretationScheme s;
    s.name = g.name;
    s.p = g.p;
    s.source = g.source;
    s.target = Signature::graph();
    s.rho0 = g.iota;
    if (g.loops == LoopPolicy::Keep) {
        s.rhos = {g.rho};
        return s;
    }
    std::vector<std::string> names = g.rho.free_vars();
    std::vector<std::size_t> free_map(2 * g.p);
    for (std::size_t i = 0; i < free_map.size(); ++i) free_map[i] = i;
    auto body = instantiate(g.rho, free_map, names);
    std::vector<NodePtr> same;
    for (std::size_t j = 0; j < g.p; ++j) same.push_back(make_eq(j, g.p + j));
    auto root = make_and({make_not(make_and(std::move(same))), body});
    s.rhos = {Formula(g.source, std::move(names), 2 * g.p, std::move(root))};
    return s;
}

const std::string& scheme_name(const Scheme& s) {
    return std::visit(
        [](const auto& x) -> const std::string& {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, QuotientScheme>) {
                return x.base.name;
            } else {
                return x.name;
            }
        },
        s);
}

std::size_t scheme_exponent(const Scheme& s) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, QuotientScheme>) {
                return x.base.p;
            } else {
                return x.p;
            }
        },
        s);
}

const Signature& scheme_source(const Scheme& s) {
    return std::visit(
        [](const auto& x) -> const Signature& {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, QuotientScheme>) {
                return x.base.source;
            } else {
                return x.source;
            }
        },
        s);
}

Signature scheme_target(const Scheme& s) {
    return std::visit(
        [](const auto& x) -> Signature {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, QuotientScheme>) {
                return x.base.target;
            } else if constexpr (std::is_same_v<T, GraphicalScheme>) {
                return Signature::graph();
            } else {
                return x.target;
            }
        },
        s);
}

bool scheme_quantifier_free(const Scheme& s) {
    return std::visit([](const auto& x) { return x.quantifier_free(); }, s);
}

std::vector<std::string> block_vars(std::size_t p, std::size_t blocks) {
    static const char* letters[] = {"x", "y", "z"};
    std::vector<std::string> out;
    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t i = 1; i <= p; ++i) {
            if (b < 3) {
                out.push_back(letters[b] + std::to_string(i));
            } else {
                out.push_back("w" + std::to_string(b + 1) + "_" + std::to_string(i));
            }
        }
    }
    return out;
}

} // namespace polyseq
