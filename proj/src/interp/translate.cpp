#include "polyseq/interpretation.hpp"

#include "polyseq/error.hpp"

#include <set>

namespace polyseq {

namespace {

class Translator {
public:
    Translator(const InterpretationScheme& scheme, const Formula& phi)
        : s_(scheme), phi_(phi), slots_(phi.var_count()) {
        for (std::size_t i = 0; i < phi.signature().size(); ++i) {
            const auto& sym = phi.signature()[i];
            auto idx = scheme.target.find(sym.name);
            if (!idx) {
                throw Error(ErrorCode::UnknownSymbol,
                            "symbol '" + sym.name + "' is not defined by scheme '" + scheme.name + "'");
            }
            if (scheme.target[*idx].arity != sym.arity) {
                throw Error(ErrorCode::ArityMismatch, "symbol '" + sym.name + "' has arity " +
                                                          std::to_string(scheme.target[*idx].arity) +
                                                          " in the target of '" + scheme.name + "'");
            }
            symbol_map_.push_back(*idx);
        }
    }

    Formula run() {
        const std::size_t p = s_.p;
        for (std::size_t v = 0; v < phi_.free_count(); ++v) allocate(v);
        std::vector<NodePtr> parts;
        for (std::size_t v = 0; v < phi_.free_count(); ++v) parts.push_back(guard(v));
        parts.push_back(map(*phi_.root()));
        auto root = make_and(std::move(parts));
        return Formula(s_.source, std::move(names_), phi_.free_count() * p, std::move(root));
    }

private:
    void allocate(std::size_t v) {
        slots_[v].clear();
        for (std::size_t j = 1; j <= s_.p; ++j) {
            std::string base = phi_.var_names()[v] + "_" + std::to_string(j);
            std::string name = base;
            for (std::size_t k = 2; used_.count(name); ++k) name = base + "_" + std::to_string(k);
            used_.insert(name);
            slots_[v].push_back(names_.size());
            names_.push_back(name);
        }
    }

    NodePtr guard(std::size_t v) { return instantiate(s_.rho0, slots_[v], names_); }

    NodePtr map(const Node& n) {
        switch (n.op) {
        case Op::True: return make_true();
        case Op::False: return make_false();
        case Op::Eq: {
            std::vector<NodePtr> eqs;
            for (std::size_t j = 0; j < s_.p; ++j) {
                eqs.push_back(make_eq(slots_[n.vars[0]][j], slots_[n.vars[1]][j]));
            }
            return make_and(std::move(eqs));
        }
        case Op::Atom: {
            std::vector<std::size_t> args;
            for (auto v : n.vars) args.insert(args.end(), slots_[v].begin(), slots_[v].end());
            return instantiate(s_.rhos[symbol_map_[n.symbol]], args, names_);
        }
        case Op::Not: return make_not(map(*n.kids[0]));
        case Op::And:
        case Op::Or: {
            std::vector<NodePtr> kids;
            for (const auto& k : n.kids) kids.push_back(map(*k));
            return n.op == Op::And ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        case Op::Implies: return make_implies(map(*n.kids[0]), map(*n.kids[1]));
        case Op::Iff: return make_iff(map(*n.kids[0]), map(*n.kids[1]));
        case Op::Exists:
        case Op::Forall: {
            const auto v = n.vars[0];
            allocate(v);
            auto g = guard(v);
            auto body = map(*n.kids[0]);
            NodePtr out = n.op == Op::Exists ? make_and({g, body}) : make_implies(g, body);
            for (std::size_t j = s_.p; j-- > 0;) {
                out = n.op == Op::Exists ? make_exists(slots_[v][j], out)
                                         : make_forall(slots_[v][j], out);
            }
            return out;
        }
        }
        return make_false();
    }

    const InterpretationScheme& s_;
    const Formula& phi_;
    std::vector<std::size_t> symbol_map_;
    std::vector<std::vector<std::size_t>> slots_;
    std::vector<std::string> names_;
    std::set<std::string> used_;
};

} // namespace

Formula translate_formula(const InterpretationScheme& scheme, const Formula& phi) {
    validate_scheme(scheme);
    return Translator(scheme, phi).run();
}

InterpretationScheme compose(const InterpretationScheme& first, const InterpretationScheme& second) {
    validate_scheme(first);
    validate_scheme(second);
    if (second.source != first.target) {
        throw Error(ErrorCode::SignatureMismatch, "cannot compose '" + first.name + "' with '" +
                                                      second.name +
                                                      "': source and target signatures differ");
    }
    InterpretationScheme out;
    out.name = second.name + "." + first.name;
    out.p = first.p * second.p;
    out.source = first.source;
    out.target = second.target;
    out.rho0 = translate_formula(first, second.rho0);
    for (const auto& r : second.rhos) out.rhos.push_back(translate_formula(first, r));
    return out;
}

InterpretationScheme merge_marked_schemes(const std::vector<InterpretationScheme>& schemes,
                                          const std::vector<std::string>& marks) {
    if (schemes.empty()) throw Error(ErrorCode::InvalidArgument, "merge needs at least one scheme");
    if (schemes.size() != marks.size()) {
        throw Error(ErrorCode::InvalidArgument, "merge needs one mark per scheme");
    }
    std::size_t p = 0;
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        validate_scheme(schemes[i]);
        auto idx = schemes[i].source.find(marks[i]);
        if (!idx || schemes[i].source[*idx].arity != 1) {
            throw Error(ErrorCode::UnknownSymbol, "missing mark: scheme '" + schemes[i].name +
                                                      "' has no unary symbol '" + marks[i] + "'");
        }
        p = std::max(p, schemes[i].p);
    }
    constexpr std::size_t kMaxExponent = 16;
    if (p > kMaxExponent) {
        throw Error(ErrorCode::BudgetExceeded,
                    "merged exponent " + std::to_string(p) + " exceeds the tuple limit of " +
                        std::to_string(kMaxExponent));
    }

    // Symbol names of each part inside the folded strong-sum signatures.
    Signature source = schemes[0].source, target = schemes[0].target;
    std::vector<std::vector<std::string>> src_names{{}};
    for (const auto& sym : source.symbols()) src_names[0].push_back(sym.name);
    for (std::size_t i = 1; i < schemes.size(); ++i) {
        src_names.push_back(strong_sum_names(source, schemes[i].source));
        source = strong_sum_signature(source, schemes[i].source);
        target = strong_sum_signature(target, schemes[i].target);
    }

    auto symbol_map = [&](std::size_t i) {
        std::vector<std::size_t> out;
        for (const auto& name : src_names[i]) out.push_back(source.index_of(name));
        return out;
    };

    InterpretationScheme merged;
    merged.p = p;
    merged.source = source;
    merged.target = target;
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        merged.name += (i ? "+" : "") + schemes[i].name;
    }

    {
        auto names = block_vars(p, 1);
        std::vector<NodePtr> cases;
        for (std::size_t i = 0; i < schemes.size(); ++i) {
            const auto& s = schemes[i];
            const auto mark = source.index_of(src_names[i][*s.source.find(marks[i])]);
            std::vector<NodePtr> parts;
            for (std::size_t j = 0; j < s.p; ++j) parts.push_back(make_atom(mark, {j}));
            for (std::size_t j = s.p - 1; j + 1 < p; ++j) parts.push_back(make_eq(j, p - 1));
            std::vector<std::size_t> free_map(s.p);
            for (std::size_t j = 0; j < s.p; ++j) free_map[j] = j;
            parts.push_back(instantiate(s.rho0, free_map, names, symbol_map(i)));
            cases.push_back(make_and(std::move(parts)));
        }
        merged.rho0 = Formula(source, names, p, make_or(std::move(cases)));
    }

    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const auto& s = schemes[i];
        const auto mark = source.index_of(src_names[i][*s.source.find(marks[i])]);
        for (std::size_t j = 0; j < s.target.size(); ++j) {
            const auto r = static_cast<std::size_t>(s.target[j].arity);
            auto names = block_vars(p, r);
            std::vector<NodePtr> parts;
            for (std::size_t v = 0; v < r * p; ++v) parts.push_back(make_atom(mark, {v}));
            std::vector<std::size_t> free_map;
            for (std::size_t b = 0; b < r; ++b) {
                for (std::size_t c = 0; c < s.p; ++c) free_map.push_back(b * p + c);
            }
            parts.push_back(instantiate(s.rhos[j], free_map, names, symbol_map(i)));
            merged.rhos.push_back(Formula(source, names, r * p, make_and(std::move(parts))));
        }
    }
    return merged;
}

} // namespace polyseq
