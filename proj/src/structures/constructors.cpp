#include "polyseq/error.hpp"
#include "polyseq/structure.hpp"

#include <algorithm>
#include <set>

namespace polyseq {

Structure build_marked_vertex() {
    return Structure(Signature{{"U", 1}}, 1, {{{0}}});
}

Structure build_transitive_tournament(std::size_t n) {
    std::vector<std::vector<Tuple>> rels(2);
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) rels[0].push_back({i, j});
        rels[1].push_back({i});
    }
    return Structure(Signature{{"S", 2}, {"U", 1}}, n, std::move(rels));
}

std::vector<std::string> strong_sum_names(const Signature& a, const Signature& b) {
    std::set<std::string> taken;
    for (const auto& s : a.symbols()) taken.insert(s.name);
    std::vector<std::string> names;
    names.reserve(b.size());
    for (const auto& s : b.symbols()) {
        std::string name = s.name;
        while (taken.count(name)) name += '\'';
        taken.insert(name);
        names.push_back(std::move(name));
    }
    return names;
}

Signature strong_sum_signature(const Signature& a, const Signature& b) {
    auto symbols = a.symbols();
    auto names = strong_sum_names(a, b);
    for (std::size_t i = 0; i < b.size(); ++i) symbols.push_back({names[i], b[i].arity});
    return Signature(std::move(symbols));
}

Structure strong_sum(const Structure& a, const Structure& b) {
    auto rels = a.relations();
    const auto shift = static_cast<Vertex>(a.domain_size());
    for (const auto& rel : b.relations()) {
        std::vector<Tuple> shifted = rel;
        for (auto& t : shifted) {
            for (auto& v : t) v += shift;
        }
        rels.push_back(std::move(shifted));
    }
    return Structure(strong_sum_signature(a.signature(), b.signature()),
                     a.domain_size() + b.domain_size(), std::move(rels));
}

Signature basic_signature(std::size_t k, std::size_t l) {
    std::vector<Symbol> symbols;
    for (std::size_t i = 1; i <= l; ++i) symbols.push_back({"U" + std::to_string(i) + "E", 1});
    for (std::size_t i = 1; i <= k; ++i) symbols.push_back({"U" + std::to_string(i) + "T", 1});
    for (std::size_t i = 1; i <= k; ++i) symbols.push_back({"S" + std::to_string(i), 2});
    return Signature(std::move(symbols));
}

Structure build_basic(const BasicStructureSpec& spec) {
    if (spec.orders.size() != spec.k) {
        throw Error(ErrorCode::InvalidArgument,
                    "basic structure needs " + std::to_string(spec.k) + " orders, got " +
                        std::to_string(spec.orders.size()));
    }
    std::size_t total = spec.l;
    for (auto n : spec.orders) total += n;
    std::vector<std::vector<Tuple>> rels(spec.l + 2 * spec.k);
    for (std::size_t i = 0; i < spec.l; ++i) rels[i].push_back({static_cast<Vertex>(i)});
    Vertex base = static_cast<Vertex>(spec.l);
    for (std::size_t t = 0; t < spec.k; ++t) {
        auto& mark = rels[spec.l + t];
        auto& order = rels[spec.l + spec.k + t];
        const auto n = static_cast<Vertex>(spec.orders[t]);
        for (Vertex i = 0; i < n; ++i) {
            mark.push_back({base + i});
            for (Vertex j = i + 1; j < n; ++j) order.push_back({base + i, base + j});
        }
        base += n;
    }
    return Structure(basic_signature(spec.k, spec.l), total, std::move(rels));
}

Structure lift(const Structure& s, const Signature& target) {
    for (const auto& sym : s.signature().symbols()) {
        auto idx = target.find(sym.name);
        if (!idx) {
            throw Error(ErrorCode::SignatureMismatch,
                        "lift target lacks symbol '" + sym.name + "'");
        }
        if (target[*idx].arity != sym.arity) {
            throw Error(ErrorCode::NameClash, "lift target declares '" + sym.name +
                                                  "' with a different arity");
        }
    }
    std::vector<std::vector<Tuple>> rels(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (auto src = s.signature().find(target[i].name)) rels[i] = s.relation(*src);
    }
    return Structure(target, s.domain_size(), std::move(rels));
}

Structure forget(const Structure& s, std::span<const std::string> drop) {
    std::vector<bool> dropped(s.symbol_count(), false);
    for (const auto& name : drop) dropped[s.signature().index_of(name)] = true;
    std::vector<Symbol> symbols;
    std::vector<std::vector<Tuple>> rels;
    for (std::size_t i = 0; i < s.symbol_count(); ++i) {
        if (dropped[i]) continue;
        symbols.push_back(s.signature()[i]);
        rels.push_back(s.relation(i));
    }
    return Structure(Signature(std::move(symbols)), s.domain_size(), std::move(rels));
}

Structure merge(const Structure& s,
                std::span<const std::pair<std::string, std::string>> pairs) {
    const auto& sig = s.signature();
    auto rels = s.relations();
    std::vector<bool> absorbed(sig.size(), false);
    for (const auto& [keep, absorb] : pairs) {
        auto k = sig.index_of(keep);
        auto a = sig.index_of(absorb);
        if (k == a) {
            throw Error(ErrorCode::InvalidArgument, "cannot merge '" + keep + "' with itself");
        }
        if (sig[k].arity != sig[a].arity) {
            throw Error(ErrorCode::ArityMismatch, "cannot merge '" + keep + "' (arity " +
                                                      std::to_string(sig[k].arity) + ") with '" +
                                                      absorb + "' (arity " +
                                                      std::to_string(sig[a].arity) + ")");
        }
        if (absorbed[k] || absorbed[a]) {
            throw Error(ErrorCode::InvalidArgument, "symbol merged twice");
        }
        rels[k].insert(rels[k].end(), rels[a].begin(), rels[a].end());
        rels[a].clear();
        absorbed[a] = true;
    }
    std::vector<Symbol> symbols;
    std::vector<std::vector<Tuple>> out;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        if (absorbed[i]) continue;
        symbols.push_back(sig[i]);
        out.push_back(std::move(rels[i]));
    }
    return Structure(Signature(std::move(symbols)), s.domain_size(), std::move(out));
}

Structure mark(const Structure& s, const std::string& name) {
    if (s.signature().contains(name)) {
        throw Error(ErrorCode::NameClash, "symbol '" + name + "' already present");
    }
    auto rels = s.relations();
    std::vector<Tuple> all;
    for (Vertex v = 0; v < s.domain_size(); ++v) all.push_back({v});
    rels.push_back(std::move(all));
    return Structure(s.signature().with({name, 1}), s.domain_size(), std::move(rels));
}

} // namespace polyseq
