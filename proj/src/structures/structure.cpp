#include "polyseq/error.hpp"
#include "polyseq/structure.hpp"

#include <algorithm>
#include <numeric>

namespace polyseq {

namespace {

void normalize(std::vector<Tuple>& tuples) {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

} // namespace

Structure::Structure(Signature signature, std::size_t domain_size)
    : signature_(std::move(signature)), domain_size_(domain_size),
      relations_(signature_.size()) {}

Structure::Structure(Signature signature, std::size_t domain_size,
                     std::vector<std::vector<Tuple>> relations)
    : signature_(std::move(signature)), domain_size_(domain_size),
      relations_(std::move(relations)) {
    if (relations_.size() != signature_.size()) {
        throw Error(ErrorCode::InvalidArgument, "relation count does not match signature");
    }
    for (std::size_t s = 0; s < relations_.size(); ++s) {
        const auto arity = static_cast<std::size_t>(signature_[s].arity);
        for (const auto& t : relations_[s]) {
            if (t.size() != arity) {
                throw Error(ErrorCode::ArityMismatch,
                            "tuple of length " + std::to_string(t.size()) + " for symbol '" +
                                signature_[s].name + "' of arity " + std::to_string(arity));
            }
            for (Vertex v : t) {
                if (v >= domain_size_) {
                    throw Error(ErrorCode::InvalidArgument,
                                "vertex " + std::to_string(v) + " outside domain of size " +
                                    std::to_string(domain_size_));
                }
            }
        }
        normalize(relations_[s]);
    }
}

const std::vector<Tuple>& Structure::relation(std::string_view name) const {
    return relations_[signature_.index_of(name)];
}

bool Structure::holds(std::size_t symbol, std::span<const Vertex> tuple) const {
    const auto& rel = relations_[symbol];
    auto it = std::lower_bound(rel.begin(), rel.end(), tuple,
                               [](const Tuple& a, std::span<const Vertex> b) {
                                   return std::lexicographical_compare(a.begin(), a.end(),
                                                                       b.begin(), b.end());
                               });
    return it != rel.end() && std::equal(it->begin(), it->end(), tuple.begin(), tuple.end());
}

std::size_t Structure::tuple_count() const {
    std::size_t total = 0;
    for (const auto& r : relations_) total += r.size();
    return total;
}

StructureBuilder::StructureBuilder(Signature signature, std::size_t domain_size)
    : signature_(std::move(signature)), domain_size_(domain_size),
      relations_(signature_.size()) {}

StructureBuilder& StructureBuilder::add(std::size_t symbol, Tuple tuple) {
    relations_.at(symbol).push_back(std::move(tuple));
    return *this;
}

StructureBuilder& StructureBuilder::add(std::string_view name, Tuple tuple) {
    return add(signature_.index_of(name), std::move(tuple));
}

Structure StructureBuilder::build() && {
    return Structure(std::move(signature_), domain_size_, std::move(relations_));
}

Structure StructureBuilder::build() const& {
    return Structure(signature_, domain_size_, relations_);
}

// ---- structural helpers -------------------------------------------------

std::vector<std::vector<Vertex>> connected_components(const Structure& s) {
    const std::size_t n = s.domain_size();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& rel : s.relations()) {
        for (const auto& t : rel) {
            for (std::size_t i = 1; i < t.size(); ++i) {
                Vertex a = find(t[0]), b = find(t[i]);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::vector<Vertex>> components;
    std::vector<std::size_t> slot(n, SIZE_MAX);
    for (Vertex v = 0; v < n; ++v) {
        Vertex r = find(v);
        if (slot[r] == SIZE_MAX) {
            slot[r] = components.size();
            components.emplace_back();
        }
        components[slot[r]].push_back(v);
    }
    return components;
}

bool is_connected(const Structure& s) { return connected_components(s).size() <= 1; }

Structure induced(const Structure& s, std::span<const Vertex> vertices) {
    std::vector<std::int64_t> pos(s.domain_size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] >= s.domain_size() || pos[vertices[i]] != -1) {
            throw Error(ErrorCode::InvalidArgument, "induced: invalid vertex list");
        }
        pos[vertices[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<std::vector<Tuple>> rels(s.symbol_count());
    for (std::size_t sym = 0; sym < s.symbol_count(); ++sym) {
        for (const auto& t : s.relation(sym)) {
            Tuple mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (Vertex v : t) {
                if (pos[v] < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(static_cast<Vertex>(pos[v]));
            }
            if (inside) rels[sym].push_back(std::move(mapped));
        }
    }
    return Structure(s.signature(), vertices.size(), std::move(rels));
}

Structure relabel(const Structure& s, std::span<const Vertex> perm) {
    if (perm.size() != s.domain_size()) {
        throw Error(ErrorCode::InvalidArgument, "relabel: permutation size mismatch");
    }
    std::vector<std::vector<Tuple>> rels(s.symbol_count());
    for (std::size_t sym = 0; sym < s.symbol_count(); ++sym) {
        rels[sym].reserve(s.relation(sym).size());
        for (const auto& t : s.relation(sym)) {
            Tuple mapped(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = perm[t[i]];
            rels[sym].push_back(std::move(mapped));
        }
    }
    return Structure(s.signature(), s.domain_size(), std::move(rels));
}

Structure disjoint_union(const Structure& a, const Structure& b) {
    if (a.signature() != b.signature()) {
        throw Error(ErrorCode::SignatureMismatch, "disjoint union needs equal signatures");
    }
    auto rels = a.relations();
    const auto shift = static_cast<Vertex>(a.domain_size());
    for (std::size_t sym = 0; sym < b.symbol_count(); ++sym) {
        for (auto t : b.relation(sym)) {
            for (auto& v : t) v += shift;
            rels[sym].push_back(std::move(t));
        }
    }
    return Structure(a.signature(), a.domain_size() + b.domain_size(), std::move(rels));
}

Structure disjoint_copies(const Structure& a, std::size_t copies) {
    std::vector<std::vector<Tuple>> rels(a.symbol_count());
    for (std::size_t c = 0; c < copies; ++c) {
        const auto shift = static_cast<Vertex>(c * a.domain_size());
        for (std::size_t sym = 0; sym < a.symbol_count(); ++sym) {
            for (auto t : a.relation(sym)) {
                for (auto& v : t) v += shift;
                rels[sym].push_back(std::move(t));
            }
        }
    }
    return Structure(a.signature(), copies * a.domain_size(), std::move(rels));
}

} // namespace polyseq
