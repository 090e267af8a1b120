#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyseq {

using Vertex = std::uint32_t;
using Tuple = std::vector<Vertex>;

struct Symbol {
    std::string name;
    int arity = 0;

    bool operator==(const Symbol&) const = default;
    auto operator<=>(const Symbol&) const = default;
};

// Ordered list of relation symbols. Names are unique, arities >= 1.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);
    Signature(std::initializer_list<Symbol> symbols);

    static Signature graph();

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }

    std::optional<std::size_t> find(std::string_view name) const;
    // Throws UnknownSymbol.
    std::size_t index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name).has_value(); }

    // Appends a symbol; throws NameClash when the name is taken.
    Signature with(Symbol symbol) const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<Symbol> symbols_;
};

// First name of the form base, base', base'', ... not present in `sig`.
std::string fresh_symbol_name(const Signature& sig, const std::string& base);

// Finite relational structure on vertices 0..domain_size()-1.
// Immutable once built; tuple lists are sorted and duplicate-free.
class Structure {
public:
    Structure() = default;
    Structure(Signature signature, std::size_t domain_size);
    // Validates bounds and arities, then sorts and deduplicates.
    Structure(Signature signature, std::size_t domain_size,
              std::vector<std::vector<Tuple>> relations);

    const Signature& signature() const { return signature_; }
    std::size_t domain_size() const { return domain_size_; }
    std::size_t symbol_count() const { return signature_.size(); }

    const std::vector<Tuple>& relation(std::size_t symbol) const { return relations_[symbol]; }
    const std::vector<Tuple>& relation(std::string_view name) const;
    const std::vector<std::vector<Tuple>>& relations() const { return relations_; }

    // Binary search membership; use RelationIndex in hot loops.
    bool holds(std::size_t symbol, std::span<const Vertex> tuple) const;
    std::size_t tuple_count() const;

    bool operator==(const Structure&) const = default;

private:
    Signature signature_;
    std::size_t domain_size_ = 0;
    std::vector<std::vector<Tuple>> relations_;
};

class StructureBuilder {
public:
    StructureBuilder(Signature signature, std::size_t domain_size);

    StructureBuilder& add(std::size_t symbol, Tuple tuple);
    StructureBuilder& add(std::string_view name, Tuple tuple);
    Structure build() &&;
    Structure build() const&;

    const Signature& signature() const { return signature_; }
    std::size_t domain_size() const { return domain_size_; }

private:
    Signature signature_;
    std::size_t domain_size_;
    std::vector<std::vector<Tuple>> relations_;
};

// ---- constructors -------------------------------------------------------

// Single vertex, signature {U:1}, U = {(0)}.
Structure build_marked_vertex();

// Vertices 0..n-1, S(i,j) iff i < j, U holds everywhere. Signature {S:2, U:1}.
Structure build_transitive_tournament(std::size_t n);

// Disjoint union of domains; relations of `a` stay on the first part, those of
// `b` on the second. Colliding names from `b` get ticks appended (U -> U').
Structure strong_sum(const Structure& a, const Structure& b);
// Names the second operand's symbols receive in strong_sum(a, b).
std::vector<std::string> strong_sum_names(const Signature& a, const Signature& b);
Signature strong_sum_signature(const Signature& a, const Signature& b);

struct BasicStructureSpec {
    std::size_t k = 0;                 // transitive tournaments
    std::size_t l = 0;                 // marked vertices
    std::vector<std::size_t> orders;   // N_1..N_k
};

// Signature beta_{k,l}: U1E..UlE, U1T..UkT (unary), S1..Sk (binary).
Signature basic_signature(std::size_t k, std::size_t l);
// E + ... + E (l times) + T_{N_1} + ... + T_{N_k}, marked vertices first.
Structure build_basic(const BasicStructureSpec& spec);

// Signature adapters (lift / forget / merge / mark).
Structure lift(const Structure& s, const Signature& target);
Structure forget(const Structure& s, std::span<const std::string> drop);
// Each pair (keep, absorb) unions `absorb` into `keep` and removes `absorb`.
Structure merge(const Structure& s,
                std::span<const std::pair<std::string, std::string>> pairs);
Structure mark(const Structure& s, const std::string& name);

// Same structure up to renaming relations and relabelling vertices.
// Backtracking search; throws CapExceeded above `cap` vertices.
bool weakly_isomorphic(const Structure& a, const Structure& b, std::size_t cap = 10);

// ---- structural helpers -------------------------------------------------

// Gaifman connected components, each sorted; components ordered by minimum vertex.
std::vector<std::vector<Vertex>> connected_components(const Structure& s);
bool is_connected(const Structure& s);

// Substructure induced on `vertices` (relabelled 0.. in the given order).
Structure induced(const Structure& s, std::span<const Vertex> vertices);

// Vertex v of `s` becomes perm[v].
Structure relabel(const Structure& s, std::span<const Vertex> perm);

// Disjoint union of same-signature structures (no renaming).
Structure disjoint_union(const Structure& a, const Structure& b);
Structure disjoint_copies(const Structure& a, std::size_t copies);

} // namespace polyseq
