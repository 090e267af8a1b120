#include "polyseq/canonical.hpp"

#include "polyseq/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace polyseq {

namespace {

void put_u32(std::string& out, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
}

std::string encode_header(const Structure& s) {
    std::string out;
    for (const auto& sym : s.signature().symbols()) {
        out += sym.name;
        out.push_back('\0');
        put_u32(out, static_cast<std::uint32_t>(sym.arity));
    }
    out.push_back('\x01');
    put_u32(out, static_cast<std::uint32_t>(s.domain_size()));
    return out;
}

using Coloring = std::vector<std::uint32_t>;

// Individualization-refinement over one connected structure.
class Canonizer {
public:
    explicit Canonizer(const Structure& s) : s_(s), n_(s.domain_size()) {
        for (std::size_t sym = 0; sym < s.symbol_count(); ++sym) {
            const auto& rel = s.relation(sym);
            for (std::uint32_t t = 0; t < rel.size(); ++t) {
                for (std::uint32_t p = 0; p < rel[t].size(); ++p) {
                    occ_.resize(n_);
                    occ_[rel[t][p]].push_back({static_cast<std::uint32_t>(sym), p, t});
                }
            }
        }
        occ_.resize(n_);
    }

    std::string run() {
        if (n_ == 0) return encode({});
        Coloring c(n_, 0);
        refine(c);
        search(c, 0, true);
        return best_cert_;
    }

private:
    struct Occurrence {
        std::uint32_t symbol, pos, tuple;
    };

    // Renumber colors by sorting signatures; order depends only on signatures.
    template <class Sig>
    static std::size_t rank(std::vector<Sig>& sigs, Coloring& c) {
        std::vector<std::uint32_t> idx(sigs.size());
        std::iota(idx.begin(), idx.end(), 0U);
        std::sort(idx.begin(), idx.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return sigs[a] < sigs[b]; });
        std::uint32_t color = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i > 0 && sigs[idx[i - 1]] != sigs[idx[i]]) ++color;
            c[idx[i]] = color;
        }
        return idx.empty() ? 0 : color + 1;
    }

    static std::size_t cell_count(const Coloring& c) {
        return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    }

    void refine(Coloring& c) const {
        std::size_t cells = cell_count(c);
        while (true) {
            std::vector<std::vector<std::uint32_t>> sigs(n_);
            for (Vertex v = 0; v < n_; ++v) {
                std::vector<std::vector<std::uint32_t>> entries;
                entries.reserve(occ_[v].size());
                for (const auto& o : occ_[v]) {
                    const auto& t = s_.relation(o.symbol)[o.tuple];
                    std::vector<std::uint32_t> e{o.symbol, o.pos};
                    for (Vertex u : t) e.push_back(c[u]);
                    entries.push_back(std::move(e));
                }
                std::sort(entries.begin(), entries.end());
                auto& sig = sigs[v];
                sig.push_back(c[v]);
                for (const auto& e : entries) {
                    sig.push_back(static_cast<std::uint32_t>(e.size()));
                    sig.insert(sig.end(), e.begin(), e.end());
                }
            }
            std::size_t next = rank(sigs, c);
            if (next == cells) return;
            cells = next;
        }
    }

    std::string encode(const std::vector<Vertex>& lab) const {
        std::string out;
        for (std::size_t sym = 0; sym < s_.symbol_count(); ++sym) {
            std::vector<Tuple> rel;
            rel.reserve(s_.relation(sym).size());
            for (const auto& t : s_.relation(sym)) {
                Tuple m(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) m[i] = lab[t[i]];
                rel.push_back(std::move(m));
            }
            std::sort(rel.begin(), rel.end());
            put_u32(out, static_cast<std::uint32_t>(rel.size()));
            for (const auto& t : rel) {
                for (Vertex v : t) put_u32(out, v);
            }
        }
        return out;
    }

    static std::vector<Vertex> inverse(const std::vector<Vertex>& p) {
        std::vector<Vertex> inv(p.size());
        for (Vertex v = 0; v < p.size(); ++v) inv[p[v]] = v;
        return inv;
    }

    void record_automorphism(const std::vector<Vertex>& from_lab,
                             const std::vector<Vertex>& to_lab) {
        // gamma = from^{-1} o to maps each vertex to its counterpart.
        auto inv = inverse(from_lab);
        std::vector<Vertex> gamma(n_);
        for (Vertex v = 0; v < n_; ++v) gamma[v] = inv[to_lab[v]];
        automorphisms_.push_back(std::move(gamma));
    }

    // Orbits of the group generated by automorphisms fixing `prefix` pointwise.
    std::vector<Vertex> orbits(const std::vector<Vertex>& prefix) const {
        std::vector<Vertex> parent(n_);
        std::iota(parent.begin(), parent.end(), Vertex{0});
        auto find = [&](Vertex v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& g : automorphisms_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(),
                                     [&](Vertex v) { return g[v] == v; });
            if (!fixes) continue;
            for (Vertex v = 0; v < n_; ++v) {
                Vertex a = find(v), b = find(g[v]);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
        for (Vertex v = 0; v < n_; ++v) parent[v] = find(v);
        return parent;
    }

    // Returns true when an automorphism onto the first leaf was found below a
    // node off the first path; the caller then abandons that subtree.
    bool search(const Coloring& c, std::size_t level, bool first_path) {
        const std::size_t cells = cell_count(c);
        if (cells == n_) return leaf(c);

        // Target cell: first non-singleton cell in color order.
        std::vector<std::uint32_t> size(cells, 0);
        for (auto x : c) ++size[x];
        std::uint32_t target = 0;
        while (size[target] == 1) ++target;
        std::vector<Vertex> members;
        for (Vertex v = 0; v < n_; ++v) {
            if (c[v] == target) members.push_back(v);
        }

        std::vector<Vertex> explored;
        for (Vertex v : members) {
            if (first_path && !explored.empty()) {
                auto orb = orbits(std::vector<Vertex>(path_.begin(), path_.begin() + level));
                bool seen = std::any_of(explored.begin(), explored.end(),
                                        [&](Vertex w) { return orb[w] == orb[v]; });
                if (seen) continue;
            }
            Coloring child(n_);
            std::vector<std::uint64_t> keys(n_);
            for (Vertex u = 0; u < n_; ++u) {
                keys[u] = 2 * std::uint64_t{c[u]} + (c[u] == target && u != v ? 1 : 0);
            }
            rank(keys, child);
            refine(child);
            const bool child_first = first_path && explored.empty();
            if (child_first) path_.push_back(v);
            bool jump = search(child, level + 1, child_first);
            explored.push_back(v);
            if (jump && !first_path) return true;
        }
        return false;
    }

    bool leaf(const Coloring& c) {
        std::vector<Vertex> lab(c.begin(), c.end());
        std::string cert = encode(lab);
        if (first_lab_.empty()) {
            first_lab_ = best_lab_ = lab;
            first_cert_ = best_cert_ = cert;
            return false;
        }
        if (cert == first_cert_) {
            record_automorphism(first_lab_, lab);
            return true;
        }
        if (cert == best_cert_) {
            record_automorphism(best_lab_, lab);
        } else if (cert < best_cert_) {
            best_cert_ = std::move(cert);
            best_lab_ = std::move(lab);
        }
        return false;
    }

    const Structure& s_;
    std::size_t n_;
    std::vector<std::vector<Occurrence>> occ_;
    std::vector<Vertex> path_;
    std::vector<Vertex> first_lab_, best_lab_;
    std::string first_cert_, best_cert_;
    std::vector<std::vector<Vertex>> automorphisms_;
};

} // namespace

std::string canonical_form(const Structure& s, const CanonicalOptions& options) {
    if (s.domain_size() > options.max_vertices) {
        throw Error(ErrorCode::CapExceeded,
                    "canonical form limited to " + std::to_string(options.max_vertices) +
                        " vertices, got " + std::to_string(s.domain_size()));
    }
    auto components = connected_components(s);
    std::string out = encode_header(s);
    if (components.size() == 1) {
        out.push_back('C');
        out += Canonizer(s).run();
        return out;
    }
    std::vector<std::string> keys;
    keys.reserve(components.size());
    for (const auto& comp : components) {
        keys.push_back(canonical_form(induced(s, comp), options));
    }
    std::sort(keys.begin(), keys.end());
    out.push_back('M');
    put_u32(out, static_cast<std::uint32_t>(keys.size()));
    for (const auto& k : keys) {
        put_u32(out, static_cast<std::uint32_t>(k.size()));
        out += k;
    }
    return out;
}

bool isomorphic(const Structure& a, const Structure& b, std::size_t cap) {
    if (a.signature() != b.signature() || a.domain_size() != b.domain_size() ||
        a.tuple_count() != b.tuple_count()) {
        return false;
    }
    CanonicalOptions opts{cap};
    return canonical_form(a, opts) == canonical_form(b, opts);
}

} // namespace polyseq
