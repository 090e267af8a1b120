#include "polyseq/ordered_sum.hpp"

#include "polyseq/error.hpp"

#include <algorithm>
#include <map>

namespace polyseq {

OrderedSumSymbols ordered_sum_symbols(const Signature& inner) {
    OrderedSumSymbols out;
    out.s = fresh_symbol_name(inner, "S");
    Signature with_s = inner.with({out.s, 2});
    out.u = fresh_symbol_name(with_s, "U");
    if (out.s != "S") out.renames.push_back("S -> " + out.s);
    if (out.u != "U") out.renames.push_back("U -> " + out.u);
    return out;
}

Signature ordered_sum_signature(const Signature& inner) {
    auto names = ordered_sum_symbols(inner);
    return inner.with({names.s, 2}).with({names.u, 1});
}

Structure ordered_sum(const Signature& inner, std::span<const Structure> blocks) {
    const auto names = ordered_sum_symbols(inner);
    const Signature sig = inner.with({names.s, 2}).with({names.u, 1});
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.signature() != inner) {
            throw Error(ErrorCode::SignatureMismatch, "ordered_sum: every block must use the inner signature");
        }
        total += b.domain_size();
    }
    std::vector<std::vector<Tuple>> rels(sig.size());
    Vertex offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < inner.size(); ++r) {
            for (Tuple t : b.relation(r)) {
                for (auto& v : t) v += offset;
                rels[r].push_back(std::move(t));
            }
        }
        const Vertex end = offset + static_cast<Vertex>(b.domain_size());
        for (Vertex x = offset; x < end; ++x) {
            for (Vertex y = end; y < total; ++y) rels[inner.size()].push_back({x, y});
        }
        offset = end;
    }
    for (Vertex v = 0; v < total; ++v) rels[inner.size() + 1].push_back({v});
    return Structure(sig, total, std::move(rels));
}

BigInt telescoped_sum(const std::vector<std::vector<BigInt>>& values, long long n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "telescoped_sum: negative n");
    // acc[i] = sum over chains ending at index <= i for the parts seen so far.
    std::vector<BigInt> acc(static_cast<std::size_t>(n) + 1, BigInt(1));
    for (const auto& row : values) {
        if (row.size() < static_cast<std::size_t>(n)) {
            throw Error(ErrorCode::InvalidArgument, "telescoped_sum: row shorter than n");
        }
        std::vector<BigInt> next(acc.size(), BigInt(0));
        for (std::size_t i = 1; i < acc.size(); ++i) {
            next[i] = next[i - 1] + row[i - 1] * acc[i - 1];
        }
        acc = std::move(next);
    }
    return acc.back();
}

BigInt telescoped_inj(std::span<const IntPolynomial> fits, long long n) {
    std::vector<std::vector<BigInt>> values;
    for (const auto& p : fits) {
        std::vector<BigInt> row;
        for (long long i = 1; i <= n; ++i) row.push_back(p(i));
        values.push_back(std::move(row));
    }
    return telescoped_sum(values, n);
}

IntPolynomial telescoped_polynomial(std::span<const IntPolynomial> fits) {
    // Q_j(n) = sum_{i <= n} P_j(i) Q_{j-1}(i - 1), Q_0 = 1.
    IntPolynomial q = IntPolynomial::constant(1);
    const IntPolynomial shift = IntPolynomial::variable() - IntPolynomial::constant(1);
    for (const auto& p : fits) q = (p * q.compose(shift)).prefix_sum();
    return q;
}

namespace {

struct PatternParts {
    std::optional<std::size_t> s, u;
    std::vector<std::size_t> inner;  // pattern symbol indices over the inner signature
};

PatternParts classify(const Structure& f, const Signature& inner, const OrderedSumSymbols& names) {
    PatternParts parts;
    const auto& sig = f.signature();
    for (std::size_t r = 0; r < sig.size(); ++r) {
        const auto& sym = sig[r];
        if (sym.name == names.s && sym.arity == 2) {
            parts.s = r;
        } else if (sym.name == names.u && sym.arity == 1) {
            parts.u = r;
        } else if (auto i = inner.find(sym.name); i && inner[*i].arity == sym.arity) {
            parts.inner.push_back(r);
        } else if (!f.relation(r).empty()) {
            throw Error(ErrorCode::SignatureMismatch,
                        "pattern symbol '" + sym.name + "' is not part of the ordered-sum signature");
        }
    }
    return parts;
}

// F restricted to `part` and to the inner signature.
Structure inner_part(const Structure& f, const Signature& inner, const PatternParts& parts,
                     std::span<const Vertex> part) {
    std::vector<Vertex> pos(f.domain_size(), ~Vertex(0));
    for (std::size_t i = 0; i < part.size(); ++i) pos[part[i]] = static_cast<Vertex>(i);
    StructureBuilder b(inner, part.size());
    for (auto r : parts.inner) {
        const auto target = inner.index_of(f.signature()[r].name);
        for (const auto& t : f.relation(r)) {
            Tuple mapped;
            bool inside = true;
            for (auto v : t) {
                if (pos[v] == ~Vertex(0)) {
                    inside = false;
                    break;
                }
                mapped.push_back(pos[v]);
            }
            if (inside) b.add(target, std::move(mapped));
        }
    }
    return std::move(b).build();
}

class BlockCounts {
public:
    BlockCounts(const BlockSource& source, long long n) {
        for (long long i = 1; i <= n; ++i) blocks_.push_back(source(i));
    }

    std::vector<BigInt> row(CountMode mode, const Structure& part) const {
        std::vector<BigInt> out;
        for (const auto& b : blocks_) out.push_back(count(mode, part, b).value);
        return out;
    }

private:
    std::vector<Structure> blocks_;
};

} // namespace

std::optional<std::vector<std::vector<Vertex>>> nice_partition(const Structure& f,
                                                               const OrderedSumSymbols& names) {
    const auto& sig = f.signature();
    const auto s = sig.find(names.s);
    const auto u = sig.find(names.u);
    const std::size_t n = f.domain_size();
    if (n > 0 && (!u || f.relation(*u).size() != n)) return std::nullopt;
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    if (s) {
        for (const auto& t : f.relation(*s)) rel[t[0]][t[1]] = 1;
    }
    // Parts are classes of "S in neither direction"; they must be totally
    // ordered by S, which is then a strict weak order.
    std::vector<int> part(n, -1);
    std::vector<std::vector<Vertex>> parts;
    for (Vertex v = 0; v < n; ++v) {
        if (part[v] >= 0) continue;
        part[v] = static_cast<int>(parts.size());
        parts.push_back({v});
        for (Vertex w = v + 1; w < n; ++w) {
            if (part[w] < 0 && !rel[v][w] && !rel[w][v]) {
                part[w] = part[v];
                parts.back().push_back(w);
            }
        }
    }
    for (Vertex x = 0; x < n; ++x) {
        for (Vertex y = 0; y < n; ++y) {
            if (part[x] == part[y]) {
                if (rel[x][y]) return std::nullopt;
            } else if (rel[x][y] == rel[y][x]) {
                return std::nullopt;
            }
        }
    }
    // Order parts by how many vertices they precede (larger first).
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        std::size_t ahead = 0;
        for (Vertex y = 0; y < n; ++y) ahead += rel[parts[p][0]][y];
        order.push_back({n - ahead, p});
    }
    std::sort(order.begin(), order.end());
    std::vector<std::vector<Vertex>> out;
    for (auto [key, p] : order) out.push_back(parts[p]);
    // Consistency: every earlier part must precede every later part.
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            for (auto x : out[i]) {
                for (auto y : out[j]) {
                    if (!rel[x][y]) return std::nullopt;
                }
            }
        }
    }
    return out;
}

BigInt ordered_sum_nice_formula(CountMode mode, const Structure& f, const Signature& inner,
                                const BlockSource& blocks, long long n) {
    if (mode == CountMode::Hom) {
        throw Error(ErrorCode::InvalidArgument, "ordered_sum_nice_formula: mode must be inj or ind");
    }
    const auto names = ordered_sum_symbols(inner);
    const auto parts = classify(f, inner, names);
    const auto partition = nice_partition(f, names);
    if (!partition) return 0;
    if (mode == CountMode::Ind) {
        // Inner tuples across parts have no image in T<A>_n.
        std::vector<int> part_of(f.domain_size());
        for (std::size_t p = 0; p < partition->size(); ++p) {
            for (auto v : (*partition)[p]) part_of[v] = static_cast<int>(p);
        }
        for (auto r : parts.inner) {
            for (const auto& t : f.relation(r)) {
                for (auto v : t) {
                    if (part_of[v] != part_of[t[0]]) return 0;
                }
            }
        }
    }
    BlockCounts counts(blocks, n);
    std::vector<std::vector<BigInt>> values;
    for (const auto& p : *partition) values.push_back(counts.row(mode, inner_part(f, inner, parts, p)));
    return telescoped_sum(values, n);
}

BigInt ordered_sum_inj_exact(const Structure& f, const Signature& inner, const BlockSource& blocks,
                             long long n) {
    const auto names = ordered_sum_symbols(inner);
    const auto parts = classify(f, inner, names);
    const std::size_t size = f.domain_size();
    if (size > 16) throw Error(ErrorCode::CapExceeded, "ordered_sum_inj_exact: pattern above 16 vertices");
    if (size == 0) return 1;
    BlockCounts counts(blocks, n);
    std::map<std::uint32_t, std::vector<BigInt>> rows;  // by vertex mask
    auto row_for = [&](const std::vector<Vertex>& part) -> const std::vector<BigInt>& {
        std::uint32_t mask = 0;
        for (auto v : part) mask |= 1u << v;
        auto it = rows.find(mask);
        if (it == rows.end()) {
            it = rows.emplace(mask, counts.row(CountMode::Inj, inner_part(f, inner, parts, part))).first;
        }
        return it->second;
    };

    BigInt total = 0;
    std::vector<std::uint32_t> label(size, 0);
    for (std::size_t k = 1; k <= size; ++k) {
        std::fill(label.begin(), label.end(), 0);
        while (true) {
            std::vector<char> used(k, 0);
            for (auto l : label) used[l] = 1;
            bool ok = std::find(used.begin(), used.end(), 0) == used.end();
            if (ok && parts.s) {
                for (const auto& t : f.relation(*parts.s)) {
                    if (label[t[0]] >= label[t[1]]) {
                        ok = false;
                        break;
                    }
                }
            }
            for (auto r : parts.inner) {
                if (!ok) break;
                for (const auto& t : f.relation(r)) {
                    for (auto v : t) {
                        if (label[v] != label[t[0]]) ok = false;
                    }
                }
            }
            if (ok) {
                std::vector<std::vector<Vertex>> ordered(k);
                for (Vertex v = 0; v < size; ++v) ordered[label[v]].push_back(v);
                std::vector<std::vector<BigInt>> values;
                for (const auto& p : ordered) values.push_back(row_for(p));
                total += telescoped_sum(values, n);
            }
            std::size_t i = 0;
            while (i < size && ++label[i] == k) label[i++] = 0;
            if (i == size) break;
        }
    }
    return total;
}

} // namespace polyseq
