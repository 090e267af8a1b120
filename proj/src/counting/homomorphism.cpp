#include "polyseq/counting.hpp"

#include "polyseq/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace polyseq {

const char* mode_name(CountMode mode) {
    switch (mode) {
    case CountMode::Hom: return "hom";
    case CountMode::Inj: return "inj";
    case CountMode::Ind: return "ind";
    }
    return "hom";
}

std::optional<CountMode> parse_mode(const std::string& text) {
    if (text == "hom") return CountMode::Hom;
    if (text == "inj") return CountMode::Inj;
    if (text == "ind") return CountMode::Ind;
    return std::nullopt;
}

std::uint64_t default_node_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("POLYSEQ_NODE_BUDGET")) {
            char* end = nullptr;
            auto v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{10'000'000'000};
    }();
    return value;
}

namespace {

struct PatternTuple {
    std::uint32_t symbol;  // target symbol index
    Tuple vertices;        // pattern vertices
};

// Backtracking matcher for one set of pattern vertices (a component, or the
// whole pattern for injective modes).
class Matcher {
public:
    Matcher(const Structure& pattern, const RelationIndex& target, CountMode mode,
            const std::vector<Vertex>& vertices, std::uint64_t& nodes, std::uint64_t budget)
        : target_(target), n_(target.structure().domain_size()), mode_(mode),
          nodes_(nodes), budget_(budget) {
        const auto& tsig = target.structure().signature();
        std::vector<char> inside(pattern.domain_size(), 0);
        for (Vertex v : vertices) inside[v] = 1;

        // Pattern relations keyed by target symbol.
        std::vector<std::vector<Tuple>> by_target(tsig.size());
        for (std::size_t s = 0; s < pattern.symbol_count(); ++s) {
            const auto& sym = pattern.signature()[s];
            const auto& rel = pattern.relation(s);
            auto idx = tsig.find(sym.name);
            if (!idx || tsig[*idx].arity != sym.arity) {
                if (rel.empty()) continue;
                throw Error(ErrorCode::SignatureMismatch,
                            "target has no symbol '" + sym.name + "' of arity " +
                                std::to_string(sym.arity));
            }
            for (const auto& t : rel) {
                bool keep = std::all_of(t.begin(), t.end(), [&](Vertex v) { return inside[v]; });
                if (keep) by_target[*idx].push_back(t);
            }
        }
        for (std::size_t s = 0; s < by_target.size(); ++s) {
            for (auto& t : by_target[s]) tuples_.push_back({static_cast<std::uint32_t>(s), t});
        }
        choose_order(pattern.domain_size(), vertices);
        build_levels(pattern.domain_size(), by_target);
    }

    std::uint64_t run() {
        if (order_.empty()) return 1;
        image_.assign(pos_.size(), 0);
        used_.assign(n_, 0);
        return extend(0);
    }

private:
    struct Anchor {
        std::uint32_t symbol;
        std::uint32_t placed_pos;  // position of the already placed vertex
        Vertex placed;             // that pattern vertex
        std::uint32_t new_pos;     // position of the vertex being placed
        bool high_arity;
    };

    struct Level {
        Vertex vertex;
        std::vector<std::uint32_t> checks;  // indices into tuples_
        std::vector<Anchor> anchors;
        std::vector<PatternTuple> forbidden;  // ind: tuples that must be absent
    };

    void choose_order(std::size_t pattern_size, const std::vector<Vertex>& vertices) {
        std::vector<std::size_t> weight(pattern_size, 0);
        for (const auto& t : tuples_) {
            for (Vertex v : t.vertices) ++weight[v];
        }
        std::vector<char> placed(pattern_size, 0);
        std::vector<std::size_t> links(pattern_size, 0);
        for (std::size_t step = 0; step < vertices.size(); ++step) {
            Vertex best = 0;
            bool have = false;
            for (Vertex v : vertices) {
                if (placed[v]) continue;
                if (!have || links[v] > links[best] ||
                    (links[v] == links[best] && weight[v] > weight[best])) {
                    best = v;
                    have = true;
                }
            }
            placed[best] = 1;
            order_.push_back(best);
            for (const auto& t : tuples_) {
                if (std::find(t.vertices.begin(), t.vertices.end(), best) == t.vertices.end()) {
                    continue;
                }
                for (Vertex u : t.vertices) {
                    if (!placed[u]) ++links[u];
                }
            }
        }
        pos_.assign(pattern_size, ~0U);
        for (std::uint32_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
    }

    void build_levels(std::size_t pattern_size,
                      const std::vector<std::vector<Tuple>>& by_target) {
        levels_.resize(order_.size());
        for (std::uint32_t i = 0; i < order_.size(); ++i) levels_[i].vertex = order_[i];
        for (std::uint32_t ti = 0; ti < tuples_.size(); ++ti) {
            const auto& t = tuples_[ti];
            std::uint32_t last = 0;
            for (Vertex v : t.vertices) last = std::max(last, pos_[v]);
            Level& level = levels_[last];
            level.checks.push_back(ti);
            const auto arity = target_.structure().signature()[t.symbol].arity;
            for (std::uint32_t p = 0; p < t.vertices.size(); ++p) {
                if (pos_[t.vertices[p]] >= last) continue;
                for (std::uint32_t q = 0; q < t.vertices.size(); ++q) {
                    if (t.vertices[q] == level.vertex) {
                        level.anchors.push_back({t.symbol, p, t.vertices[p], q, arity > 2});
                        break;
                    }
                }
                break;
            }
        }
        if (mode_ != CountMode::Ind) return;
        (void)pattern_size;
        const auto& tsig = target_.structure().signature();
        for (std::uint32_t i = 0; i < order_.size(); ++i) {
            for (std::uint32_t s = 0; s < tsig.size(); ++s) {
                const auto r = static_cast<std::size_t>(tsig[s].arity);
                // All r-tuples over order_[0..i] that use order_[i].
                std::vector<std::uint32_t> digits(r, 0);
                while (true) {
                    bool uses_new = false;
                    Tuple t(r);
                    for (std::size_t k = 0; k < r; ++k) {
                        t[k] = order_[digits[k]];
                        uses_new = uses_new || digits[k] == i;
                    }
                    if (uses_new && !std::binary_search(by_target[s].begin(), by_target[s].end(), t)) {
                        levels_[i].forbidden.push_back({s, t});
                    }
                    std::size_t k = 0;
                    while (k < r && digits[k] == i) digits[k++] = 0;
                    if (k == r) break;
                    ++digits[k];
                }
            }
        }
    }

    bool satisfied(const Level& level) const {
        Vertex buf[16];
        for (auto ti : level.checks) {
            const auto& t = tuples_[ti];
            const auto r = t.vertices.size();
            if (r == 1) {
                if (!target_.contains1(t.symbol, image_[pos_[t.vertices[0]]])) return false;
            } else if (r == 2) {
                if (!target_.contains2(t.symbol, image_[pos_[t.vertices[0]]],
                                       image_[pos_[t.vertices[1]]])) {
                    return false;
                }
            } else {
                std::vector<Vertex> big;
                Vertex* m = buf;
                if (r > 16) {
                    big.resize(r);
                    m = big.data();
                }
                for (std::size_t k = 0; k < r; ++k) m[k] = image_[pos_[t.vertices[k]]];
                if (!target_.contains(t.symbol, std::span<const Vertex>(m, r))) return false;
            }
        }
        for (const auto& t : level.forbidden) {
            const auto r = t.vertices.size();
            std::vector<Vertex> m(r);
            for (std::size_t k = 0; k < r; ++k) m[k] = image_[pos_[t.vertices[k]]];
            if (target_.contains(t.symbol, m)) return false;
        }
        return true;
    }

    void spend() {
        if (++nodes_ > budget_) {
            throw Error(ErrorCode::BudgetExceeded,
                        "counting budget of " + std::to_string(budget_) + " nodes exhausted");
        }
    }

    std::uint64_t try_candidate(std::uint32_t depth, Vertex w) {
        if (mode_ != CountMode::Hom && used_[w]) return 0;
        image_[depth] = w;
        spend();
        if (!satisfied(levels_[depth])) return 0;
        if (depth + 1 == levels_.size()) return 1;
        if (mode_ != CountMode::Hom) used_[w] = 1;
        std::uint64_t c = extend(depth + 1);
        if (mode_ != CountMode::Hom) used_[w] = 0;
        return c;
    }

    std::uint64_t extend(std::uint32_t depth) {
        const Level& level = levels_[depth];
        std::uint64_t total = 0;
        if (level.anchors.empty()) {
            for (Vertex w = 0; w < n_; ++w) total += try_candidate(depth, w);
            return total;
        }
        // Smallest candidate list among anchors.
        const Anchor* best = nullptr;
        std::size_t best_size = 0;
        for (const auto& a : level.anchors) {
            const auto& inc = target_.incident(a.symbol, a.placed_pos, image_[pos_[a.placed]]);
            if (!best || inc.size() < best_size) {
                best = &a;
                best_size = inc.size();
            }
        }
        const auto& rel = target_.structure().relation(best->symbol);
        const auto& inc = target_.incident(best->symbol, best->placed_pos,
                                           image_[pos_[best->placed]]);
        if (!best->high_arity) {
            for (auto ti : inc) total += try_candidate(depth, rel[ti][best->new_pos]);
            return total;
        }
        std::vector<Vertex> cands;
        cands.reserve(inc.size());
        for (auto ti : inc) cands.push_back(rel[ti][best->new_pos]);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (Vertex w : cands) total += try_candidate(depth, w);
        return total;
    }

    const RelationIndex& target_;
    std::size_t n_;
    CountMode mode_;
    std::uint64_t& nodes_;
    std::uint64_t budget_;
    std::vector<PatternTuple> tuples_;
    std::vector<Vertex> order_;
    std::vector<std::uint32_t> pos_;
    std::vector<Level> levels_;
    std::vector<Vertex> image_;
    std::vector<char> used_;
};

} // namespace

CountReport count(CountMode mode, const Structure& pattern, const RelationIndex& target,
                  const CountOptions& options) {
    CountReport report;
    report.mode = mode;
    if (mode != CountMode::Hom && pattern.domain_size() > target.structure().domain_size()) {
        // Still validate signatures so errors do not depend on sizes.
        std::vector<Vertex> none;
        Matcher(pattern, target, mode, none, report.nodes_explored, options.node_budget);
        report.value = 0;
        return report;
    }
    if (mode == CountMode::Hom) {
        report.value = 1;
        auto components = connected_components(pattern);
        if (components.empty()) {
            std::vector<Vertex> none;
            Matcher(pattern, target, mode, none, report.nodes_explored, options.node_budget);
        }
        for (const auto& comp : components) {
            Matcher m(pattern, target, mode, comp, report.nodes_explored, options.node_budget);
            auto c = m.run();
            report.value *= c;
            if (c == 0) break;
        }
        return report;
    }
    std::vector<Vertex> all(pattern.domain_size());
    for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
    Matcher m(pattern, target, mode, all, report.nodes_explored, options.node_budget);
    report.value = m.run();
    return report;
}

CountReport count(CountMode mode, const Structure& pattern, const Structure& target,
                  const CountOptions& options) {
    RelationIndex index(target);
    return count(mode, pattern, index, options);
}

CountReport hom_count(const Structure& pattern, const Structure& target,
                      const CountOptions& options) {
    return count(CountMode::Hom, pattern, target, options);
}

CountReport inj_count(const Structure& pattern, const Structure& target,
                      const CountOptions& options) {
    return count(CountMode::Inj, pattern, target, options);
}

CountReport ind_count(const Structure& pattern, const Structure& target,
                      const CountOptions& options) {
    return count(CountMode::Ind, pattern, target, options);
}

} // namespace polyseq
