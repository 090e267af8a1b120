#include "polyseq/gallery.hpp"

#include "polyseq/canonical.hpp"
#include "polyseq/error.hpp"
#include "polyseq/graphs.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <set>

namespace polyseq {

namespace {

// Splits on commas outside parentheses.
std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::size_t to_count(const std::string& text, const std::string& what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 6) {
        throw Error(ErrorCode::InvalidArgument, "parameter '" + what + "' expects a non-negative integer, got '" + text + "'");
    }
    return std::stoul(text);
}

std::vector<std::size_t> counts(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (const auto& s : split_list(text)) out.push_back(to_count(s, what));
    return out;
}

std::vector<std::pair<Vertex, Vertex>> edges_of(const std::string& text) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& e : split_list(text)) {
        auto dash = e.find('-');
        if (dash == std::string::npos) {
            throw Error(ErrorCode::InvalidArgument, "parameter 'edges' expects a-b pairs, got '" + e + "'");
        }
        out.emplace_back(static_cast<Vertex>(to_count(e.substr(0, dash), "edges")),
                         static_cast<Vertex>(to_count(e.substr(dash + 1), "edges")));
    }
    return out;
}

std::size_t value_at(const IntPolynomial& p, long long n) {
    BigInt v = p(n);
    if (v < 0) {
        throw Error(ErrorCode::NegativeValue, "polynomial " + p.to_string() + " is negative at n = " + std::to_string(n));
    }
    return static_cast<std::size_t>(v);
}

IntPolynomial order(const SchemeParams& p) { return parse_polynomial(p.at("order")); }

// Order polynomials for k tournaments; an empty list means n for each.
std::vector<IntPolynomial> orders(const SchemeParams& p, std::size_t k) {
    std::vector<IntPolynomial> out;
    for (const auto& s : split_list(p.at("orders"))) out.push_back(parse_polynomial(s));
    if (out.empty()) out.assign(k, IntPolynomial::variable());
    if (out.size() == 1 && k > 1) out.assign(k, out[0]);
    if (out.size() != k) {
        throw Error(ErrorCode::InvalidArgument, "parameter 'orders' needs " + std::to_string(k) + " polynomials");
    }
    return out;
}

SpecPtr one_order(const SchemeParams& p, std::size_t l) { return make_basic(1, l, {order(p)}); }

SpecPtr complete_base(const SchemeParams& p) {
    return make_builtin_interpreted("forget-orientation", {}, one_order(p, 0));
}

std::vector<std::vector<Vertex>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, Vertex start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = start; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::size_t common(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t c = 0;
    for (auto x : a) c += std::count(b.begin(), b.end(), x);
    return c;
}

std::string digest(const std::string& key) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<GalleryEntry> make_entries() {
    const GalleryParam order_param{"order", "polynomial", "n", "order polynomial Q(n) of the tournament"};
    std::vector<GalleryEntry> e;

    e.push_back({"crown", "K_{n,n} minus a perfect matching", {order_param}, 0, 6,
                 [](const SchemeParams& p) { return make_builtin_interpreted("crown", {}, one_order(p, 2)); },
                 [](const SchemeParams& p, long long n) { return crown_graph(value_at(order(p), n)); }});

    e.push_back({"kneser", "k-subsets, adjacent when disjoint",
                 {order_param, {"k", "integer", "2", "subset size"}}, 0, 6,
                 [](const SchemeParams& p) {
                     return make_builtin_interpreted("kneser", {{"k", p.at("k")}}, one_order(p, 0));
                 },
                 [](const SchemeParams& p, long long n) {
                     return johnson_graph(value_at(order(p), n), to_count(p.at("k"), "k"), {0});
                 }});

    e.push_back({"johnson", "k-subsets, adjacent when the intersection size lies in D",
                 {order_param, {"k", "integer", "2", "subset size"}, {"d", "set", "1", "allowed intersection sizes"}},
                 0, 6,
                 [](const SchemeParams& p) {
                     return make_builtin_interpreted("johnson", {{"k", p.at("k")}, {"d", p.at("d")}}, one_order(p, 0));
                 },
                 [](const SchemeParams& p, long long n) {
                     return johnson_graph(value_at(order(p), n), to_count(p.at("k"), "k"), counts(p.at("d"), "d"));
                 }});

    e.push_back({"vertexBlowup", "vertex i of a fixed graph F replaced by an independent set of size P_i(n)",
                 {{"k", "integer", "3", "vertices of F"},
                  {"edges", "edges", "0-1,1-2", "edges of F"},
                  {"orders", "polynomials", "", "P_1..P_k, default n each"}},
                 0, 6,
                 [](const SchemeParams& p) {
                     const auto k = to_count(p.at("k"), "k");
                     return make_builtin_interpreted("vertex-blowup", {{"k", p.at("k")}, {"edges", p.at("edges")}},
                                                     make_basic(k, 0, orders(p, k)));
                 },
                 [](const SchemeParams& p, long long n) {
                     const auto k = to_count(p.at("k"), "k");
                     std::vector<std::size_t> sizes;
                     for (const auto& q : orders(p, k)) sizes.push_back(value_at(q, n));
                     return blowup_graph(sizes, edges_of(p.at("edges")));
                 }});

    e.push_back({"treeBlowup", "rooted tree whose vertex v is copied P_v(n) times below each copy of its parent",
                 {{"parents", "parents", "0,0,0,1", "parent of each vertex, root 0"},
                  {"orders", "polynomials", "", "P_1..P_k, default n each"}},
                 0, 4,
                 [](const SchemeParams& p) {
                     const auto k = counts(p.at("parents"), "parents").size();
                     return make_builtin_interpreted("tree-blowup", {{"parents", p.at("parents")}},
                                                     make_basic(k, 0, orders(p, k)));
                 },
                 [](const SchemeParams& p, long long n) {
                     const auto parents = counts(p.at("parents"), "parents");
                     std::vector<std::size_t> copies;
                     for (const auto& q : orders(p, parents.size())) copies.push_back(value_at(q, n));
                     return tree_blowup(parents, copies);
                 }});

    e.push_back({"starUnion", "disjoint union of the stars of orders 1..Q(n)",
                 {order_param, {"variant", "choice", "repaired", "repaired or literal vertex formula"}}, 0, 6,
                 [](const SchemeParams& p) {
                     const auto& v = p.at("variant");
                     if (v != "repaired" && v != "literal") {
                         throw Error(ErrorCode::InvalidArgument, "parameter 'variant' must be repaired or literal");
                     }
                     return make_builtin_interpreted(v == "repaired" ? "star-union" : "star-union-literal", {},
                                                     one_order(p, 0));
                 },
                 [](const SchemeParams& p, long long n) { return star_union(value_at(order(p), n)); }});

    e.push_back({"halfGraph", "a_i ~ b_j iff i < j", {order_param}, 0, 6,
                 [](const SchemeParams& p) { return make_builtin_interpreted("half-graph", {}, one_order(p, 2)); },
                 [](const SchemeParams& p, long long n) { return half_graph(value_at(order(p), n)); }});

    e.push_back({"chordGraph", "chords of a convex n-gon, adjacent when they cross", {order_param}, 0, 8,
                 [](const SchemeParams& p) { return make_builtin_interpreted("chord", {}, one_order(p, 0)); },
                 [](const SchemeParams& p, long long n) { return chord_graph(value_at(order(p), n)); }});

    e.push_back({"cliqueIntersection", "k-cliques of K_n, adjacent when the intersection size lies in D",
                 {order_param, {"k", "integer", "2", "clique size"}, {"d", "set", "1", "allowed intersection sizes"}},
                 0, 6,
                 [](const SchemeParams& p) {
                     return make_builtin_interpreted("clique-intersection", {{"k", p.at("k")}, {"d", p.at("d")}},
                                                     complete_base(p));
                 },
                 [](const SchemeParams& p, long long n) {
                     return clique_graph(complete_graph(value_at(order(p), n)), to_count(p.at("k"), "k"),
                                         counts(p.at("d"), "d"));
                 }});

    e.push_back({"lineGraph", "line graph of K_n", {order_param}, 0, 6,
                 [](const SchemeParams& p) { return make_builtin_interpreted("line-graph", {}, complete_base(p)); },
                 [](const SchemeParams& p, long long n) { return line_graph(complete_graph(value_at(order(p), n))); }});

    e.push_back({"subdivision", "1-subdivision of K_n", {order_param}, 0, 6,
                 [](const SchemeParams& p) { return make_builtin_interpreted("subdivision", {}, complete_base(p)); },
                 [](const SchemeParams& p, long long n) { return subdivision(complete_graph(value_at(order(p), n))); }});
    return e;
}

} // namespace

Structure crown_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = 0; j < n; ++j) {
            if (i != j) edges.emplace_back(i, static_cast<Vertex>(n + j));
        }
    }
    return graph_from_edges(2 * n, edges);
}

Structure johnson_graph(std::size_t n, std::size_t k, const std::vector<std::size_t>& d) {
    const auto sets = subsets(n, k);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < sets.size(); ++a) {
        for (Vertex b = a + 1; b < sets.size(); ++b) {
            if (std::count(d.begin(), d.end(), common(sets[a], sets[b]))) edges.emplace_back(a, b);
        }
    }
    return graph_from_edges(sets.size(), edges);
}

Structure half_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, static_cast<Vertex>(n + j));
    }
    return graph_from_edges(2 * n, edges);
}

Structure chord_graph(std::size_t n) {
    const auto chords = subsets(n, 2);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < chords.size(); ++a) {
        for (Vertex b = a + 1; b < chords.size(); ++b) {
            auto [i, j] = std::pair{chords[a][0], chords[a][1]};
            auto [k, l] = std::pair{chords[b][0], chords[b][1]};
            if ((i < k && k < j && j < l) || (k < i && i < l && l < j)) edges.emplace_back(a, b);
        }
    }
    return graph_from_edges(chords.size(), edges);
}

Structure star_union(std::size_t count) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex next = 0;
    for (std::size_t i = 1; i <= count; ++i) {
        const Vertex center = next++;
        for (std::size_t leaf = 1; leaf < i; ++leaf) edges.emplace_back(center, next++);
    }
    return graph_from_edges(next, edges);
}

Structure line_graph(const Structure& g) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (const auto& t : g.relation(0)) {
        if (t[0] < t[1]) es.emplace_back(t[0], t[1]);
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < es.size(); ++a) {
        for (Vertex b = a + 1; b < es.size(); ++b) {
            auto [u, v] = es[a];
            auto [x, y] = es[b];
            if (u == x || u == y || v == x || v == y) edges.emplace_back(a, b);
        }
    }
    return graph_from_edges(es.size(), edges);
}

Structure subdivision(const Structure& g) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex next = static_cast<Vertex>(g.domain_size());
    for (const auto& t : g.relation(0)) {
        if (t[0] < t[1]) {
            edges.emplace_back(t[0], next);
            edges.emplace_back(t[1], next);
            ++next;
        }
    }
    return graph_from_edges(next, edges);
}

Structure clique_graph(const Structure& g, std::size_t k, const std::vector<std::size_t>& d) {
    const auto adj = adjacency_lists(g);
    std::vector<std::set<Vertex>> nb(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v) nb[v] = {adj[v].begin(), adj[v].end()};
    std::vector<std::vector<Vertex>> cliques;
    for (auto& s : subsets(g.domain_size(), k)) {
        bool ok = true;
        for (std::size_t i = 0; i < s.size() && ok; ++i) {
            for (std::size_t j = i + 1; j < s.size() && ok; ++j) ok = nb[s[i]].count(s[j]) > 0;
        }
        if (ok) cliques.push_back(std::move(s));
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < cliques.size(); ++a) {
        for (Vertex b = a + 1; b < cliques.size(); ++b) {
            if (std::count(d.begin(), d.end(), common(cliques[a], cliques[b]))) edges.emplace_back(a, b);
        }
    }
    return graph_from_edges(cliques.size(), edges);
}

Structure blowup_graph(const std::vector<std::size_t>& sizes, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<Vertex> start{0};
    for (auto s : sizes) start.push_back(start.back() + static_cast<Vertex>(s));
    std::vector<std::pair<Vertex, Vertex>> out;
    for (auto [a, b] : edges) {
        if (a >= sizes.size() || b >= sizes.size()) throw Error(ErrorCode::InvalidArgument, "blowup_graph: bad edge");
        for (Vertex x = start[a]; x < start[a + 1]; ++x) {
            for (Vertex y = start[b]; y < start[b + 1]; ++y) out.emplace_back(x, y);
        }
    }
    return graph_from_edges(start.back(), out);
}

Structure tree_blowup(const std::vector<std::size_t>& parents, const std::vector<std::size_t>& copies) {
    const std::size_t k = parents.size();
    if (copies.size() != k) throw Error(ErrorCode::InvalidArgument, "tree_blowup: one copy count per tree vertex");
    std::vector<std::vector<std::size_t>> children(k);
    for (std::size_t v = 1; v < k; ++v) {
        if (parents[v] >= k) throw Error(ErrorCode::InvalidArgument, "tree_blowup: bad parent");
        children[parents[v]].push_back(v);
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex next = 0;
    auto grow = [&](auto&& self, std::size_t v, std::optional<Vertex> above) -> void {
        for (std::size_t c = 0; c < copies[v]; ++c) {
            const Vertex me = next++;
            if (above) edges.emplace_back(*above, me);
            for (auto w : children[v]) self(self, w, me);
        }
    };
    grow(grow, 0, std::nullopt);
    return graph_from_edges(next, edges);
}

Structure octahedron() {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < 6; ++a) {
        for (Vertex b = a + 1; b < 6; ++b) {
            if (b != a + 3) edges.emplace_back(a, b);
        }
    }
    return graph_from_edges(6, edges);
}

const std::vector<GalleryEntry>& gallery_entries() {
    static const std::vector<GalleryEntry> entries = make_entries();
    return entries;
}

const GalleryEntry& gallery_entry(const std::string& name) {
    for (const auto& e : gallery_entries()) {
        if (e.name == name) return e;
    }
    throw Error(ErrorCode::UnknownEntry, "unknown gallery entry '" + name + "'");
}

SchemeParams gallery_params(const GalleryEntry& entry, const SchemeParams& given) {
    SchemeParams out;
    for (const auto& p : entry.params) out[p.name] = p.default_value;
    for (const auto& [k, v] : given) {
        if (!out.count(k)) {
            throw Error(ErrorCode::InvalidArgument, "gallery entry '" + entry.name + "' has no parameter '" + k + "'");
        }
        out[k] = v;
    }
    return out;
}

GalleryBuild gallery_build(const std::string& name, const SchemeParams& params, long long n) {
    const auto& entry = gallery_entry(name);
    const auto p = gallery_params(entry, params);
    return {generate_term(*entry.spec(p), n), entry.oracle(p, n)};
}

std::vector<std::pair<std::string, Structure>> gallery_patterns() {
    return {{"K1", complete_graph(1)}, {"K2", complete_graph(2)}, {"P3", path_graph(3)}, {"K3", complete_graph(3)}};
}

bool GalleryReport::passed() const {
    if (first_mismatch) return false;
    for (const auto& f : fits) {
        if (f.fit.verdict != Verdict::Polynomial) return false;
    }
    return true;
}

GalleryReport gallery_check(const std::string& name, const SchemeParams& params, const GalleryCheckOptions& options) {
    const auto& entry = gallery_entry(name);
    GalleryReport report;
    report.name = name;
    report.params = gallery_params(entry, params);
    const auto spec = entry.spec(report.params);
    const long long first = options.first.value_or(entry.range_first);
    const long long last = options.last.value_or(entry.range_last);
    if (first < 0 || last < first) throw Error(ErrorCode::InvalidArgument, "gallery_check: bad range");

    TermCache terms(spec);
    struct Outcome {
        GalleryRow row;
        std::optional<Structure> scheme, oracle;
    };
    std::vector<std::future<Outcome>> jobs;
    for (long long n = first; n <= last; ++n) {
        jobs.push_back(std::async(std::launch::async, [&, n] {
            Outcome o;
            o.row.n = n;
            try {
                auto a = terms.term(n);
                Structure b = entry.oracle(report.params, n);
                o.row.scheme_vertices = a->domain_size();
                o.row.scheme_edges = edge_count(*a);
                o.row.oracle_vertices = b.domain_size();
                o.row.oracle_edges = edge_count(b);
                const CanonicalOptions cap{std::max<std::size_t>({a->domain_size(), b.domain_size(), 12})};
                const auto key = canonical_form(*a, cap);
                o.row.key = digest(key);
                o.row.equal = key == canonical_form(b, cap);
                if (!o.row.equal) {
                    o.scheme = *a;
                    o.oracle = std::move(b);
                }
            } catch (const Error& e) {
                o.row.error = std::string(code_name(e.code())) + ": " + e.what();
            }
            return o;
        }));
    }
    for (auto& j : jobs) {
        auto o = j.get();
        if (!o.row.equal && !report.first_mismatch) {
            report.first_mismatch = o.row.n;
            if (o.scheme) report.mismatch_scheme = structure_to_json_value(*o.scheme);
            if (o.oracle) report.mismatch_oracle = structure_to_json_value(*o.oracle);
        }
        report.rows.push_back(std::move(o.row));
    }

    if (options.detect) {
        for (auto& [label, pattern] : gallery_patterns()) {
            report.fits.push_back({label, detect_polynomial(terms, PatternQuery{pattern}, options.detect_options)});
        }
    }
    return report;
}

Json gallery_list_json() {
    Json entries = Json::array();
    for (const auto& e : gallery_entries()) {
        Json params = Json::array();
        for (const auto& p : e.params) {
            params.push_back({{"name", p.name}, {"kind", p.kind}, {"default", p.default_value}, {"description", p.description}});
        }
        entries.push_back({{"name", e.name},
                           {"description", e.description},
                           {"params", std::move(params)},
                           {"range", {e.range_first, e.range_last}}});
    }
    return {{"schemaVersion", kReportSchemaVersion}, {"entries", std::move(entries)}};
}

} // namespace polyseq
