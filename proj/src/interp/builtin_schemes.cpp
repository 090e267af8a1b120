#include "polyseq/interpretation.hpp"

#include "polyseq/error.hpp"
#include "polyseq/parser.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace polyseq {

namespace {

Formula f(const std::string& text, const Signature& sig, std::vector<std::string> vars) {
    return parse_formula(text, sig, std::move(vars));
}

std::string join(const std::vector<std::string>& parts, const std::string& sep,
                 const std::string& empty) {
    if (parts.empty()) return empty;
    if (parts.size() == 1) return parts[0];
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out + ")";
}

std::string var(char letter, std::size_t i) { return std::string(1, letter) + std::to_string(i); }

// |{x_1..x_k} cap {y_1..y_k}| lies in d, for tuples with distinct entries.
std::string intersection_in(std::size_t k, const std::vector<std::size_t>& d) {
    std::vector<std::string> cases;
    for (std::uint32_t iset = 0; iset < (1U << k); ++iset) {
        const auto size = static_cast<std::size_t>(std::popcount(iset));
        if (std::find(d.begin(), d.end(), size) == d.end()) continue;
        for (std::uint32_t jset = 0; jset < (1U << k); ++jset) {
            if (std::popcount(jset) != std::popcount(iset)) continue;
            std::vector<std::string> parts;
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    if (!(iset >> i & 1U) && !(jset >> j & 1U)) {
                        parts.push_back("!(" + var('x', i + 1) + " = " + var('y', j + 1) + ")");
                    }
                }
            }
            for (std::size_t i = 0; i < k; ++i) {
                if (!(iset >> i & 1U)) continue;
                std::vector<std::string> any;
                for (std::size_t j = 0; j < k; ++j) {
                    if (jset >> j & 1U) any.push_back(var('x', i + 1) + " = " + var('y', j + 1));
                }
                parts.push_back(join(any, " | ", "false"));
            }
            cases.push_back(join(parts, " & ", "true"));
        }
    }
    return join(cases, " | ", "false");
}

std::string param(const SchemeParams& params, const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::vector<std::size_t> parse_list(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    std::string cleaned;
    for (char c : text) {
        if (c != '{' && c != '}' && c != '[' && c != ']' && c != ' ') cleaned += c;
    }
    std::stringstream in(cleaned);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            auto v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "parameter '" + what + "': bad integer '" + item + "'");
        }
    }
    return out;
}

std::size_t parse_count(const SchemeParams& params, const std::string& key, std::size_t fallback,
                        std::size_t lo, std::size_t hi) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    auto v = parse_list(it->second, key);
    if (v.size() != 1 || v[0] < lo || v[0] > hi) {
        throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' must be an integer in [" +
                                                    std::to_string(lo) + ", " + std::to_string(hi) +
                                                    "]");
    }
    return v[0];
}

std::vector<std::pair<Vertex, Vertex>> parse_edges(const std::string& text) {
    std::vector<std::pair<Vertex, Vertex>> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto dash = item.find('-');
        if (dash == std::string::npos) {
            throw Error(ErrorCode::InvalidArgument, "parameter 'edges': expected a-b, got '" + item + "'");
        }
        auto a = parse_list(item.substr(0, dash), "edges");
        auto b = parse_list(item.substr(dash + 1), "edges");
        if (a.size() != 1 || b.size() != 1) {
            throw Error(ErrorCode::InvalidArgument, "parameter 'edges': bad edge '" + item + "'");
        }
        out.emplace_back(static_cast<Vertex>(a[0]), static_cast<Vertex>(b[0]));
    }
    return out;
}

} // namespace

InterpretationScheme identity_scheme(const Signature& sig) {
    InterpretationScheme s;
    s.name = "identity";
    s.p = 1;
    s.source = sig;
    s.target = sig;
    s.rho0 = f("true", sig, {"x1"});
    for (const auto& sym : sig.symbols()) {
        auto vars = block_vars(1, static_cast<std::size_t>(sym.arity));
        std::vector<std::size_t> slots(vars.size());
        for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
        s.rhos.push_back(Formula(sig, vars, vars.size(), make_atom(sig.index_of(sym.name), slots)));
    }
    return s;
}

InterpretationScheme mark_scheme(const Signature& sig, const std::string& mark) {
    InterpretationScheme s = identity_scheme(sig);
    s.name = "mark";
    s.target = sig.with({mark, 1});
    s.rhos.push_back(f("true", sig, {"x1"}));
    return s;
}

GraphicalScheme complement_scheme() {
    const auto sig = Signature::graph();
    return {"complement", 1, sig, f("true", sig, {"x1"}), f("!E(x1,y1)", sig, {"x1", "y1"}),
            LoopPolicy::Drop};
}

GraphicalScheme forget_orientation_scheme(const Signature& sig, const std::string& symbol) {
    const std::string r = symbol;
    return {"forget-orientation", 1, sig, f("true", sig, {"x1"}),
            f(r + "(x1,y1) | " + r + "(y1,x1)", sig, {"x1", "y1"}), LoopPolicy::Drop};
}

const char* product_name(ProductKind kind) {
    switch (kind) {
    case ProductKind::DisjointUnion: return "disjointUnion";
    case ProductKind::Direct: return "direct";
    case ProductKind::Cartesian: return "cartesian";
    case ProductKind::Strong: return "strong";
    case ProductKind::Lexicographic: return "lex";
    }
    return "direct";
}

std::optional<ProductKind> parse_product(const std::string& text) {
    for (auto k : {ProductKind::DisjointUnion, ProductKind::Direct, ProductKind::Cartesian,
                   ProductKind::Strong, ProductKind::Lexicographic}) {
        if (text == product_name(k)) return k;
    }
    return std::nullopt;
}

Signature product_source_signature() {
    return Signature({{"E", 2}, {"U", 1}, {"E'", 2}, {"U'", 1}});
}

GraphicalScheme product_scheme(ProductKind kind) {
    const auto sig = product_source_signature();
    const std::vector<std::string> xy{"x1", "x2", "y1", "y2"};
    const std::string cartesian = "(x1 = y1 & E'(x2,y2)) | (E(x1,y1) & x2 = y2)";
    const std::string direct = "E(x1,y1) & E'(x2,y2)";
    GraphicalScheme g;
    g.name = std::string("product-") + product_name(kind);
    g.source = sig;
    g.loops = LoopPolicy::Drop;
    if (kind == ProductKind::DisjointUnion) {
        g.p = 1;
        g.iota = f("true", sig, {"x1"});
        g.rho = f("E(x1,y1) | E'(x1,y1)", sig, {"x1", "y1"});
        return g;
    }
    g.p = 2;
    g.iota = f("U(x1) & U'(x2)", sig, {"x1", "x2"});
    switch (kind) {
    case ProductKind::Direct: g.rho = f(direct, sig, xy); break;
    case ProductKind::Cartesian: g.rho = f(cartesian, sig, xy); break;
    case ProductKind::Strong: g.rho = f(cartesian + " | (" + direct + ")", sig, xy); break;
    default: g.rho = f("E(x1,y1) | (x1 = y1 & E'(x2,y2))", sig, xy); break;
    }
    return g;
}

QuotientScheme line_graph_scheme() {
    const auto sig = Signature::graph();
    const std::vector<std::string> xy{"x1", "x2", "y1", "y2"};
    const std::string same = "((x1 = y1 & x2 = y2) | (x1 = y2 & x2 = y1))";
    QuotientScheme q;
    q.base.name = "line-graph";
    q.base.p = 2;
    q.base.source = sig;
    q.base.target = sig;
    q.base.rho0 = f("E(x1,x2)", sig, {"x1", "x2"});
    q.base.rhos = {f("!" + same + " & (x1 = y1 | x1 = y2 | x2 = y1 | x2 = y2)", sig, xy)};
    q.varpi = f(same, sig, xy);
    q.certificates = {{f("true", sig, {"x1", "x2"}), IntPolynomial::constant(2)}};
    return q;
}

QuotientScheme subdivision_scheme() {
    const auto sig = Signature::graph();
    const std::vector<std::string> xy{"x1", "x2", "y1", "y2"};
    QuotientScheme q;
    q.base.name = "subdivision";
    q.base.p = 2;
    q.base.source = sig;
    q.base.target = sig;
    q.base.rho0 = f("x1 = x2 | E(x1,x2)", sig, {"x1", "x2"});
    // A vertex (v,v) is adjacent to the classes of the edges at v.
    q.base.rhos = {f("(x1 = x2 & !(y1 = y2) & (y1 = x1 | y2 = x1)) | "
                     "(y1 = y2 & !(x1 = x2) & (x1 = y1 | x2 = y1))",
                     sig, xy)};
    q.varpi = f("(x1 = y1 & x2 = y2) | (x1 = y2 & x2 = y1)", sig, xy);
    q.certificates = {{f("x1 = x2", sig, {"x1", "x2"}), IntPolynomial::constant(1)},
                      {f("!(x1 = x2)", sig, {"x1", "x2"}), IntPolynomial::constant(2)}};
    return q;
}

QuotientScheme clique_intersection_scheme(std::size_t k, const std::vector<std::size_t>& d) {
    if (k == 0 || k > 6) throw Error(ErrorCode::InvalidArgument, "clique size k must be in [1, 6]");
    const auto sig = Signature::graph();
    auto xs = block_vars(k, 1);
    auto xy = block_vars(k, 2);
    std::vector<std::string> clique, same;
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = i + 1; j <= k; ++j) clique.push_back("E(" + var('x', i) + "," + var('x', j) + ")");
        std::vector<std::string> any;
        for (std::size_t j = 1; j <= k; ++j) any.push_back(var('x', i) + " = " + var('y', j));
        same.push_back(join(any, " | ", "false"));
    }
    const std::string same_set = join(same, " & ", "true");
    QuotientScheme q;
    q.base.name = "clique-intersection";
    q.base.p = k;
    q.base.source = sig;
    q.base.target = sig;
    q.base.rho0 = f(join(clique, " & ", "true"), sig, xs);
    q.base.rhos = {f("!" + same_set + " & " + intersection_in(k, d), sig, xy)};
    q.varpi = f(same_set, sig, xy);
    BigInt fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= BigInt(i);
    q.certificates = {{f("true", sig, xs), IntPolynomial::constant(fact)}};
    return q;
}

GraphicalScheme crown_scheme() {
    const auto sig = basic_signature(1, 2);
    return {"crown", 2, sig, f("U1T(x1) & !U1T(x2)", sig, {"x1", "x2"}),
            f("!(x1 = y1) & !(U1E(x2) <-> U1E(y2))", sig, {"x1", "x2", "y1", "y2"}),
            LoopPolicy::Drop};
}

GraphicalScheme johnson_scheme(std::size_t k, const std::vector<std::size_t>& d) {
    if (k == 0 || k > 6) throw Error(ErrorCode::InvalidArgument, "subset size k must be in [1, 6]");
    for (auto x : d) {
        if (x > k) throw Error(ErrorCode::InvalidArgument, "intersection sizes must lie in [0, k]");
    }
    const auto sig = basic_signature(1, 0);
    std::vector<std::string> chain;
    for (std::size_t i = 1; i < k; ++i) chain.push_back("S1(" + var('x', i) + "," + var('x', i + 1) + ")");
    return {"johnson", k, sig, f(join(chain, " & ", "true"), sig, block_vars(k, 1)),
            f(intersection_in(k, d), sig, block_vars(k, 2)), LoopPolicy::Drop};
}

GraphicalScheme vertex_blowup_scheme(std::size_t k,
                                     const std::vector<std::pair<Vertex, Vertex>>& edges) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "vertex blow-up needs a nonempty graph");
    const auto sig = basic_signature(k, 0);
    std::vector<std::string> cases;
    for (auto [a, b] : edges) {
        if (a >= k || b >= k || a == b) {
            throw Error(ErrorCode::InvalidArgument, "vertex blow-up: bad edge " + std::to_string(a) +
                                                        "-" + std::to_string(b));
        }
        auto u = [](Vertex v, const char* x) { return "U" + std::to_string(v + 1) + "T(" + x + ")"; };
        cases.push_back("(" + u(a, "x1") + " & " + u(b, "y1") + ")");
        cases.push_back("(" + u(b, "x1") + " & " + u(a, "y1") + ")");
    }
    return {"vertex-blowup", 1, sig, f("true", sig, {"x1"}),
            f(join(cases, " | ", "false"), sig, {"x1", "y1"}), LoopPolicy::Drop};
}

GraphicalScheme tree_blowup_scheme(const std::vector<std::size_t>& parents) {
    const std::size_t k = parents.size();
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "tree blow-up needs a nonempty tree");
    std::vector<std::vector<std::size_t>> paths(k);
    for (std::size_t v = 0; v < k; ++v) {
        std::size_t u = v;
        std::size_t steps = 0;
        while (u != 0) {
            paths[v].push_back(u);
            if (parents[u] >= k || ++steps > k) {
                throw Error(ErrorCode::InvalidArgument, "tree blow-up: parents do not form a tree rooted at 0");
            }
            u = parents[u];
        }
        paths[v].push_back(0);
        std::reverse(paths[v].begin(), paths[v].end());
    }
    const auto sig = basic_signature(k, 0);
    std::vector<std::string> iota;
    for (const auto& path : paths) {
        std::vector<std::string> parts;
        const std::size_t t = path.size();
        for (std::size_t i = 1; i <= t; ++i) {
            parts.push_back("U" + std::to_string(path[i - 1] + 1) + "T(" + var('x', i) + ")");
        }
        for (std::size_t i = t + 1; i <= k; ++i) parts.push_back(var('x', i) + " = " + var('x', t));
        iota.push_back(join(parts, " & ", "true"));
    }
    auto rho_prime = [&](char x, char y) {
        std::vector<std::string> cases;
        for (std::size_t i = 1; i + 1 <= k; ++i) {
            std::vector<std::string> parts;
            for (std::size_t j = 1; j <= i; ++j) parts.push_back(var(x, j) + " = " + var(y, j));
            parts.push_back(var(x, i) + " = " + var(x, k));
            parts.push_back("!(" + var(y, i) + " = " + var(y, k) + ")");
            parts.push_back(var(y, i + 1) + " = " + var(y, k));
            cases.push_back(join(parts, " & ", "true"));
        }
        return join(cases, " | ", "false");
    };
    return {"tree-blowup", k, sig, f(join(iota, " | ", "false"), sig, block_vars(k, 1)),
            f(rho_prime('x', 'y') + " | " + rho_prime('y', 'x'), sig, block_vars(k, 2)),
            LoopPolicy::Drop};
}

GraphicalScheme star_union_scheme(bool repaired) {
    const auto sig = basic_signature(1, 0);
    // Vertex (x, y) of the text is (x1, x2) here, its partner (y1, y2).
    const std::string iota = repaired ? "x1 = x2 | S1(x1,x2)" : "S1(x2,x1)";
    return {repaired ? "star-union" : "star-union-literal", 2, sig, f(iota, sig, {"x1", "x2"}),
            f("x2 = y2 & ((x1 = x2 & S1(y1,y2)) | (y1 = y2 & S1(x1,x2)))", sig,
              {"x1", "x2", "y1", "y2"}),
            LoopPolicy::Drop};
}

GraphicalScheme half_graph_scheme() {
    const auto sig = basic_signature(1, 2);
    return {"half-graph", 2, sig, f("U1T(x1) & !U1T(x2)", sig, {"x1", "x2"}),
            f("(S1(x1,y1) & U1E(x2) & U2E(y2)) | (S1(y1,x1) & U1E(y2) & U2E(x2))", sig,
              {"x1", "x2", "y1", "y2"}),
            LoopPolicy::Drop};
}

GraphicalScheme chord_scheme(bool symmetrized) {
    const auto sig = basic_signature(1, 0);
    std::string rho = "S1(x1,y1) & S1(y1,x2) & S1(x2,y2)";
    if (symmetrized) rho = "(" + rho + ") | (S1(y1,x1) & S1(x1,y2) & S1(y2,x2))";
    return {symmetrized ? "chord" : "chord-literal", 2, sig, f("S1(x1,x2)", sig, {"x1", "x2"}),
            f(rho, sig, {"x1", "x2", "y1", "y2"}), LoopPolicy::Drop};
}

std::vector<std::string> builtin_scheme_names() {
    return {"complement",   "forget-orientation", "product",    "line-graph",
            "subdivision",  "clique-intersection", "crown",     "kneser",
            "johnson",      "vertex-blowup",       "tree-blowup", "star-union",
            "star-union-literal", "half-graph",    "chord",     "chord-literal"};
}

Scheme builtin_scheme(const std::string& name, const SchemeParams& params) {
    if (name == "complement") return complement_scheme();
    if (name == "forget-orientation") {
        auto k = parse_count(params, "k", 1, 1, 64);
        auto l = parse_count(params, "l", 0, 0, 64);
        auto which = parse_count(params, "order", 1, 1, k);
        return forget_orientation_scheme(basic_signature(k, l), "S" + std::to_string(which));
    }
    if (name == "product") {
        auto kind = parse_product(param(params, "kind", "cartesian"));
        if (!kind) {
            throw Error(ErrorCode::InvalidArgument,
                        "parameter 'kind' must be disjointUnion, direct, cartesian, strong or lex");
        }
        return product_scheme(*kind);
    }
    if (name == "line-graph") return line_graph_scheme();
    if (name == "subdivision") return subdivision_scheme();
    if (name == "clique-intersection") {
        return clique_intersection_scheme(parse_count(params, "k", 2, 1, 6),
                                          parse_list(param(params, "d", "1"), "d"));
    }
    if (name == "crown") return crown_scheme();
    if (name == "kneser") return johnson_scheme(parse_count(params, "k", 2, 1, 6), {0});
    if (name == "johnson") {
        return johnson_scheme(parse_count(params, "k", 2, 1, 6), parse_list(param(params, "d", "1"), "d"));
    }
    if (name == "vertex-blowup") {
        return vertex_blowup_scheme(parse_count(params, "k", 3, 1, 64),
                                    parse_edges(param(params, "edges", "0-1,1-2")));
    }
    if (name == "tree-blowup") {
        return tree_blowup_scheme(parse_list(param(params, "parents", "0,0,0,1"), "parents"));
    }
    if (name == "star-union") return star_union_scheme(true);
    if (name == "star-union-literal") return star_union_scheme(false);
    if (name == "half-graph") return half_graph_scheme();
    if (name == "chord") return chord_scheme(true);
    if (name == "chord-literal") return chord_scheme(false);
    throw Error(ErrorCode::UnknownEntry, "unknown built-in scheme '" + name + "'");
}

} // namespace polyseq
