#include "generators.hpp"

#include <polyseq/canonical.hpp>
#include <polyseq/graphs.hpp>
#include <polyseq/parser.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <set>

namespace polyseq::testing {

namespace {

std::uint64_t g_seed = kDefaultSeed;

void all_tuples(std::size_t n, std::size_t arity, Tuple& cur,
                const std::function<void(const Tuple&)>& visit) {
    if (cur.size() == arity) {
        visit(cur);
        return;
    }
    for (Vertex v = 0; v < n; ++v) {
        cur.push_back(v);
        all_tuples(n, arity, cur, visit);
        cur.pop_back();
    }
}

std::string random_atom(std::mt19937_64& rng, const Signature& sig,
                        const std::vector<std::string>& vars) {
    auto pick = [&] { return vars[uniform(rng, 0, vars.size() - 1)]; };
    if (sig.empty() || coin(rng, 0.25)) return pick() + " = " + pick();
    const Symbol& s = sig[uniform(rng, 0, sig.size() - 1)];
    std::string out = s.name + "(";
    for (int i = 0; i < s.arity; ++i) {
        if (i) out += ",";
        out += pick();
    }
    return out + ")";
}

std::string random_tree(std::mt19937_64& rng, const Signature& sig,
                        const std::vector<std::string>& vars, std::size_t atoms) {
    if (atoms <= 1) {
        std::string a = random_atom(rng, sig, vars);
        return coin(rng, 0.3) ? "!" + a : a;
    }
    std::size_t left = uniform(rng, 1, atoms - 1);
    static const char* ops[] = {" & ", " | ", " -> ", " <-> "};
    std::size_t op = uniform(rng, 0, 9);
    const char* sym = op < 4 ? ops[0] : op < 8 ? ops[1] : op < 9 ? ops[2] : ops[3];
    std::string body = "(" + random_tree(rng, sig, vars, left) + sym +
                       random_tree(rng, sig, vars, atoms - left) + ")";
    return coin(rng, 0.2) ? "!" + body : body;
}

}  // namespace

std::uint64_t init_seed(int& argc, char** argv) {
    if (const char* env = std::getenv("POLYSEQ_TEST_SEED")) g_seed = std::strtoull(env, nullptr, 10);
    int out = 1;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            g_seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (arg.rfind("--seed=", 0) == 0) {
            g_seed = std::strtoull(arg.c_str() + 7, nullptr, 10);
        } else {
            argv[out++] = argv[i];
        }
    }
    argc = out;
    return g_seed;
}

std::uint64_t seed() { return g_seed; }

std::mt19937_64 rng_for(const std::string& label) {
    std::seed_seq seq{static_cast<std::uint32_t>(g_seed), static_cast<std::uint32_t>(g_seed >> 32),
                      static_cast<std::uint32_t>(std::hash<std::string>{}(label))};
    return std::mt19937_64(seq);
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Structure random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(rng, p)) edges.emplace_back(a, b);
    return graph_from_edges(n, edges);
}

Structure random_structure(std::mt19937_64& rng, const Signature& sig, std::size_t n, double p) {
    StructureBuilder b(sig, n);
    for (std::size_t s = 0; s < sig.size(); ++s) {
        Tuple cur;
        all_tuples(n, static_cast<std::size_t>(sig[s].arity), cur, [&](const Tuple& t) {
            if (coin(rng, p)) b.add(s, t);
        });
    }
    return std::move(b).build();
}

std::vector<Vertex> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<Vertex> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

std::string random_qf_text(std::mt19937_64& rng, const Signature& sig,
                           const std::vector<std::string>& vars, std::size_t atoms) {
    return random_tree(rng, sig, vars, std::max<std::size_t>(atoms, 1));
}

Formula random_qf(std::mt19937_64& rng, const Signature& sig,
                  const std::vector<std::string>& vars, std::size_t atoms) {
    return parse_formula(random_qf_text(rng, sig, vars, atoms), sig, vars);
}

InterpretationScheme random_scheme(std::mt19937_64& rng, const Signature& source, std::size_t p,
                                   std::size_t atoms) {
    InterpretationScheme s;
    s.name = "random";
    s.p = p;
    s.source = source;
    s.target = Signature::graph();
    auto one = block_vars(p, 1);
    auto two = block_vars(p, 2);
    s.rho0 = coin(rng, 0.3) ? parse_formula("true", source, one)
                            : random_qf(rng, source, one, uniform(rng, 1, atoms));
    s.rhos.push_back(random_qf(rng, source, two, uniform(rng, 1, atoms)));
    return s;
}

std::vector<Structure> all_graphs(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    std::vector<Structure> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) edges.push_back(pairs[i]);
        out.push_back(graph_from_edges(n, edges));
    }
    return out;
}

std::vector<Structure> graphs_up_to_iso(std::size_t max_n) {
    std::vector<Structure> out;
    for (std::size_t n = 0; n <= max_n; ++n) {
        std::set<std::string> seen;
        for (auto& g : all_graphs(n))
            if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace polyseq::testing
