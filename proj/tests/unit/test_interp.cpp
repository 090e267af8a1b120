#include "generators.hpp"

#include <polyseq/canonical.hpp>
#include <polyseq/error.hpp>
#include <polyseq/evaluate.hpp>
#include <polyseq/gallery.hpp>
#include <polyseq/graphs.hpp>
#include <polyseq/interpretation.hpp>
#include <polyseq/parser.hpp>
#include <polyseq/scheme_text.hpp>

#include <gtest/gtest.h>

using namespace polyseq;
namespace pt = polyseq::testing;

namespace {

Signature marked_graph() { return Signature({{"E", 2}, {"U", 1}}); }

InterpretationScheme marked(const std::string& name, const std::string& rho) {
    InterpretationScheme s;
    s.name = name;
    s.source = marked_graph();
    s.target = Signature::graph();
    s.rho0 = parse_formula("U(x1)", s.source, std::vector<std::string>{"x1"});
    s.rhos.push_back(parse_formula(rho, s.source, std::vector<std::string>{"x1", "y1"}));
    return s;
}

Structure product_oracle(ProductKind kind, const Structure& a, const Structure& b) {
    if (kind == ProductKind::DisjointUnion) return disjoint_union(a, b);
    std::size_t n = a.domain_size(), m = b.domain_size();
    std::vector<std::pair<Vertex, Vertex>> edges;
    auto adj = [](const Structure& g, Vertex x, Vertex y) { return g.holds(0, Tuple{x, y}); };
    for (Vertex x = 0; x < n * m; ++x)
        for (Vertex y = x + 1; y < n * m; ++y) {
            Vertex a1 = x / m, b1 = x % m, a2 = y / m, b2 = y % m;
            bool ea = adj(a, a1, a2), eb = adj(b, b1, b2);
            bool cart = (a1 == a2 && eb) || (ea && b1 == b2);
            bool on = false;
            switch (kind) {
                case ProductKind::Direct: on = ea && eb; break;
                case ProductKind::Cartesian: on = cart; break;
                case ProductKind::Strong: on = cart || (ea && eb); break;
                case ProductKind::Lexicographic: on = ea || (a1 == a2 && eb); break;
                case ProductKind::DisjointUnion: break;
            }
            if (on) edges.emplace_back(x, y);
        }
    return graph_from_edges(n * m, edges);
}

Structure product_input(const Structure& a, const Structure& b) {
    return strong_sum(mark(a, "U"), mark(b, "U"));
}

}  // namespace

TEST(Apply, Complement) {
    auto out = apply_graphical(complement_scheme(), complete_graph(3));
    EXPECT_EQ(out.structure.domain_size(), 3u);
    EXPECT_EQ(edge_count(out.structure), 0u);
}

TEST(Apply, Crown) {
    auto out = apply_graphical(crown_scheme(), build_basic({1, 2, {3}}));
    EXPECT_EQ(out.structure.domain_size(), 6u);
    EXPECT_EQ(edge_count(out.structure), 6u);
    EXPECT_TRUE(isomorphic(out.structure, cycle_graph(6)));
    EXPECT_TRUE(isomorphic(out.structure, crown_graph(3)));
}

TEST(Apply, ChordAndHalfGraph) {
    auto chord = apply_graphical(chord_scheme(true), build_basic({1, 0, {4}}));
    EXPECT_EQ(chord.structure.domain_size(), 6u);
    EXPECT_EQ(edge_count(chord.structure), 1u);

    auto half = apply_graphical(half_graph_scheme(), build_basic({1, 2, {2}}));
    EXPECT_EQ(half.structure.domain_size(), 4u);
    EXPECT_EQ(edge_count(half.structure), 1u);
}

TEST(Apply, TrivialGraphical) {
    GraphicalScheme g;
    g.name = "isolated";
    g.source = build_transitive_tournament(5).signature();
    g.iota = parse_formula("true", g.source, std::vector<std::string>{"x1"});
    g.rho = parse_formula("false", g.source, std::vector<std::string>{"x1", "y1"});
    auto out = apply_graphical(g, build_transitive_tournament(5));
    EXPECT_EQ(out.structure.domain_size(), 5u);
    EXPECT_EQ(edge_count(out.structure), 0u);
}

TEST(Apply, Johnson) {
    auto out = apply_graphical(johnson_scheme(2, {1}), build_basic({1, 0, {4}}));
    EXPECT_EQ(out.structure.domain_size(), 6u);
    EXPECT_EQ(edge_count(out.structure), 12u);
}

TEST(Apply, TuplesAreLexicographic) {
    auto out = apply_graphical(crown_scheme(), build_basic({1, 2, {3}}));
    for (std::size_t i = 1; i < out.tuples.size(); ++i) EXPECT_LT(out.tuples[i - 1], out.tuples[i]);
}

TEST(Apply, Errors) {
    try {
        apply_graphical(crown_scheme(), complete_graph(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SignatureMismatch);
    }
    try {
        apply_graphical(chord_scheme(false), build_basic({1, 0, {4}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SymmetryViolation);
        EXPECT_NE(std::string(e.what()).find("("), std::string::npos);
    }
    ApplyOptions tiny;
    tiny.tuple_budget = 10;
    try {
        apply_graphical(johnson_scheme(2, {1}), build_basic({1, 0, {8}}), tiny);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
}

TEST(Translate, ComplementEdge) {
    auto scheme = to_interpretation(complement_scheme());
    auto phi = parse_formula("E(x,y)", Signature::graph());
    auto t = translate_formula(scheme, phi);
    EXPECT_TRUE(t.quantifier_free());
    auto rng = pt::rng_for("translate-complement");
    for (int i = 0; i < 10; ++i) {
        auto a = pt::random_graph(rng, pt::uniform(rng, 0, 6));
        auto image = apply_interpretation(scheme, a).structure;
        EXPECT_EQ(count_satisfying(t, a), count_satisfying(phi, image));
    }
}

TEST(Translate, CrownAdjacency) {
    auto scheme = to_interpretation(crown_scheme());
    auto t = translate_formula(scheme, parse_formula("E(x,y)", Signature::graph()));
    EXPECT_EQ(count_satisfying(t, build_basic({1, 2, {3}})), 12);
}

TEST(Translate, UnknownSymbol) {
    auto scheme = to_interpretation(complement_scheme());
    auto phi = parse_formula("R(x,y)", Signature({{"R", 2}}));
    EXPECT_THROW(translate_formula(scheme, phi), Error);
}

TEST(Properties, TranslationDuality) {
    auto rng = pt::rng_for("duality");
    auto src = marked_graph();
    std::vector<std::string> one{"u"}, two{"u", "v"};
    for (int trial = 0; trial < 200; ++trial) {
        auto scheme = pt::random_scheme(rng, src, pt::uniform(rng, 1, 2));
        auto phi = pt::random_qf(rng, Signature::graph(), pt::coin(rng) ? one : two,
                                 pt::uniform(rng, 1, 3));
        auto a = pt::random_structure(rng, src, pt::uniform(rng, 0, 4));
        auto image = apply_interpretation(scheme, a).structure;
        EXPECT_EQ(count_satisfying(phi, image), count_satisfying(translate_formula(scheme, phi), a))
            << scheme_to_text(scheme) << "\n" << phi.to_string();
    }
}

TEST(Properties, Composition) {
    auto rng = pt::rng_for("compose");
    for (int trial = 0; trial < 30; ++trial) {
        auto j = pt::random_scheme(rng, marked_graph(), pt::uniform(rng, 1, 2), 2);
        auto k = pt::random_scheme(rng, Signature::graph(), pt::uniform(rng, 1, 2), 2);
        auto a = pt::random_structure(rng, marked_graph(), pt::uniform(rng, 0, 3));
        auto direct = apply_interpretation(k, apply_interpretation(j, a).structure).structure;
        auto composed = apply_interpretation(compose(j, k), a).structure;
        EXPECT_TRUE(isomorphic(direct, composed)) << trial;
    }
}

TEST(Merge, ComponentwiseAndSwapped) {
    auto comp = marked("complement", "!E(x1,y1) & !(x1 = y1)");
    auto id = marked("identity", "E(x1,y1)");
    auto k3 = mark(complete_graph(3), "U"), k2 = mark(complete_graph(2), "U");

    auto merged = merge_marked_schemes({comp, id}, {"U", "U"});
    auto out = apply_interpretation(merged, strong_sum(k3, k2)).structure;
    EXPECT_TRUE(weakly_isomorphic(out, strong_sum(empty_graph(3), complete_graph(2))));

    auto swapped = merge_marked_schemes({id, comp}, {"U", "U"});
    auto out2 = apply_interpretation(swapped, strong_sum(k2, k3)).structure;
    EXPECT_TRUE(weakly_isomorphic(out2, strong_sum(complete_graph(2), empty_graph(3))));

    auto single = merge_marked_schemes({comp}, {"U"});
    auto a = mark(path_graph(4), "U");
    EXPECT_TRUE(weakly_isomorphic(apply_interpretation(single, a).structure,
                                  apply_interpretation(comp, a).structure));

    EXPECT_THROW(merge_marked_schemes({comp}, {"W"}), Error);
}

TEST(Properties, MergeOfRandomSchemes) {
    auto rng = pt::rng_for("merge");
    for (int trial = 0; trial < 20; ++trial) {
        auto s1 = pt::random_scheme(rng, marked_graph(), pt::uniform(rng, 1, 2), 2);
        auto s2 = pt::random_scheme(rng, marked_graph(), 1, 2);
        auto a = mark(pt::random_graph(rng, pt::uniform(rng, 0, 3)), "U");
        auto b = mark(pt::random_graph(rng, pt::uniform(rng, 0, 3)), "U");
        auto merged = merge_marked_schemes({s1, s2}, {"U", "U"});
        auto out = apply_interpretation(merged, strong_sum(a, b)).structure;
        auto expect = strong_sum(apply_interpretation(s1, a).structure,
                                 apply_interpretation(s2, b).structure);
        EXPECT_TRUE(weakly_isomorphic(out, expect, 16)) << trial;
    }
}

TEST(Properties, ProductsMatchOracles) {
    auto graphs = pt::graphs_up_to_iso(4);
    for (auto kind : {ProductKind::DisjointUnion, ProductKind::Direct, ProductKind::Cartesian,
                      ProductKind::Strong, ProductKind::Lexicographic}) {
        auto scheme = product_scheme(kind);
        for (const auto& a : graphs)
            for (const auto& b : graphs) {
                if (a.domain_size() * b.domain_size() > 12) continue;
                auto out = apply_graphical(scheme, product_input(a, b)).structure;
                ASSERT_TRUE(isomorphic(out, product_oracle(kind, a, b)))
                    << product_name(kind) << " " << a.domain_size() << "x" << b.domain_size();
            }
    }
}

TEST(Quotient, LineGraphAndSubdivision) {
    auto k3 = complete_graph(3);
    auto line = apply_quotient(line_graph_scheme(), k3);
    EXPECT_TRUE(isomorphic(line.structure, k3));
    EXPECT_TRUE(isomorphic(line.structure, line_graph(k3)));
    for (auto c : line.class_sizes) EXPECT_EQ(c, 2u);

    auto sub = apply_quotient(subdivision_scheme(), k3);
    EXPECT_TRUE(isomorphic(sub.structure, cycle_graph(6)));
}

TEST(Quotient, TupleEqualityMatchesPlainInterpretation) {
    auto rng = pt::rng_for("quotient-trivial");
    for (int trial = 0; trial < 10; ++trial) {
        QuotientScheme q;
        q.base = pt::random_scheme(rng, marked_graph(), 2, 2);
        q.varpi = parse_formula("x1 = y1 & x2 = y2", marked_graph(), block_vars(2, 2));
        auto a = pt::random_structure(rng, marked_graph(), pt::uniform(rng, 0, 3));
        EXPECT_EQ(apply_quotient(q, a).structure, apply_interpretation(q.base, a).structure);
    }
}

TEST(Quotient, CertificateTimesClassesIsTupleCount) {
    auto rng = pt::rng_for("quotient-cert");
    for (int trial = 0; trial < 10; ++trial) {
        auto g = pt::random_graph(rng, pt::uniform(rng, 1, 6));
        auto out = apply_quotient(line_graph_scheme(), g);
        EXPECT_EQ(out.structure.domain_size() * 2, 2 * edge_count(g));
        EXPECT_TRUE(isomorphic(out.structure, line_graph(g)));
        auto cl = apply_quotient(clique_intersection_scheme(3, {1}), g);
        std::size_t tuples = 0;
        for (auto c : cl.class_sizes) tuples += c;
        EXPECT_EQ(tuples, cl.structure.domain_size() * 6);
    }
}

TEST(Quotient, Errors) {
    auto bad = line_graph_scheme();
    bad.varpi = parse_formula("E(x1,y1)", Signature::graph(), block_vars(2, 2));
    try {
        apply_quotient(bad, complete_graph(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotEquivalence);
    }

    auto cert = line_graph_scheme();
    ASSERT_FALSE(cert.certificates.empty());
    cert.certificates[0].size = IntPolynomial::constant(3);
    try {
        apply_quotient(cert, complete_graph(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CertificateMismatch);
    }
}

TEST(SchemeText, BuiltinsRoundTrip) {
    for (const auto& name : builtin_scheme_names()) {
        auto s = builtin_scheme(name);
        auto text = scheme_to_text(s);
        auto back = parse_scheme_text(text);
        EXPECT_EQ(scheme_to_text(back), text) << name;
    }
}

TEST(SchemeText, UnknownRelationAndArity) {
    const char* unknown =
        "graphical bad {\n  source: graph;\n  p: 1;\n  domain(x1): true;\n  edge(x1; y1): F(x1,y1);\n}\n";
    try {
        parse_scheme_text(unknown);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownSymbol);
        EXPECT_NE(std::string(e.what()).find("'F'"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
    }
    const char* arity =
        "interpretation bad {\n  source: graph;\n  target: graph;\n  p: 1;\n"
        "  domain(x1): true;\n  E(x1; y1; z1): true;\n}\n";
    try {
        parse_scheme_text(arity);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
        EXPECT_NE(std::string(e.what()).find("'E'"), std::string::npos);
    }
}

TEST(SchemeText, Signatures) {
    EXPECT_EQ(parse_signature_text("graph"), Signature::graph());
    EXPECT_EQ(parse_signature_text("basic(k=1,l=2)"), basic_signature(1, 2));
    auto sig = Signature({{"E", 2}, {"U", 1}});
    EXPECT_EQ(parse_signature_text(signature_to_text(sig)), sig);
}
