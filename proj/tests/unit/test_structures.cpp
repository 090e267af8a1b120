#include "generators.hpp"

#include <polyseq/canonical.hpp>
#include <polyseq/error.hpp>
#include <polyseq/graphs.hpp>
#include <polyseq/structure.hpp>
#include <polyseq/structure_json.hpp>

#include <gtest/gtest.h>

using namespace polyseq;
namespace pt = polyseq::testing;

namespace {

bool well_formed(const Structure& s) {
    for (std::size_t i = 0; i < s.symbol_count(); ++i) {
        const auto& rel = s.relation(i);
        for (std::size_t t = 0; t < rel.size(); ++t) {
            if (rel[t].size() != static_cast<std::size_t>(s.signature()[i].arity)) return false;
            for (Vertex v : rel[t])
                if (v >= s.domain_size()) return false;
            if (t > 0 && !(rel[t - 1] < rel[t])) return false;
        }
    }
    return true;
}

Structure edge() { return graph_from_edges(2, {{0, 1}}); }

}  // namespace

TEST(Constructors, MarkedVertex) {
    auto e = build_marked_vertex();
    EXPECT_EQ(e.domain_size(), 1u);
    EXPECT_EQ(e.relation("U").size(), 1u);
}

TEST(Constructors, TransitiveTournament) {
    auto t0 = build_transitive_tournament(0);
    EXPECT_EQ(t0.domain_size(), 0u);
    EXPECT_TRUE(t0.relation("S").empty());
    EXPECT_TRUE(t0.relation("U").empty());

    EXPECT_EQ(build_transitive_tournament(4).relation("S").size(), 6u);

    auto t3 = build_transitive_tournament(3);
    EXPECT_EQ(t3.relation("U"), (std::vector<Tuple>{{0}, {1}, {2}}));
    for (const auto& t : t3.relation("S")) EXPECT_LT(t[0], t[1]);
}

TEST(Constructors, StrongSumRenamesRightOperand) {
    auto s = strong_sum(strong_sum(build_marked_vertex(), build_marked_vertex()),
                        build_transitive_tournament(3));
    EXPECT_EQ(s.domain_size(), 5u);
    ASSERT_TRUE(s.signature().contains("U'"));
    ASSERT_TRUE(s.signature().contains("U''"));
    EXPECT_EQ(s.relation("U").size(), 1u);
    EXPECT_EQ(s.relation("U'").size(), 1u);
    EXPECT_EQ(s.relation("U''").size(), 3u);
    EXPECT_EQ(s.relation("S"), (std::vector<Tuple>{{2, 3}, {2, 4}, {3, 4}}));
    EXPECT_TRUE(well_formed(s));
}

TEST(Constructors, MarkForgetMerge) {
    auto w = mark(build_transitive_tournament(2), "W");
    EXPECT_EQ(w.relation("W"), (std::vector<Tuple>{{0}, {1}}));

    std::vector<std::string> drop{"U"};
    auto f = forget(build_transitive_tournament(3), drop);
    EXPECT_EQ(f.signature(), Signature({{"S", 2}}));

    auto a = complete_graph(3), b = path_graph(3);
    auto sum = strong_sum(a, b);
    std::vector<std::pair<std::string, std::string>> pairs{{"E", "E'"}};
    auto merged = merge(sum, pairs);
    EXPECT_EQ(merged.signature(), Signature::graph());
    EXPECT_EQ(edge_count(merged), edge_count(a) + edge_count(b));
}

TEST(Constructors, BuildBasic) {
    auto b = build_basic({1, 2, {3}});
    EXPECT_EQ(b.domain_size(), 5u);
    EXPECT_EQ(b.relation("S1").size(), 3u);
    EXPECT_EQ(b.signature(), basic_signature(1, 2));

    auto e = build_basic({0, 1, {}});
    EXPECT_TRUE(weakly_isomorphic(e, build_marked_vertex()));

    auto two = build_basic({2, 0, {1, 1}});
    EXPECT_TRUE(two.relation("S1").empty());
    EXPECT_TRUE(two.relation("S2").empty());
    EXPECT_EQ(two.relation("U1T").size(), 1u);
    EXPECT_EQ(two.relation("U2T").size(), 1u);
}

TEST(Constructors, BadTuplesRejected) {
    EXPECT_THROW(Structure(Signature::graph(), 2, {{{0, 2}}}), Error);
    EXPECT_THROW(Structure(Signature::graph(), 2, {{{0}}}), Error);
    EXPECT_THROW(Signature({{"E", 2}, {"E", 1}}), Error);
}

TEST(WeakIso, Examples) {
    auto t2 = build_transitive_tournament(2);
    Structure renamed(Signature({{"R", 2}, {"U", 1}}), 2, {t2.relation("S"), t2.relation("U")});
    EXPECT_TRUE(weakly_isomorphic(t2, renamed));

    auto t3 = build_transitive_tournament(3);
    std::vector<Vertex> rev{2, 1, 0};
    auto reversed = relabel(t3, rev);
    EXPECT_NE(reversed, t3);
    EXPECT_TRUE(weakly_isomorphic(t3, reversed));

    EXPECT_FALSE(weakly_isomorphic(edge(), empty_graph(2)));
}

TEST(WeakIso, CapExceeded) {
    EXPECT_THROW(weakly_isomorphic(complete_graph(11), complete_graph(11)), Error);
    EXPECT_TRUE(weakly_isomorphic(complete_graph(11), complete_graph(11), 11));
}

TEST(Properties, StrongSumAssociative) {
    auto rng = pt::rng_for("strong-sum-assoc");
    Signature sig{{"E", 2}, {"U", 1}};
    for (int trial = 0; trial < 30; ++trial) {
        auto a = pt::random_structure(rng, sig, pt::uniform(rng, 0, 2));
        auto b = pt::random_structure(rng, sig, pt::uniform(rng, 0, 2));
        auto c = pt::random_structure(rng, sig, pt::uniform(rng, 0, 2));
        EXPECT_TRUE(weakly_isomorphic(strong_sum(strong_sum(a, b), c),
                                      strong_sum(a, strong_sum(b, c))));
    }
}

TEST(Properties, LiftThenForgetIsIdentity) {
    auto rng = pt::rng_for("lift-forget");
    Signature sig{{"E", 2}, {"U", 1}};
    Signature wide{{"E", 2}, {"U", 1}, {"R", 3}, {"V", 1}};
    for (int trial = 0; trial < 20; ++trial) {
        auto a = pt::random_structure(rng, sig, pt::uniform(rng, 0, 4));
        auto lifted = lift(a, wide);
        EXPECT_TRUE(lifted.relation("R").empty());
        std::vector<std::string> drop{"R", "V"};
        EXPECT_EQ(forget(lifted, drop), a);
    }
}

TEST(Properties, BasicMatchesExplicitChain) {
    auto rng = pt::rng_for("basic-chain");
    for (int trial = 0; trial < 15; ++trial) {
        BasicStructureSpec spec;
        spec.k = pt::uniform(rng, 0, 2);
        spec.l = pt::uniform(rng, 0, 2);
        for (std::size_t i = 0; i < spec.k; ++i) spec.orders.push_back(pt::uniform(rng, 0, 3));
        auto b = build_basic(spec);
        EXPECT_TRUE(well_formed(b));
        Structure chain(Signature{}, 0);
        for (std::size_t i = 0; i < spec.l; ++i) chain = strong_sum(chain, build_marked_vertex());
        for (auto n : spec.orders) chain = strong_sum(chain, build_transitive_tournament(n));
        EXPECT_TRUE(weakly_isomorphic(b, chain));
    }
}

TEST(Properties, ConstructorsWellFormed) {
    for (std::size_t n = 0; n < 6; ++n) {
        EXPECT_TRUE(well_formed(build_transitive_tournament(n)));
        EXPECT_TRUE(well_formed(cycle_graph(n)));
        EXPECT_TRUE(well_formed(path_graph(n)));
        EXPECT_TRUE(well_formed(complete_bipartite(n, 2)));
        EXPECT_TRUE(is_graph(complete_graph(n)));
    }
}

TEST(Canonical, Examples) {
    EXPECT_NE(canonical_form(complete_graph(3)), canonical_form(path_graph(3)));
    EXPECT_EQ(canonical_form(cycle_graph(6)), canonical_form(relabel(cycle_graph(6), std::vector<Vertex>{0, 2, 4, 1, 3, 5})));
    EXPECT_THROW(canonical_form(complete_graph(13)), Error);
}

TEST(Canonical, RandomRelabeling) {
    auto rng = pt::rng_for("canonical-relabel");
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = pt::uniform(rng, 0, 9);
        auto g = pt::random_graph(rng, n);
        auto h = relabel(g, pt::random_permutation(rng, n));
        EXPECT_EQ(canonical_form(g), canonical_form(h));
        EXPECT_TRUE(isomorphic(g, h));
    }
}

TEST(Canonical, KeysSeparateNonIsomorphic) {
    auto rng = pt::rng_for("canonical-separate");
    Signature sig{{"E", 2}, {"U", 1}};
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = pt::uniform(rng, 0, 4);
        auto a = pt::random_structure(rng, sig, n);
        auto b = pt::random_structure(rng, sig, n);
        EXPECT_EQ(canonical_form(a) == canonical_form(b), weakly_isomorphic(a, b)) << trial;
    }
}

TEST(Json, RoundTripIsByteStable) {
    auto t3 = build_transitive_tournament(3);
    auto text = structure_to_json(t3);
    auto back = structure_from_json(text);
    EXPECT_EQ(back, t3);
    EXPECT_EQ(structure_to_json(back), text);
}

TEST(Json, MalformedReportsPosition) {
    try {
        structure_from_json("{\n  \"domainSize\": 2,\n  oops }");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Components, CountsAndInduced) {
    auto g = disjoint_union(complete_graph(3), path_graph(2));
    auto comps = connected_components(g);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].size(), 3u);
    EXPECT_FALSE(is_connected(g));
    EXPECT_TRUE(isomorphic(induced(g, comps[1]), edge()));
    EXPECT_EQ(disjoint_copies(edge(), 3).domain_size(), 6u);
}
