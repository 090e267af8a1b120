#include "generators.hpp"

#include <polyseq/counting.hpp>
#include <polyseq/error.hpp>
#include <polyseq/graphs.hpp>
#include <polyseq/partition.hpp>

#include <gtest/gtest.h>

#include <functional>

using namespace polyseq;
namespace pt = polyseq::testing;

namespace {

// Every map V(F) -> V(A), filtered by mode.
BigInt brute(CountMode mode, const Structure& f, const Structure& a) {
    std::size_t k = f.domain_size(), n = a.domain_size();
    std::vector<Vertex> map(k);
    BigInt total = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            if (mode != CountMode::Hom) {
                for (std::size_t x = 0; x < k; ++x)
                    for (std::size_t y = x + 1; y < k; ++y)
                        if (map[x] == map[y]) return;
            }
            for (std::size_t s = 0; s < f.symbol_count(); ++s) {
                std::size_t t = a.signature().index_of(f.signature()[s].name);
                for (const auto& tup : f.relation(s)) {
                    Tuple img;
                    for (Vertex v : tup) img.push_back(map[v]);
                    if (!a.holds(t, img)) return;
                }
                if (mode == CountMode::Ind) {
                    for (const auto& tup : a.relation(t)) {
                        Tuple pre;
                        for (Vertex v : tup) {
                            auto it = std::find(map.begin(), map.end(), v);
                            if (it == map.end()) break;
                            pre.push_back(static_cast<Vertex>(it - map.begin()));
                        }
                        if (pre.size() == tup.size() && !f.holds(s, pre)) return;
                    }
                }
            }
            ++total;
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            map[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return total;
}

Structure two_isolated() { return empty_graph(2); }

// Simple graphs on the vertex set of f containing all of f's edges.
void for_each_supergraph(const Structure& f, const std::function<void(const Structure&, std::size_t)>& visit) {
    std::vector<std::pair<Vertex, Vertex>> base, extra;
    std::size_t n = f.domain_size();
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            (f.holds(0, Tuple{a, b}) ? base : extra).emplace_back(a, b);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << extra.size()); ++mask) {
        auto edges = base;
        std::size_t added = 0;
        for (std::size_t i = 0; i < extra.size(); ++i)
            if (mask >> i & 1) {
                edges.push_back(extra[i]);
                ++added;
            }
        visit(graph_from_edges(n, edges), added);
    }
}

}  // namespace

TEST(Hom, Examples) {
    EXPECT_EQ(hom_count(complete_graph(2), complete_graph(3)).value, 6);
    EXPECT_EQ(hom_count(complete_graph(2), empty_graph(0)).value, 0);
    EXPECT_EQ(hom_count(path_graph(3), complete_graph(3)).value, 12);
    EXPECT_EQ(hom_count(empty_graph(0), complete_graph(3)).value, 1);
}

TEST(Inj, Examples) {
    EXPECT_EQ(inj_count(complete_graph(2), complete_graph(3)).value, 6);
    EXPECT_EQ(inj_count(two_isolated(), complete_graph(1)).value, 0);
    auto rng = pt::rng_for("inj-k1");
    for (int i = 0; i < 5; ++i) {
        auto a = pt::random_graph(rng, pt::uniform(rng, 0, 7));
        EXPECT_EQ(inj_count(complete_graph(1), a).value, BigInt(a.domain_size()));
        EXPECT_EQ(ind_count(complete_graph(1), a).value, BigInt(a.domain_size()));
    }
}

TEST(Ind, Examples) {
    EXPECT_EQ(ind_count(complete_graph(2), complete_graph(3)).value, 6);
    EXPECT_EQ(ind_count(two_isolated(), complete_graph(3)).value, 0);
}

TEST(Counting, Errors) {
    Structure f(Signature({{"R", 3}}), 3, {{{0, 1, 2}}});
    try {
        hom_count(f, complete_graph(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SignatureMismatch);
    }
    CountOptions tiny;
    tiny.node_budget = 10;
    try {
        hom_count(path_graph(5), complete_graph(6), tiny);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
}

TEST(Properties, CountsMatchBruteForce) {
    auto rng = pt::rng_for("count-brute");
    Signature sig{{"E", 2}, {"U", 1}};
    for (int trial = 0; trial < 80; ++trial) {
        auto f = pt::random_structure(rng, sig, pt::uniform(rng, 0, 3), 0.3);
        auto a = pt::random_structure(rng, sig, pt::uniform(rng, 0, 4), 0.5);
        for (auto mode : {CountMode::Hom, CountMode::Inj, CountMode::Ind})
            EXPECT_EQ(count(mode, f, a).value, brute(mode, f, a)) << mode_name(mode) << " " << trial;
    }
}

TEST(Partition, Mobius) {
    EXPECT_EQ(mobius(Partition::discrete(4)), 1);
    std::vector<std::uint32_t> pair{0, 0, 1, 2}, triple{0, 0, 0};
    EXPECT_EQ(mobius(Partition::from_rgs(pair)), -1);
    EXPECT_EQ(mobius(Partition::from_rgs(triple)), 2);
}

TEST(Partition, BellNumbers) {
    const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
    for (std::size_t n = 0; n <= 5; ++n) {
        std::size_t seen = 0;
        for_each_partition(n, [&](const Partition& p) {
            EXPECT_NO_THROW(validate_partition(p, n));
            ++seen;
        });
        EXPECT_EQ(seen, bell[n]);
    }
}

TEST(Partition, Quotient) {
    std::vector<std::uint32_t> one{0, 0};
    auto loop = quotient(complete_graph(2), Partition::from_rgs(one));
    EXPECT_EQ(loop.domain_size(), 1u);
    EXPECT_EQ(loop.relation("E"), (std::vector<Tuple>{{0, 0}}));

    auto p3 = path_graph(3);
    EXPECT_EQ(quotient(p3, Partition::discrete(3)), p3);

    std::vector<std::uint32_t> ends{0, 1, 0};
    auto k2 = quotient(p3, Partition::from_rgs(ends));
    EXPECT_EQ(k2.domain_size(), 2u);
    EXPECT_EQ(k2.relation("E"), (std::vector<Tuple>{{0, 1}, {1, 0}}));

    Partition bad{{{0}, {0, 1}}};
    EXPECT_THROW(quotient(p3, bad), Error);
}

TEST(Properties, InversionIdentities) {
    auto rng = pt::rng_for("inversion");
    auto patterns = pt::graphs_up_to_iso(4);
    for (int t = 0; t < 4; ++t) {
        auto a = pt::random_graph(rng, pt::uniform(rng, 1, 6));
        for (const auto& f : patterns) {
            BigInt hom_sum = 0, inj_sum = 0;
            for_each_partition(f.domain_size(), [&](const Partition& theta) {
                auto q = quotient(f, theta);
                hom_sum += inj_count(q, a).value;
                inj_sum += mobius(theta) * hom_count(q, a).value;
            });
            EXPECT_EQ(hom_count(f, a).value, hom_sum);
            EXPECT_EQ(inj_count(f, a).value, inj_sum);

            BigInt via_ind = 0, via_inj = 0;
            for_each_supergraph(f, [&](const Structure& g, std::size_t added) {
                via_ind += ind_count(g, a).value;
                BigInt term = inj_count(g, a).value;
                via_inj += added % 2 ? -term : term;
            });
            EXPECT_EQ(inj_count(f, a).value, via_ind);
            EXPECT_EQ(ind_count(f, a).value, via_inj);
        }
    }
}

TEST(Properties, MultiplicativeOverComponents) {
    auto rng = pt::rng_for("multiplicative");
    for (int trial = 0; trial < 30; ++trial) {
        auto f = pt::random_graph(rng, pt::uniform(rng, 1, 5), 0.35);
        auto a = pt::random_graph(rng, pt::uniform(rng, 1, 6));
        BigInt product = 1;
        for (const auto& comp : connected_components(f)) product *= hom_count(induced(f, comp), a).value;
        EXPECT_EQ(hom_count(f, a).value, product);
    }
}

TEST(Properties, ConnectedPatternAddsOverStrongSum) {
    auto rng = pt::rng_for("strong-sum-additive");
    std::vector<std::pair<std::string, std::string>> pairs{{"E", "E'"}};
    for (int trial = 0; trial < 30; ++trial) {
        auto f = pt::random_graph(rng, pt::uniform(rng, 1, 4), 0.7);
        if (!is_connected(f)) continue;
        auto a = pt::random_graph(rng, pt::uniform(rng, 0, 5));
        auto b = pt::random_graph(rng, pt::uniform(rng, 0, 5));
        auto sum = merge(strong_sum(a, b), pairs);
        EXPECT_EQ(hom_count(f, sum).value, hom_count(f, a).value + hom_count(f, b).value);
    }
}

TEST(Properties, CopiesMultiplyPerComponent) {
    auto rng = pt::rng_for("copies");
    for (int trial = 0; trial < 20; ++trial) {
        auto f = pt::random_graph(rng, pt::uniform(rng, 1, 4), 0.4);
        auto a = pt::random_graph(rng, pt::uniform(rng, 1, 4));
        std::size_t m = pt::uniform(rng, 0, 3);
        BigInt expect = 1;
        for (const auto& comp : connected_components(f)) expect *= BigInt(m) * hom_count(induced(f, comp), a).value;
        EXPECT_EQ(hom_count(f, disjoint_copies(a, m)).value, expect);
    }
}

TEST(Properties, IndInjHomOrdered) {
    auto rng = pt::rng_for("ordered");
    Signature sig{{"E", 2}, {"U", 1}};
    for (int trial = 0; trial < 50; ++trial) {
        auto f = pt::random_structure(rng, sig, pt::uniform(rng, 0, 4), 0.3);
        auto a = pt::random_structure(rng, sig, pt::uniform(rng, 0, 5), 0.5);
        auto ind = ind_count(f, a).value, inj = inj_count(f, a).value, hom = hom_count(f, a).value;
        EXPECT_LE(ind, inj);
        EXPECT_LE(inj, hom);
    }
}
