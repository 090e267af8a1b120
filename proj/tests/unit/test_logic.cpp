#include "generators.hpp"

#include <polyseq/counting.hpp>
#include <polyseq/dnf.hpp>
#include <polyseq/error.hpp>
#include <polyseq/evaluate.hpp>
#include <polyseq/graphs.hpp>
#include <polyseq/hom_basis.hpp>
#include <polyseq/parser.hpp>

#include <gtest/gtest.h>

#include <functional>

using namespace polyseq;
namespace pt = polyseq::testing;

namespace {

// Plain enumeration of all |A|^k assignments, independent of the pruned search.
BigInt brute_count(const Formula& phi, const Structure& s) {
    std::size_t k = phi.free_count();
    std::vector<Vertex> vals(k, 0);
    BigInt total = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            if (eval_formula(phi, s, vals)) ++total;
            return;
        }
        for (Vertex v = 0; v < s.domain_size(); ++v) {
            vals[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return total;
}

Signature small_sig() { return Signature{{"E", 2}, {"U", 1}}; }

}  // namespace

TEST(Parser, CrownVertexFormula) {
    auto phi = parse_formula("U1T(x1) & !U1T(x2)", basic_signature(1, 2));
    EXPECT_TRUE(phi.quantifier_free());
    EXPECT_EQ(phi.free_vars(), (std::vector<std::string>{"x1", "x2"}));
}

TEST(Parser, ReflexiveEquality) {
    auto t = build_transitive_tournament(4);
    auto phi = parse_formula("x1 = x1", t.signature());
    EXPECT_TRUE(phi.quantifier_free());
    EXPECT_EQ(count_satisfying(phi, t), 4);
}

TEST(Parser, UnclosedAtomPosition) {
    try {
        parse_formula("S1(x1,x2", basic_signature(1, 0));
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 9u);
    }
}

TEST(Parser, Errors) {
    auto sig = Signature::graph();
    EXPECT_THROW(parse_formula("F(x,y)", sig), Error);
    try {
        parse_formula("E(x)", sig);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
    }
    try {
        parse_formula("E(x,z)", sig, std::vector<std::string>{"x", "y"});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UndeclaredVariable);
    }
}

TEST(Parser, NamingConventionsAndRoundTrip) {
    auto sig = Signature::graph();
    auto phi = parse_formula("E(x1_2, y3) -> !(x1_2 = y3) <-> exists z (E(z, y3))", sig);
    EXPECT_FALSE(phi.quantifier_free());
    auto again = parse_formula(phi.to_string(), sig);
    EXPECT_EQ(again.to_string(), phi.to_string());
    EXPECT_EQ(again.free_vars(), phi.free_vars());
}

TEST(Eval, Examples) {
    auto e = build_marked_vertex();
    auto u = parse_formula("U(x)", e.signature());
    EXPECT_TRUE(eval_formula(u, e, {{"x", 0}}));
    EXPECT_EQ(count_satisfying(u, e), 1);

    auto t3 = build_transitive_tournament(3);
    auto s = parse_formula("S(x1,x2)", t3.signature());
    EXPECT_TRUE(eval_formula(s, t3, {{"x1", 0}, {"x2", 2}}));
    EXPECT_FALSE(eval_formula(s, t3, {{"x1", 2}, {"x2", 0}}));

    auto ex = parse_formula("exists z (S(x,z))", t3.signature());
    EXPECT_FALSE(eval_formula(ex, t3, {{"x", 2}}));
    EXPECT_TRUE(eval_formula(ex, t3, {{"x", 1}}));

    EXPECT_THROW(eval_formula(s, t3, {{"x1", 0}}), Error);
}

TEST(Eval, CountExamples) {
    auto t4 = build_basic({1, 0, {4}});
    EXPECT_EQ(count_satisfying(parse_formula("S1(x1,x2)", t4.signature()), t4), 6);
    auto t5 = build_transitive_tournament(5);
    EXPECT_EQ(count_satisfying(parse_formula("x1 = x2", t5.signature()), t5), 5);
}

TEST(Eval, MissingSymbolIsSignatureMismatch) {
    auto phi = parse_formula("W(x)", Signature({{"W", 1}}));
    try {
        count_satisfying(phi, complete_graph(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SignatureMismatch);
    }
}

TEST(Eval, BudgetExceeded) {
    auto g = complete_graph(30);
    auto phi = parse_formula("E(a,b) & E(b,c) & E(c,d) & E(d,a)", g.signature());
    EvalOptions small;
    small.budget = 100;
    try {
        count_satisfying(phi, g, small);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
}

TEST(Properties, PrunedCountMatchesBruteForce) {
    auto rng = pt::rng_for("count-vs-brute");
    auto sig = small_sig();
    std::vector<std::string> vars{"x", "y", "z"};
    for (int trial = 0; trial < 100; ++trial) {
        auto phi = pt::random_qf(rng, sig, vars, pt::uniform(rng, 1, 5));
        auto a = pt::random_structure(rng, sig, pt::uniform(rng, 0, 4));
        EXPECT_EQ(count_satisfying(phi, a), brute_count(phi, a)) << phi.to_string();
    }
}

TEST(Properties, QuantifiedFormulasAgreeWithManualExpansion) {
    auto rng = pt::rng_for("quantified");
    auto sig = Signature::graph();
    for (int trial = 0; trial < 30; ++trial) {
        auto g = pt::random_graph(rng, pt::uniform(rng, 1, 5));
        auto deg = parse_formula("exists z (E(x,z) & !(z = y))", sig, std::vector<std::string>{"x", "y"});
        auto all = parse_formula("forall z (E(x,z) | x = z)", sig);
        for (Vertex x = 0; x < g.domain_size(); ++x) {
            bool universal = true;
            for (Vertex z = 0; z < g.domain_size(); ++z)
                universal = universal && (x == z || g.holds(0, Tuple{x, z}));
            EXPECT_EQ(eval_formula(all, g, {{"x", x}}), universal);
            for (Vertex y = 0; y < g.domain_size(); ++y) {
                bool expect = false;
                for (Vertex z = 0; z < g.domain_size(); ++z)
                    expect = expect || (z != y && g.holds(0, Tuple{x, z}));
                EXPECT_EQ(eval_formula(deg, g, {{"x", x}, {"y", y}}), expect);
            }
        }
    }
}

TEST(Properties, InvariantUnderRelabeling) {
    auto rng = pt::rng_for("eval-relabel");
    auto sig = small_sig();
    std::vector<std::string> vars{"x", "y"};
    for (int trial = 0; trial < 40; ++trial) {
        auto phi = pt::random_qf(rng, sig, vars, 4);
        std::size_t n = pt::uniform(rng, 1, 4);
        auto a = pt::random_structure(rng, sig, n);
        auto perm = pt::random_permutation(rng, n);
        auto b = relabel(a, perm);
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = 0; y < n; ++y) {
                std::vector<Vertex> va{x, y}, vb{perm[x], perm[y]};
                EXPECT_EQ(eval_formula(phi, a, va), eval_formula(phi, b, vb));
            }
    }
}

TEST(Dnf, DeMorganShape) {
    auto sig = Signature({{"A", 1}, {"B", 1}});
    auto clauses = dnf_clauses(parse_formula("!(A(x) & B(x))", sig));
    ASSERT_EQ(clauses.size(), 2u);
    for (const auto& c : clauses) {
        ASSERT_EQ(c.size(), 1u);
        EXPECT_FALSE(c[0].positive);
    }
}

TEST(Dnf, RejectsQuantifiers) {
    auto sig = Signature::graph();
    try {
        dnf_clauses(parse_formula("exists y (E(x,y))", sig));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotQuantifierFree);
    }
}

TEST(Properties, DnfPreservesSatisfaction) {
    auto rng = pt::rng_for("dnf");
    auto sig = small_sig();
    std::vector<std::string> vars{"x", "y", "z"};
    for (int trial = 0; trial < 60; ++trial) {
        auto phi = pt::random_qf(rng, sig, vars, pt::uniform(rng, 1, 5));
        auto d = to_dnf(phi);
        EXPECT_EQ(d.free_vars(), phi.free_vars());
        for (int s = 0; s < 3; ++s) {
            auto a = pt::random_structure(rng, sig, pt::uniform(rng, 0, 3));
            std::vector<Vertex> vals(3);
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == 3) {
                    EXPECT_EQ(eval_formula(phi, a, vals), eval_formula(d, a, vals))
                        << phi.to_string();
                    return;
                }
                for (Vertex v = 0; v < a.domain_size(); ++v) {
                    vals[i] = v;
                    rec(i + 1);
                }
            };
            rec(0);
        }
    }
}

TEST(HomBasis, Equality) {
    auto sig = Signature::graph();
    auto basis = qf_to_hom_basis(parse_formula("x1 = x2", sig));
    ASSERT_EQ(basis.terms.size(), 1u);
    EXPECT_EQ(basis.terms[0].coefficient, 1);
    EXPECT_EQ(basis.terms[0].pattern.domain_size(), 1u);
    EXPECT_EQ(basis.terms[0].pattern.tuple_count(), 0u);
    EXPECT_EQ(basis.evaluate(complete_graph(5)), 5);
}

TEST(HomBasis, EdgeIsTwiceEdgeCount) {
    auto sig = Signature::graph();
    auto basis = qf_to_hom_basis(parse_formula("E(x1,x2)", sig));
    for (std::size_t n = 0; n <= 4; ++n)
        for (const auto& g : pt::all_graphs(n))
            EXPECT_EQ(basis.evaluate(g), BigInt(2 * edge_count(g)));
}

TEST(HomBasis, Errors) {
    auto sig = Signature::graph();
    EXPECT_THROW(qf_to_hom_basis(parse_formula("exists y (E(x,y))", sig)), Error);
    EXPECT_THROW(qf_to_hom_basis(parse_formula("true", sig)), Error);
}

TEST(Properties, HomBasisMatchesCount) {
    auto rng = pt::rng_for("hom-basis");
    auto sig = small_sig();
    std::vector<std::string> vars{"x", "y", "z"};
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::string> fv(vars.begin(), vars.begin() + pt::uniform(rng, 1, 3));
        auto phi = pt::random_qf(rng, sig, fv, pt::uniform(rng, 1, 4));
        auto basis = qf_to_hom_basis(phi);
        for (int s = 0; s < 5; ++s) {
            auto a = pt::random_structure(rng, sig, pt::uniform(rng, 0, 4));
            EXPECT_EQ(basis.evaluate(a), count_satisfying(phi, a)) << phi.to_string();
        }
    }
}

TEST(Properties, HomBasisIgnoresSyntacticForm) {
    auto rng = pt::rng_for("hom-basis-dnf");
    auto sig = small_sig();
    std::vector<std::string> vars{"x", "y"};
    for (int trial = 0; trial < 40; ++trial) {
        auto phi = pt::random_qf(rng, sig, vars, pt::uniform(rng, 1, 4));
        auto a = qf_to_hom_basis(phi), b = qf_to_hom_basis(to_dnf(phi));
        ASSERT_EQ(a.terms.size(), b.terms.size()) << phi.to_string();
        for (std::size_t i = 0; i < a.terms.size(); ++i) {
            EXPECT_EQ(a.terms[i].key, b.terms[i].key);
            EXPECT_EQ(a.terms[i].coefficient, b.terms[i].coefficient);
        }
    }
}
