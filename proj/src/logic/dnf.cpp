#include "polyseq/dnf.hpp"

#include "polyseq/error.hpp"

#include <algorithm>

namespace polyseq {

namespace {

class DnfBuilder {
public:
    explicit DnfBuilder(const DnfOptions& options) : options_(options) {}

    // DNF of `n` under the given polarity.
    std::vector<Clause> build(const Node& n, bool positive) {
        switch (n.op) {
        case Op::True: return positive ? truth() : falsity();
        case Op::False: return positive ? falsity() : truth();
        case Op::Eq:
        case Op::Atom: {
            Literal lit{n.op, n.symbol, n.vars, positive};
            if (n.op == Op::Eq) {
                if (lit.vars[0] == lit.vars[1]) return positive ? truth() : falsity();
                std::sort(lit.vars.begin(), lit.vars.end());
            }
            return {Clause{lit}};
        }
        case Op::Not: return build(*n.kids[0], !positive);
        case Op::And:
        case Op::Or: {
            const bool conjunctive = (n.op == Op::And) == positive;
            std::vector<Clause> acc = conjunctive ? truth() : falsity();
            for (const auto& k : n.kids) {
                auto part = build(*k, positive);
                acc = conjunctive ? product(acc, part) : concat(std::move(acc), std::move(part));
            }
            return acc;
        }
        case Op::Implies: {
            // a -> b  ==  !a | b
            auto a = build(*n.kids[0], !positive);
            auto b = build(*n.kids[1], positive);
            return positive ? concat(std::move(a), std::move(b)) : product(a, b);
        }
        case Op::Iff: {
            // (a & b) | (!a & !b); negated: (a & !b) | (!a & b)
            auto a = build(*n.kids[0], true);
            auto na = build(*n.kids[0], false);
            auto b = build(*n.kids[1], true);
            auto nb = build(*n.kids[1], false);
            if (positive) return concat(product(a, b), product(na, nb));
            return concat(product(a, nb), product(na, b));
        }
        case Op::Exists:
        case Op::Forall:
            throw Error(ErrorCode::NotQuantifierFree, "DNF needs a quantifier-free formula");
        }
        return {};
    }

private:
    static std::vector<Clause> truth() { return {Clause{}}; }
    static std::vector<Clause> falsity() { return {}; }

    void charge(const std::vector<Clause>& clauses) const {
        std::size_t total = 0;
        for (const auto& c : clauses) total += std::max<std::size_t>(c.size(), 1);
        if (total > options_.max_literals) {
            throw Error(ErrorCode::BudgetExceeded,
                        "DNF exceeds " + std::to_string(options_.max_literals) + " literals");
        }
    }

    std::vector<Clause> concat(std::vector<Clause> a, std::vector<Clause> b) const {
        a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        charge(a);
        return a;
    }

    std::vector<Clause> product(const std::vector<Clause>& a, const std::vector<Clause>& b) const {
        std::vector<Clause> out;
        std::size_t total = 0;
        for (const auto& x : a) {
            for (const auto& y : b) {
                Clause c;
                std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
                c.erase(std::unique(c.begin(), c.end()), c.end());
                if (contradictory(c)) continue;
                total += std::max<std::size_t>(c.size(), 1);
                if (total > options_.max_literals) {
                    throw Error(ErrorCode::BudgetExceeded, "DNF exceeds " +
                                                               std::to_string(options_.max_literals) +
                                                               " literals");
                }
                out.push_back(std::move(c));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Sorted clause: complementary literals differ only in `positive`, so they are adjacent.
    static bool contradictory(const Clause& c) {
        for (std::size_t i = 1; i < c.size(); ++i) {
            const auto& p = c[i - 1];
            const auto& q = c[i];
            if (p.op == q.op && p.symbol == q.symbol && p.vars == q.vars) return true;
        }
        return false;
    }

    const DnfOptions& options_;
};

NodePtr literal_node(const Literal& lit) {
    NodePtr atom = lit.op == Op::Eq ? make_eq(lit.vars[0], lit.vars[1])
                                    : make_atom(lit.symbol, lit.vars);
    return lit.positive ? atom : make_not(atom);
}

} // namespace

std::vector<Clause> dnf_clauses(const Formula& phi, const DnfOptions& options) {
    if (!phi.quantifier_free()) {
        throw Error(ErrorCode::NotQuantifierFree, "DNF needs a quantifier-free formula");
    }
    return DnfBuilder(options).build(*phi.root(), true);
}

Formula to_dnf(const Formula& phi, const DnfOptions& options) {
    auto clauses = dnf_clauses(phi, options);
    std::vector<NodePtr> disjuncts;
    for (const auto& c : clauses) {
        std::vector<NodePtr> lits;
        for (const auto& l : c) lits.push_back(literal_node(l));
        disjuncts.push_back(make_and(std::move(lits)));
    }
    return Formula(phi.signature(), phi.free_vars(), phi.free_count(),
                   make_or(std::move(disjuncts)));
}

} // namespace polyseq
