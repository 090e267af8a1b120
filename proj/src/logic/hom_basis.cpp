#include "polyseq/hom_basis.hpp"

#include "polyseq/canonical.hpp"
#include "polyseq/counting.hpp"
#include "polyseq/error.hpp"
#include "polyseq/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace polyseq {

namespace {

struct Atom {
    std::size_t symbol;
    Tuple blocks;
    auto operator<=>(const Atom&) const = default;
};

// Formula truth once every free variable is mapped to a block and the truth
// of each mentioned atom is fixed by `set`.
class BlockEvaluator {
public:
    BlockEvaluator(const Formula& phi, const std::vector<std::uint32_t>& block_of)
        : block_of_(block_of) {
        collect(*phi.root());
    }

    const std::vector<Atom>& atoms() const { return atoms_; }

    bool eval(const Node& n, std::uint64_t set) const {
        switch (n.op) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Eq: return block_of_[n.vars[0]] == block_of_[n.vars[1]];
        case Op::Atom: return (set >> index_of(n)) & 1U;
        case Op::Not: return !eval(*n.kids[0], set);
        case Op::And:
            for (const auto& k : n.kids) {
                if (!eval(*k, set)) return false;
            }
            return true;
        case Op::Or:
            for (const auto& k : n.kids) {
                if (eval(*k, set)) return true;
            }
            return false;
        case Op::Implies: return !eval(*n.kids[0], set) || eval(*n.kids[1], set);
        case Op::Iff: return eval(*n.kids[0], set) == eval(*n.kids[1], set);
        case Op::Exists:
        case Op::Forall: break;
        }
        throw Error(ErrorCode::NotQuantifierFree, "formula is not quantifier-free");
    }

private:
    Atom atom_of(const Node& n) const {
        Atom a{n.symbol, {}};
        for (auto v : n.vars) a.blocks.push_back(block_of_[v]);
        return a;
    }

    void collect(const Node& n) {
        if (n.op == Op::Atom) {
            auto a = atom_of(n);
            if (std::find(atoms_.begin(), atoms_.end(), a) == atoms_.end()) atoms_.push_back(a);
        }
        for (const auto& k : n.kids) collect(*k);
    }

    std::size_t index_of(const Node& n) const {
        auto a = atom_of(n);
        return static_cast<std::size_t>(std::find(atoms_.begin(), atoms_.end(), a) - atoms_.begin());
    }

    const std::vector<std::uint32_t>& block_of_;
    std::vector<Atom> atoms_;
};

} // namespace

BigInt HomBasis::evaluate(const Structure& target) const {
    BigInt total = 0;
    RelationIndex index(target);
    for (const auto& t : terms) total += t.coefficient * count(CountMode::Hom, t.pattern, index).value;
    return total;
}

std::string HomBasis::to_string() const {
    std::ostringstream out;
    for (const auto& t : terms) {
        out << polyseq::to_string(t.coefficient) << " * hom(" << t.pattern.domain_size()
            << " vertices";
        for (std::size_t s = 0; s < t.pattern.symbol_count(); ++s) {
            const auto& rel = t.pattern.relation(s);
            if (rel.empty()) continue;
            out << "; " << t.pattern.signature()[s].name << ":";
            for (const auto& tup : rel) {
                out << " (";
                for (std::size_t i = 0; i < tup.size(); ++i) out << (i ? "," : "") << tup[i];
                out << ")";
            }
        }
        out << ")\n";
    }
    return out.str();
}

HomBasis qf_to_hom_basis(const Formula& phi, const HomBasisOptions& options) {
    if (!phi.quantifier_free()) {
        throw Error(ErrorCode::NotQuantifierFree, "hom basis needs a quantifier-free formula");
    }
    const std::size_t p = phi.free_count();
    if (p == 0) throw Error(ErrorCode::InvalidArgument, "hom basis needs at least one free variable");

    std::map<std::string, HomTerm> merged;
    auto add = [&](const Structure& pattern, const BigInt& c) {
        if (c == 0) return;
        CanonicalOptions copt;
        copt.max_vertices = std::max<std::size_t>(copt.max_vertices, pattern.domain_size());
        auto key = canonical_form(pattern, copt);
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, HomTerm{c, pattern, key});
        } else {
            it->second.coefficient += c;
        }
    };

    for_each_partition(p, [&](const Partition& classes) {
        const auto block_of = classes.block_of();
        BlockEvaluator be(phi, block_of);
        const auto& atoms = be.atoms();
        const std::size_t m = atoms.size();
        if (m > options.max_atoms || m >= 63) {
            throw Error(ErrorCode::BudgetExceeded,
                        "hom basis: " + std::to_string(m) + " distinct atoms exceed the limit of " +
                            std::to_string(options.max_atoms));
        }
        const std::uint64_t subsets = std::uint64_t{1} << m;
        // g(Y) = sum over X subset of Y of (-1)^{|Y \ X|} [phi(X)]
        std::vector<long long> g(subsets);
        for (std::uint64_t x = 0; x < subsets; ++x) g[x] = be.eval(*phi.root(), x) ? 1 : 0;
        for (std::size_t bit = 0; bit < m; ++bit) {
            for (std::uint64_t y = 0; y < subsets; ++y) {
                if (y >> bit & 1U) g[y] -= g[y ^ (std::uint64_t{1} << bit)];
            }
        }
        const std::size_t b = classes.blocks.size();
        for (std::uint64_t y = 0; y < subsets; ++y) {
            if (g[y] == 0) continue;
            std::vector<std::vector<Tuple>> rels(phi.signature().size());
            for (std::size_t i = 0; i < m; ++i) {
                if (y >> i & 1U) rels[atoms[i].symbol].push_back(atoms[i].blocks);
            }
            Structure fy(phi.signature(), b, std::move(rels));
            // inj(F_Y) = sum over Theta of mu(Theta) hom(F_Y / Theta)
            for_each_partition(b, [&](const Partition& theta) {
                add(quotient(fy, theta), BigInt(g[y]) * mobius(theta));
            });
        }
    });

    HomBasis basis;
    for (auto& [key, term] : merged) {
        if (term.coefficient != 0) basis.terms.push_back(std::move(term));
    }
    return basis;
}

} // namespace polyseq
