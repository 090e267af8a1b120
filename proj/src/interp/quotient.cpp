#include "polyseq/interpretation.hpp"

#include "polyseq/error.hpp"
#include "polyseq/relation_index.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace polyseq {

namespace detail {
std::vector<Tuple> satisfying_tuples(const Formula& f, const RelationIndex& index,
                                     const ApplyOptions& options);
std::vector<Tuple> relation_on(const Formula& f, const RelationIndex& index,
                               const std::vector<Tuple>& domain, std::size_t arity,
                               const ApplyOptions& options);
} // namespace detail

namespace {

std::string tuple_text(const Tuple& t) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    out << ')';
    return out.str();
}

bool contains(const std::vector<std::uint32_t>& sorted, std::uint32_t x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

bool holds_on(const Evaluator& ev, const std::vector<const Tuple*>& blocks) {
    std::vector<Vertex> slots(ev.var_count(), 0);
    std::size_t k = 0;
    for (const Tuple* t : blocks) {
        for (Vertex v : *t) slots[k++] = v;
    }
    return ev.eval(slots);
}

} // namespace

InterpretedStructure apply_quotient(const QuotientScheme& q, const Structure& a,
                                    const ApplyOptions& options) {
    validate_scheme(q);
    const auto& base = q.base;
    RelationIndex index(a);
    const auto domain = detail::satisfying_tuples(base.rho0, index, options);
    const auto m = static_cast<std::uint32_t>(domain.size());

    std::vector<std::vector<std::uint32_t>> related(m);
    for (const auto& e : detail::relation_on(q.varpi, index, domain, 2, options)) {
        related[e[0]].push_back(e[1]);
    }
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::NotEquivalence,
                    "equivalence formula of '" + base.name + "' is not an equivalence: " + what);
    };
    for (std::uint32_t u = 0; u < m; ++u) {
        if (!contains(related[u], u)) fail("not reflexive on " + tuple_text(domain[u]));
    }
    for (std::uint32_t u = 0; u < m; ++u) {
        for (auto v : related[u]) {
            if (related[v] == related[u]) continue;
            if (!contains(related[v], u)) {
                fail("not symmetric on " + tuple_text(domain[u]) + ", " + tuple_text(domain[v]));
            }
            for (auto w : related[v]) {
                if (!contains(related[u], w)) {
                    fail("not transitive on " + tuple_text(domain[u]) + ", " +
                         tuple_text(domain[v]) + ", " + tuple_text(domain[w]));
                }
            }
            for (auto w : related[u]) {
                if (!contains(related[v], w)) {
                    fail("not transitive on " + tuple_text(domain[v]) + ", " +
                         tuple_text(domain[u]) + ", " + tuple_text(domain[w]));
                }
            }
        }
    }

    // Classes keyed by their least member, which comes first in lexicographic order.
    std::vector<std::uint32_t> class_of(m, 0);
    std::vector<std::uint32_t> reps;
    std::vector<std::uint32_t> rep_class(m, 0);
    for (std::uint32_t u = 0; u < m; ++u) {
        const auto least = related[u].front();
        if (least == u) {
            rep_class[u] = static_cast<std::uint32_t>(reps.size());
            reps.push_back(u);
        }
        class_of[u] = rep_class[least];
    }

    InterpretedStructure out;
    for (auto r : reps) {
        out.tuples.push_back(domain[r]);
        out.class_sizes.push_back(related[r].size());
    }

    if (!q.certificates.empty()) {
        out.class_certificate.assign(reps.size(), 0);
        std::vector<Evaluator> etas;
        for (const auto& c : q.certificates) etas.emplace_back(c.eta, index);
        std::vector<std::optional<std::size_t>> seen(etas.size());
        // Sizes are checkable at a known index, and constant sizes always.
        std::vector<std::optional<BigInt>> expected;
        for (const auto& c : q.certificates) {
            if (options.index) expected.emplace_back(c.size(*options.index));
            else if (c.size.is_constant()) expected.emplace_back(c.size(0));
            else expected.emplace_back();
        }
        for (std::uint32_t u = 0; u < m; ++u) {
            const std::size_t size = related[u].size();
            bool covered = false;
            for (std::size_t i = 0; i < etas.size(); ++i) {
                if (!holds_on(etas[i], {&domain[u]})) continue;
                if (!covered && related[u].front() == u) out.class_certificate[class_of[u]] = i;
                covered = true;
                if (expected[i] && BigInt(size) != *expected[i]) {
                    throw Error(ErrorCode::CertificateMismatch,
                                "class of " + tuple_text(domain[u]) + " has size " +
                                    std::to_string(size) + " but class formula " +
                                    std::to_string(i + 1) + " declares " +
                                    polyseq::to_string(*expected[i]) +
                                    (options.index ? " at n = " + std::to_string(*options.index) : ""));
                }
                if (!seen[i]) seen[i] = size;
                if (*seen[i] != size) {
                    throw Error(ErrorCode::CertificateMismatch,
                                "class formula " + std::to_string(i + 1) +
                                    " holds on classes of sizes " + std::to_string(*seen[i]) +
                                    " and " + std::to_string(size) + " (tuple " +
                                    tuple_text(domain[u]) + ")");
                }
            }
            if (!covered) {
                throw Error(ErrorCode::CertificateMismatch,
                            "no class formula holds on " + tuple_text(domain[u]));
            }
        }
    }

    std::vector<std::vector<Tuple>> rels(base.target.size());
    for (std::size_t i = 0; i < base.target.size(); ++i) {
        rels[i] = detail::relation_on(base.rhos[i], index, out.tuples,
                                      static_cast<std::size_t>(base.target[i].arity), options);
    }

    // Compatibility of varpi with the relations, by sampling other class members.
    if (!reps.empty() && !base.target.empty()) {
        std::vector<std::vector<std::uint32_t>> members(reps.size());
        for (std::uint32_t u = 0; u < m; ++u) members[class_of[u]].push_back(u);
        std::vector<Evaluator> rhos;
        for (const auto& r : base.rhos) rhos.emplace_back(r, index);
        std::mt19937_64 rng(options.seed);
        auto pick = [&](std::size_t bound) {
            return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
        };
        for (std::size_t sample = 0; sample < options.compatibility_samples; ++sample) {
            const std::size_t sym = pick(base.target.size());
            const auto arity = static_cast<std::size_t>(base.target[sym].arity);
            std::vector<const Tuple*> rep_blocks, other_blocks;
            Tuple classes;
            // Half the samples start from a tuple that holds, so positives are covered.
            if (sample % 2 == 0 && !rels[sym].empty()) {
                classes = rels[sym][pick(rels[sym].size())];
            } else {
                for (std::size_t b = 0; b < arity; ++b) {
                    classes.push_back(static_cast<Vertex>(pick(reps.size())));
                }
            }
            for (Vertex c : classes) {
                rep_blocks.push_back(&domain[reps[c]]);
                other_blocks.push_back(&domain[members[c][pick(members[c].size())]]);
            }
            if (holds_on(rhos[sym], rep_blocks) != holds_on(rhos[sym], other_blocks)) {
                std::string reps_text, other_text;
                for (std::size_t b = 0; b < arity; ++b) {
                    reps_text += (b ? " " : "") + tuple_text(*rep_blocks[b]);
                    other_text += (b ? " " : "") + tuple_text(*other_blocks[b]);
                }
                throw Error(ErrorCode::CompatibilityViolation,
                            "relation '" + base.target[sym].name +
                                "' differs on equivalent tuples: " + reps_text + " vs " + other_text);
            }
        }
    }

    out.structure = Structure(base.target, reps.size(), std::move(rels));
    return out;
}

} // namespace polyseq
