#include "polyseq/evaluate.hpp"

#include "polyseq/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace polyseq {

std::uint64_t default_assignment_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("POLYSEQ_ASSIGNMENT_BUDGET")) {
            char* end = nullptr;
            auto v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{100'000'000};
    }();
    return value;
}

Evaluator::Evaluator(const Formula& phi, const RelationIndex& index)
    : index_(&index), n_(index.structure().domain_size()), var_count_(phi.var_count()),
      free_count_(phi.free_count()) {
    std::vector<std::size_t> uses;
    root_ = compile(*phi.root(), phi, index.structure(), uses);
}

Evaluator::Evaluator(const Formula& phi, const Structure& s)
    : owned_(std::make_unique<RelationIndex>(s)), index_(owned_.get()), n_(s.domain_size()),
      var_count_(phi.var_count()), free_count_(phi.free_count()) {
    std::vector<std::size_t> uses;
    root_ = compile(*phi.root(), phi, s, uses);
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;

std::uint32_t Evaluator::compile(const Node& n, const Formula& phi, const Structure& s,
                                 std::vector<std::size_t>& uses_out) {
    Flat f{n.op, 0, 0, 0, 0, 0};
    std::vector<std::size_t> uses;
    switch (n.op) {
    case Op::True:
    case Op::False:
        break;
    case Op::Eq:
    case Op::Atom: {
        if (n.op == Op::Atom) {
            const auto& sym = phi.signature()[n.symbol];
            auto idx = s.signature().find(sym.name);
            if (!idx || s.signature()[*idx].arity != sym.arity) {
                throw Error(ErrorCode::SignatureMismatch,
                            "structure has no symbol '" + sym.name + "' of arity " +
                                std::to_string(sym.arity));
            }
            f.symbol = static_cast<std::uint32_t>(*idx);
        }
        f.first = static_cast<std::uint32_t>(refs_.size());
        f.count = static_cast<std::uint32_t>(n.vars.size());
        for (auto v : n.vars) {
            refs_.push_back(static_cast<std::uint32_t>(v));
            uses.push_back(v);
        }
        break;
    }
    case Op::Exists:
    case Op::Forall: {
        std::vector<std::size_t> inner;
        auto kid = compile(*n.kids[0], phi, s, inner);
        f.first = static_cast<std::uint32_t>(n.vars[0]);
        f.count = kid;
        for (auto v : inner) {
            if (v != n.vars[0]) uses.push_back(v);
        }
        break;
    }
    default: {
        std::vector<std::uint32_t> kids;
        for (const auto& k : n.kids) {
            std::vector<std::size_t> inner;
            kids.push_back(compile(*k, phi, s, inner));
            uses.insert(uses.end(), inner.begin(), inner.end());
        }
        f.first = static_cast<std::uint32_t>(refs_.size());
        f.count = static_cast<std::uint32_t>(kids.size());
        refs_.insert(refs_.end(), kids.begin(), kids.end());
        break;
    }
    }
    std::sort(uses.begin(), uses.end());
    uses.erase(std::unique(uses.begin(), uses.end()), uses.end());
    f.uses_first = static_cast<std::uint32_t>(uses_.size());
    f.uses_count = static_cast<std::uint32_t>(uses.size());
    for (auto u : uses) uses_.push_back(static_cast<std::uint32_t>(u));
    uses_out = std::move(uses);
    nodes_.push_back(f);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

bool Evaluator::ev(std::uint32_t i, Vertex* slots) const {
    const Flat& f = nodes_[i];
    switch (f.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Eq: return slots[refs_[f.first]] == slots[refs_[f.first + 1]];
    case Op::Atom: {
        if (f.count == 1) return index_->contains1(f.symbol, slots[refs_[f.first]]);
        if (f.count == 2) {
            return index_->contains2(f.symbol, slots[refs_[f.first]],
                                     slots[refs_[f.first + 1]]);
        }
        Vertex buf[16];
        std::vector<Vertex> big;
        Vertex* t = buf;
        if (f.count > 16) {
            big.resize(f.count);
            t = big.data();
        }
        for (std::uint32_t k = 0; k < f.count; ++k) t[k] = slots[refs_[f.first + k]];
        return index_->contains(f.symbol, std::span<const Vertex>(t, f.count));
    }
    case Op::Not: return !ev(refs_[f.first], slots);
    case Op::And:
        for (std::uint32_t k = 0; k < f.count; ++k) {
            if (!ev(refs_[f.first + k], slots)) return false;
        }
        return true;
    case Op::Or:
        for (std::uint32_t k = 0; k < f.count; ++k) {
            if (ev(refs_[f.first + k], slots)) return true;
        }
        return false;
    case Op::Implies: return !ev(refs_[f.first], slots) || ev(refs_[f.first + 1], slots);
    case Op::Iff: return ev(refs_[f.first], slots) == ev(refs_[f.first + 1], slots);
    case Op::Exists:
        for (Vertex v = 0; v < n_; ++v) {
            slots[f.first] = v;
            if (ev(f.count, slots)) return true;
        }
        return false;
    case Op::Forall:
        for (Vertex v = 0; v < n_; ++v) {
            slots[f.first] = v;
            if (!ev(f.count, slots)) return false;
        }
        return true;
    }
    return false;
}

Tri Evaluator::pev(std::uint32_t i, Vertex* slots, const char* known) const {
    const Flat& f = nodes_[i];
    auto all_known = [&] {
        for (std::uint32_t k = 0; k < f.uses_count; ++k) {
            if (!known[uses_[f.uses_first + k]]) return false;
        }
        return true;
    };
    auto tri = [](bool b) { return b ? Tri::True : Tri::False; };
    switch (f.op) {
    case Op::True: return Tri::True;
    case Op::False: return Tri::False;
    case Op::Eq:
        if (refs_[f.first] == refs_[f.first + 1]) return Tri::True;
        return all_known() ? tri(ev(i, slots)) : Tri::Unknown;
    case Op::Atom:
    case Op::Exists:
    case Op::Forall:
        return all_known() ? tri(ev(i, slots)) : Tri::Unknown;
    case Op::Not: {
        Tri a = pev(refs_[f.first], slots, known);
        return a == Tri::Unknown ? a : (a == Tri::True ? Tri::False : Tri::True);
    }
    case Op::And: {
        Tri out = Tri::True;
        for (std::uint32_t k = 0; k < f.count; ++k) {
            Tri a = pev(refs_[f.first + k], slots, known);
            if (a == Tri::False) return Tri::False;
            if (a == Tri::Unknown) out = Tri::Unknown;
        }
        return out;
    }
    case Op::Or: {
        Tri out = Tri::False;
        for (std::uint32_t k = 0; k < f.count; ++k) {
            Tri a = pev(refs_[f.first + k], slots, known);
            if (a == Tri::True) return Tri::True;
            if (a == Tri::Unknown) out = Tri::Unknown;
        }
        return out;
    }
    case Op::Implies: {
        Tri a = pev(refs_[f.first], slots, known);
        if (a == Tri::False) return Tri::True;
        Tri b = pev(refs_[f.first + 1], slots, known);
        if (b == Tri::True) return Tri::True;
        if (a == Tri::True && b == Tri::False) return Tri::False;
        return Tri::Unknown;
    }
    case Op::Iff: {
        Tri a = pev(refs_[f.first], slots, known);
        if (a == Tri::Unknown) return a;
        Tri b = pev(refs_[f.first + 1], slots, known);
        if (b == Tri::Unknown) return b;
        return tri(a == b);
    }
    }
    return Tri::Unknown;
}

bool Evaluator::eval(std::span<Vertex> slots) const { return ev(root_, slots.data()); }

Tri Evaluator::partial(std::span<Vertex> slots, std::span<const char> known) const {
    return pev(root_, slots.data(), known.data());
}

bool eval_formula(const Formula& phi, const Structure& s, std::span<const Vertex> free_values) {
    if (free_values.size() != phi.free_count()) {
        throw Error(ErrorCode::MissingAssignment, "expected " + std::to_string(phi.free_count()) +
                                                      " values, got " +
                                                      std::to_string(free_values.size()));
    }
    for (Vertex v : free_values) {
        if (v >= s.domain_size()) {
            throw Error(ErrorCode::InvalidArgument, "assignment outside the domain");
        }
    }
    Evaluator ev(phi, s);
    std::vector<Vertex> slots(phi.var_count(), 0);
    std::copy(free_values.begin(), free_values.end(), slots.begin());
    return ev.eval(slots);
}

bool eval_formula(const Formula& phi, const Structure& s,
                  const std::map<std::string, Vertex>& assignment) {
    std::vector<Vertex> values;
    for (const auto& name : phi.free_vars()) {
        auto it = assignment.find(name);
        if (it == assignment.end()) {
            throw Error(ErrorCode::MissingAssignment, "no value for free variable '" + name + "'");
        }
        values.push_back(it->second);
    }
    return eval_formula(phi, s, values);
}

namespace {

struct Budget {
    std::uint64_t left;
    void spend() {
        if (left == 0) {
            throw Error(ErrorCode::BudgetExceeded, "assignment budget exhausted");
        }
        --left;
    }
};

BigInt power(std::size_t base, std::size_t exp) {
    BigInt r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace

BigInt count_satisfying(const Evaluator& ev, const EvalOptions& options) {
    const std::size_t f = ev.free_count();
    const std::size_t n = ev.domain_size();
    std::vector<Vertex> slots(ev.var_count(), 0);
    std::vector<char> known(ev.var_count(), 0);
    Budget budget{options.budget};
    if (f == 0) {
        budget.spend();
        return ev.eval(slots) ? 1 : 0;
    }
    BigInt total = 0;
    std::uint64_t small = 0;
    // Iterative depth-first search over free slots.
    std::vector<Vertex> next(f, 0);
    std::size_t depth = 0;
    while (true) {
        if (next[depth] >= n) {
            known[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        slots[depth] = next[depth]++;
        known[depth] = 1;
        budget.spend();
        if (depth + 1 == f) {
            if (ev.eval(slots)) ++small;
            continue;
        }
        Tri t = ev.partial(slots, known);
        if (t == Tri::False) continue;
        if (t == Tri::True) {
            total += power(n, f - depth - 1);
            continue;
        }
        ++depth;
        next[depth] = 0;
    }
    return total + small;
}

BigInt count_satisfying(const Formula& phi, const Structure& s, const EvalOptions& options) {
    Evaluator ev(phi, s);
    return count_satisfying(ev, options);
}

void for_each_satisfying(const Evaluator& ev,
                         const std::function<void(std::span<const Vertex>)>& visit,
                         const EvalOptions& options) {
    const std::size_t f = ev.free_count();
    const std::size_t n = ev.domain_size();
    std::vector<Vertex> slots(ev.var_count(), 0);
    std::vector<char> known(ev.var_count(), 0);
    Budget budget{options.budget};
    if (f == 0) {
        budget.spend();
        if (ev.eval(slots)) visit({});
        return;
    }
    std::vector<Vertex> next(f, 0);
    std::vector<char> decided(f, 0);
    std::size_t depth = 0;
    while (true) {
        if (next[depth] >= n) {
            known[depth] = 0;
            decided[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        slots[depth] = next[depth]++;
        known[depth] = 1;
        budget.spend();
        const bool settled = depth > 0 && decided[depth - 1];
        if (depth + 1 == f) {
            if (settled || ev.eval(slots)) visit(std::span<const Vertex>(slots.data(), f));
            continue;
        }
        if (!settled) {
            Tri t = ev.partial(slots, known);
            if (t == Tri::False) continue;
            decided[depth] = t == Tri::True;
        } else {
            decided[depth] = 1;
        }
        ++depth;
        next[depth] = 0;
    }
}

void for_each_satisfying(const Formula& phi, const Structure& s,
                         const std::function<void(std::span<const Vertex>)>& visit,
                         const EvalOptions& options) {
    Evaluator ev(phi, s);
    for_each_satisfying(ev, visit, options);
}

void for_each_block_assignment(const Evaluator& ev, const std::vector<Tuple>& candidates,
                               std::size_t blocks,
                               const std::function<void(std::span<const std::uint32_t>)>& visit,
                               const EvalOptions& options) {
    if (candidates.empty()) {
        if (blocks == 0) {
            std::vector<Vertex> slots(ev.var_count(), 0);
            if (ev.eval(slots)) visit({});
        }
        return;
    }
    const std::size_t p = candidates.front().size();
    if (p * blocks != ev.free_count()) {
        throw Error(ErrorCode::InvalidArgument, "block layout does not match free variables");
    }
    std::vector<Vertex> slots(ev.var_count(), 0);
    std::vector<char> known(ev.var_count(), 0);
    Budget budget{options.budget};
    if (blocks == 0) {
        budget.spend();
        if (ev.eval(slots)) visit({});
        return;
    }
    const auto m = static_cast<std::uint32_t>(candidates.size());
    std::vector<std::uint32_t> chosen(blocks, 0);
    std::vector<std::uint32_t> next(blocks, 0);
    std::vector<char> decided(blocks, 0);
    std::size_t depth = 0;
    while (true) {
        if (next[depth] >= m) {
            for (std::size_t j = 0; j < p; ++j) known[depth * p + j] = 0;
            decided[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        chosen[depth] = next[depth]++;
        const auto& t = candidates[chosen[depth]];
        for (std::size_t j = 0; j < p; ++j) {
            slots[depth * p + j] = t[j];
            known[depth * p + j] = 1;
        }
        budget.spend();
        const bool settled = depth > 0 && decided[depth - 1];
        if (depth + 1 == blocks) {
            if (settled || ev.eval(slots)) visit(chosen);
            continue;
        }
        if (!settled) {
            Tri r = ev.partial(slots, known);
            if (r == Tri::False) continue;
            decided[depth] = r == Tri::True;
        } else {
            decided[depth] = 1;
        }
        ++depth;
        next[depth] = 0;
    }
}

} // namespace polyseq
