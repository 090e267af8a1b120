#pragma once

#include "polyseq/structure.hpp"

#include <memory>
#include <string>
#include <vector>

namespace polyseq {

enum class Op { True, False, Eq, Atom, Not, And, Or, Implies, Iff, Exists, Forall };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Variables are dense slots. Atom/Eq: `vars` are the argument slots.
// Exists/Forall: vars[0] is the bound slot, kids[0] the body.
struct Node {
    Op op = Op::True;
    std::size_t symbol = 0;
    std::vector<std::size_t> vars;
    std::vector<NodePtr> kids;
};

NodePtr make_true();
NodePtr make_false();
NodePtr make_eq(std::size_t a, std::size_t b);
NodePtr make_atom(std::size_t symbol, std::vector<std::size_t> vars);
NodePtr make_not(NodePtr a);
// n-ary; empty And is true, empty Or is false, singletons collapse.
NodePtr make_and(std::vector<NodePtr> kids);
NodePtr make_or(std::vector<NodePtr> kids);
NodePtr make_implies(NodePtr a, NodePtr b);
NodePtr make_iff(NodePtr a, NodePtr b);
NodePtr make_exists(std::size_t slot, NodePtr body);
NodePtr make_forall(std::size_t slot, NodePtr body);

bool node_quantifier_free(const Node& n);

// A bound formula. Slots 0..free_count-1 are the free variables in order;
// every quantifier binds its own slot >= free_count.
class Formula {
public:
    Formula() = default;
    Formula(Signature signature, std::vector<std::string> var_names, std::size_t free_count,
            NodePtr root);

    const Signature& signature() const { return signature_; }
    const std::vector<std::string>& var_names() const { return var_names_; }
    std::size_t free_count() const { return free_count_; }
    std::size_t var_count() const { return var_names_.size(); }
    std::vector<std::string> free_vars() const;
    const NodePtr& root() const { return root_; }
    bool quantifier_free() const { return quantifier_free_; }

    // Parseable text; binary connectives fully parenthesized.
    std::string to_string() const;

private:
    Signature signature_;
    std::vector<std::string> var_names_;
    std::size_t free_count_ = 0;
    NodePtr root_ = make_true();
    bool quantifier_free_ = true;
};

// Copies `f`'s tree into a larger formula: free slot i becomes free_map[i];
// bound slots get fresh slots appended to `names` (suffix keeps them unique).
// Symbol indices are remapped through `symbol_map` when non-empty.
NodePtr instantiate(const Formula& f, const std::vector<std::size_t>& free_map,
                    std::vector<std::string>& names,
                    const std::vector<std::size_t>& symbol_map = {});

// Same formula over another signature; symbols matched by name (or through
// `rename`, indexed by the old symbol position). Throws UnknownSymbol.
Formula rebind(const Formula& f, const Signature& target,
               const std::vector<std::string>& rename = {});

} // namespace polyseq
