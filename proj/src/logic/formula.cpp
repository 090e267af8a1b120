#include "polyseq/formula.hpp"

#include "polyseq/error.hpp"

#include <sstream>

namespace polyseq {

namespace {

NodePtr leaf(Op op) {
    auto n = std::make_shared<Node>();
    n->op = op;
    return n;
}

} // namespace

NodePtr make_true() {
    static const NodePtr t = leaf(Op::True);
    return t;
}

NodePtr make_false() {
    static const NodePtr f = leaf(Op::False);
    return f;
}

NodePtr make_eq(std::size_t a, std::size_t b) {
    auto n = std::make_shared<Node>();
    n->op = Op::Eq;
    n->vars = {a, b};
    return n;
}

NodePtr make_atom(std::size_t symbol, std::vector<std::size_t> vars) {
    auto n = std::make_shared<Node>();
    n->op = Op::Atom;
    n->symbol = symbol;
    n->vars = std::move(vars);
    return n;
}

NodePtr make_not(NodePtr a) {
    auto n = std::make_shared<Node>();
    n->op = Op::Not;
    n->kids = {std::move(a)};
    return n;
}

NodePtr make_and(std::vector<NodePtr> kids) {
    if (kids.empty()) return make_true();
    if (kids.size() == 1) return kids.front();
    auto n = std::make_shared<Node>();
    n->op = Op::And;
    n->kids = std::move(kids);
    return n;
}

NodePtr make_or(std::vector<NodePtr> kids) {
    if (kids.empty()) return make_false();
    if (kids.size() == 1) return kids.front();
    auto n = std::make_shared<Node>();
    n->op = Op::Or;
    n->kids = std::move(kids);
    return n;
}

NodePtr make_implies(NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->op = Op::Implies;
    n->kids = {std::move(a), std::move(b)};
    return n;
}

NodePtr make_iff(NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->op = Op::Iff;
    n->kids = {std::move(a), std::move(b)};
    return n;
}

NodePtr make_exists(std::size_t slot, NodePtr body) {
    auto n = std::make_shared<Node>();
    n->op = Op::Exists;
    n->vars = {slot};
    n->kids = {std::move(body)};
    return n;
}

NodePtr make_forall(std::size_t slot, NodePtr body) {
    auto n = std::make_shared<Node>();
    n->op = Op::Forall;
    n->vars = {slot};
    n->kids = {std::move(body)};
    return n;
}

bool node_quantifier_free(const Node& n) {
    if (n.op == Op::Exists || n.op == Op::Forall) return false;
    for (const auto& k : n.kids) {
        if (!node_quantifier_free(*k)) return false;
    }
    return true;
}

namespace {

void check_node(const Node& n, const Signature& sig, std::size_t var_count) {
    for (auto v : n.vars) {
        if (v >= var_count) {
            throw Error(ErrorCode::InvalidArgument, "formula refers to an unknown variable slot");
        }
    }
    if (n.op == Op::Atom) {
        if (n.symbol >= sig.size()) {
            throw Error(ErrorCode::UnknownSymbol, "formula refers to an unknown symbol");
        }
        if (n.vars.size() != static_cast<std::size_t>(sig[n.symbol].arity)) {
            throw Error(ErrorCode::ArityMismatch,
                        "symbol '" + sig[n.symbol].name + "' expects " +
                            std::to_string(sig[n.symbol].arity) + " arguments, got " +
                            std::to_string(n.vars.size()));
        }
    }
    for (const auto& k : n.kids) check_node(*k, sig, var_count);
}

} // namespace

Formula::Formula(Signature signature, std::vector<std::string> var_names, std::size_t free_count,
                 NodePtr root)
    : signature_(std::move(signature)), var_names_(std::move(var_names)),
      free_count_(free_count), root_(std::move(root)) {
    if (free_count_ > var_names_.size()) {
        throw Error(ErrorCode::InvalidArgument, "free count exceeds variable count");
    }
    check_node(*root_, signature_, var_names_.size());
    quantifier_free_ = node_quantifier_free(*root_);
}

std::vector<std::string> Formula::free_vars() const {
    return {var_names_.begin(), var_names_.begin() + static_cast<std::ptrdiff_t>(free_count_)};
}

namespace {

void print(std::ostream& out, const Node& n, const Formula& f) {
    const auto& names = f.var_names();
    auto binary = [&](const char* op) {
        out << '(';
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            if (i) out << ' ' << op << ' ';
            print(out, *n.kids[i], f);
        }
        out << ')';
    };
    switch (n.op) {
    case Op::True: out << "true"; break;
    case Op::False: out << "false"; break;
    case Op::Eq: out << names[n.vars[0]] << " = " << names[n.vars[1]]; break;
    case Op::Atom:
        out << f.signature()[n.symbol].name << '(';
        for (std::size_t i = 0; i < n.vars.size(); ++i) {
            if (i) out << ',';
            out << names[n.vars[i]];
        }
        out << ')';
        break;
    case Op::Not:
        out << '!';
        if (n.kids[0]->op == Op::Eq) {
            out << '(';
            print(out, *n.kids[0], f);
            out << ')';
        } else {
            print(out, *n.kids[0], f);
        }
        break;
    case Op::And: binary("&"); break;
    case Op::Or: binary("|"); break;
    case Op::Implies: binary("->"); break;
    case Op::Iff: binary("<->"); break;
    case Op::Exists:
    case Op::Forall:
        out << (n.op == Op::Exists ? "exists " : "forall ") << names[n.vars[0]] << " (";
        print(out, *n.kids[0], f);
        out << ')';
        break;
    }
}

NodePtr copy_node(const Node& n, std::vector<std::size_t>& slot_map,
                  std::vector<std::string>& names, const std::vector<std::string>& src_names,
                  const std::vector<std::size_t>& symbol_map) {
    auto out = std::make_shared<Node>();
    out->op = n.op;
    out->symbol = symbol_map.empty() ? n.symbol : symbol_map[n.symbol];
    if (n.op == Op::Exists || n.op == Op::Forall) {
        const std::size_t fresh = names.size();
        names.push_back(src_names[n.vars[0]] + "_" + std::to_string(fresh));
        const auto saved = slot_map[n.vars[0]];
        slot_map[n.vars[0]] = fresh;
        out->vars = {fresh};
        out->kids = {copy_node(*n.kids[0], slot_map, names, src_names, symbol_map)};
        slot_map[n.vars[0]] = saved;
        return out;
    }
    out->vars.reserve(n.vars.size());
    for (auto v : n.vars) out->vars.push_back(slot_map[v]);
    out->kids.reserve(n.kids.size());
    for (const auto& k : n.kids) {
        out->kids.push_back(copy_node(*k, slot_map, names, src_names, symbol_map));
    }
    return out;
}

} // namespace

std::string Formula::to_string() const {
    std::ostringstream out;
    print(out, *root_, *this);
    return out.str();
}

NodePtr instantiate(const Formula& f, const std::vector<std::size_t>& free_map,
                    std::vector<std::string>& names,
                    const std::vector<std::size_t>& symbol_map) {
    if (free_map.size() != f.free_count()) {
        throw Error(ErrorCode::InvalidArgument, "instantiate: expected " +
                                                    std::to_string(f.free_count()) +
                                                    " variables, got " +
                                                    std::to_string(free_map.size()));
    }
    std::vector<std::size_t> slot_map(f.var_count(), 0);
    for (std::size_t i = 0; i < free_map.size(); ++i) slot_map[i] = free_map[i];
    return copy_node(*f.root(), slot_map, names, f.var_names(), symbol_map);
}

Formula rebind(const Formula& f, const Signature& target, const std::vector<std::string>& rename) {
    std::vector<std::size_t> symbol_map(f.signature().size());
    for (std::size_t i = 0; i < f.signature().size(); ++i) {
        const auto& name = rename.empty() ? f.signature()[i].name : rename[i];
        auto idx = target.find(name);
        if (!idx) throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + name + "'");
        if (target[*idx].arity != f.signature()[i].arity) {
            throw Error(ErrorCode::ArityMismatch, "symbol '" + name + "' has arity " +
                                                      std::to_string(target[*idx].arity) +
                                                      " in the target signature");
        }
        symbol_map[i] = *idx;
    }
    std::vector<std::string> names = f.free_vars();
    std::vector<std::size_t> free_map(f.free_count());
    for (std::size_t i = 0; i < free_map.size(); ++i) free_map[i] = i;
    auto root = instantiate(f, free_map, names, symbol_map);
    return Formula(target, std::move(names), f.free_count(), std::move(root));
}

} // namespace polyseq
