#include "polyseq/sequence.hpp"

#include "polyseq/error.hpp"
#include "polyseq/graphs.hpp"
#include "polyseq/ordered_sum.hpp"

#include <algorithm>

namespace polyseq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

SpecPtr wrap(decltype(SequenceSpec::node) node) {
    return std::make_shared<const SequenceSpec>(SequenceSpec{std::move(node)});
}

void require(const SpecPtr& p, const char* what) {
    if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": missing inner sequence");
}

// Value at n as a non-negative machine integer.
long long evaluate_index(const IntPolynomial& p, long long n, const char* what) {
    BigInt v = p(n);
    if (v < 0) {
        throw Error(ErrorCode::NegativeValue, std::string(what) + " " + p.to_string() + " is " +
                                                  v.str() + " at n = " + std::to_string(n));
    }
    if (v > BigInt(1'000'000'000)) {
        throw Error(ErrorCode::BudgetExceeded, std::string(what) + " " + p.to_string() + " is " +
                                                   v.str() + " at n = " + std::to_string(n));
    }
    return static_cast<long long>(v);
}

const std::vector<std::string> kCustom = {"constant", "complete", "empty", "cycle", "path", "tournament"};

bool has_symbols(const Signature& super, const Signature& sub) {
    for (const auto& s : sub.symbols()) {
        auto i = super.find(s.name);
        if (!i || super[*i].arity != s.arity) return false;
    }
    return true;
}

} // namespace

SpecPtr make_basic(std::size_t k, std::size_t l, std::vector<IntPolynomial> orders) {
    if (orders.size() != k) {
        throw Error(ErrorCode::InvalidArgument, "basic sequence: expected " + std::to_string(k) +
                                                    " order polynomials, got " + std::to_string(orders.size()));
    }
    for (const auto& q : orders) {
        if (q.is_constant()) {
            throw Error(ErrorCode::InvalidArgument,
                        "basic sequence: order polynomial " + q.to_string() + " is constant");
        }
    }
    return wrap(BasicSpec{k, l, std::move(orders)});
}

SpecPtr make_ordered_sum(SpecPtr inner, IntPolynomial length) {
    require(inner, "ordered sum");
    return wrap(OrderedSumSpec{std::move(inner), std::move(length)});
}

SpecPtr make_interpreted(Scheme scheme, SpecPtr inner, std::optional<SchemeOrigin> origin) {
    require(inner, "interpreted sequence");
    const Signature sig = spec_signature(*inner);
    if (!has_symbols(sig, scheme_source(scheme))) {
        throw Error(ErrorCode::SignatureMismatch, "scheme '" + scheme_name(scheme) +
                                                      "' does not read the inner sequence's signature");
    }
    return wrap(InterpretedSpec{std::move(scheme), std::move(inner), std::move(origin)});
}

SpecPtr make_builtin_interpreted(const std::string& name, const SchemeParams& params, SpecPtr inner) {
    return make_interpreted(builtin_scheme(name, params), std::move(inner), SchemeOrigin{name, params});
}

SpecPtr make_strong_sum(std::vector<SpecPtr> parts) {
    for (const auto& p : parts) require(p, "strong sum");
    return wrap(StrongSumSpec{std::move(parts)});
}

SpecPtr make_copies(IntPolynomial m, SpecPtr inner) {
    require(inner, "copies");
    return wrap(CopiesSpec{std::move(m), std::move(inner)});
}

SpecPtr make_reindexed(IntPolynomial P, SpecPtr inner) {
    require(inner, "reindexed sequence");
    return wrap(ReindexedSpec{std::move(P), std::move(inner)});
}

SpecPtr make_custom(const std::string& name) {
    if (name == "constant") throw Error(ErrorCode::InvalidArgument, "constant sequences need a structure");
    if (std::find(kCustom.begin(), kCustom.end(), name) == kCustom.end()) {
        throw Error(ErrorCode::UnknownEntry, "unknown custom sequence '" + name + "'");
    }
    return wrap(CustomSpec{name, std::nullopt});
}

SpecPtr make_constant(Structure s) { return wrap(CustomSpec{"constant", std::move(s)}); }

SpecPtr make_mark(SpecPtr inner, const std::string& mark) {
    require(inner, "mark");
    const Signature sig = spec_signature(*inner);
    return make_interpreted(mark_scheme(sig, mark), std::move(inner), SchemeOrigin{"mark", {{"name", mark}}});
}

std::vector<std::string> custom_generator_names() { return kCustom; }

Signature spec_signature(const SequenceSpec& spec) {
    return std::visit(
        overloaded{
            [](const BasicSpec& b) { return basic_signature(b.k, b.l); },
            [](const OrderedSumSpec& o) { return ordered_sum_signature(spec_signature(*o.inner)); },
            [](const InterpretedSpec& i) { return scheme_target(i.scheme); },
            [](const StrongSumSpec& s) {
                Signature sig;
                for (const auto& p : s.parts) sig = strong_sum_signature(sig, spec_signature(*p));
                return sig;
            },
            [](const CopiesSpec& c) { return spec_signature(*c.inner); },
            [](const ReindexedSpec& r) { return spec_signature(*r.inner); },
            [](const CustomSpec& c) {
                if (c.structure) return c.structure->signature();
                if (c.name == "tournament") return Signature{{"S", 2}, {"U", 1}};
                return Signature::graph();
            },
        },
        spec.node);
}

bool spec_has_quotient(const SequenceSpec& spec) {
    return std::visit(
        overloaded{
            [](const BasicSpec&) { return false; },
            [](const OrderedSumSpec& o) { return spec_has_quotient(*o.inner); },
            [](const InterpretedSpec& i) {
                return std::holds_alternative<QuotientScheme>(i.scheme) || spec_has_quotient(*i.inner);
            },
            [](const StrongSumSpec& s) {
                return std::any_of(s.parts.begin(), s.parts.end(),
                                   [](const SpecPtr& p) { return spec_has_quotient(*p); });
            },
            [](const CopiesSpec& c) { return spec_has_quotient(*c.inner); },
            [](const ReindexedSpec& r) { return spec_has_quotient(*r.inner); },
            [](const CustomSpec&) { return false; },
        },
        spec.node);
}

std::size_t spec_degree(const SequenceSpec& spec) {
    auto deg = [](const IntPolynomial& p) { return static_cast<std::size_t>(std::max(p.degree(), 0)); };
    return std::visit(
        overloaded{
            [&](const BasicSpec& b) {
                std::size_t d = 0;
                for (const auto& q : b.orders) d = std::max(d, deg(q));
                return d;
            },
            [&](const OrderedSumSpec& o) { return (spec_degree(*o.inner) + 1) * deg(o.length); },
            [&](const InterpretedSpec& i) {
                std::size_t d = scheme_exponent(i.scheme) * spec_degree(*i.inner);
                if (const auto* q = std::get_if<QuotientScheme>(&i.scheme)) {
                    std::size_t c = 1;
                    for (const auto& cert : q->certificates) c = std::max(c, deg(cert.size));
                    d *= c;
                }
                return d;
            },
            [&](const StrongSumSpec& s) {
                std::size_t d = 0;
                for (const auto& p : s.parts) d = std::max(d, spec_degree(*p));
                return d;
            },
            [&](const CopiesSpec& c) { return deg(c.m) + spec_degree(*c.inner); },
            [&](const ReindexedSpec& r) { return spec_degree(*r.inner) * deg(r.P); },
            [&](const CustomSpec& c) -> std::size_t { return c.name == "constant" ? 0 : 1; },
        },
        spec.node);
}

std::string spec_summary(const SequenceSpec& spec) {
    return std::visit(
        overloaded{
            [](const BasicSpec& b) {
                std::string s = "basic(k=" + std::to_string(b.k) + ",l=" + std::to_string(b.l);
                for (const auto& q : b.orders) s += "," + q.to_monomial_string();
                return s + ")";
            },
            [](const OrderedSumSpec& o) {
                return "orderedSum(" + spec_summary(*o.inner) + "," + o.length.to_monomial_string() + ")";
            },
            [](const InterpretedSpec& i) {
                return "interpreted(" + scheme_name(i.scheme) + "," + spec_summary(*i.inner) + ")";
            },
            [](const StrongSumSpec& s) {
                std::string out = "strongSum(";
                for (std::size_t j = 0; j < s.parts.size(); ++j) out += (j ? "," : "") + spec_summary(*s.parts[j]);
                return out + ")";
            },
            [](const CopiesSpec& c) {
                return "copies(" + c.m.to_monomial_string() + "," + spec_summary(*c.inner) + ")";
            },
            [](const ReindexedSpec& r) {
                return "reindexed(" + r.P.to_monomial_string() + "," + spec_summary(*r.inner) + ")";
            },
            [](const CustomSpec& c) { return c.name; },
        },
        spec.node);
}

Structure generate_term(const SequenceSpec& spec, long long n, const GenerateOptions& options) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "generate_term: negative index");
    return std::visit(
        overloaded{
            [&](const BasicSpec& b) {
                BasicStructureSpec s{b.k, b.l, {}};
                for (const auto& q : b.orders) {
                    s.orders.push_back(static_cast<std::size_t>(evaluate_index(q, n, "order polynomial")));
                }
                return build_basic(s);
            },
            [&](const OrderedSumSpec& o) {
                const long long len = evaluate_index(o.length, n, "ordered-sum length");
                std::vector<Structure> blocks;
                for (long long i = 1; i <= len; ++i) blocks.push_back(generate_term(*o.inner, i, options));
                return ordered_sum(spec_signature(*o.inner), blocks);
            },
            [&](const InterpretedSpec& i) {
                Structure inner = generate_term(*i.inner, n, options);
                ApplyOptions apply = options.apply;
                apply.index = n;
                return apply_scheme(i.scheme, inner, apply).structure;
            },
            [&](const StrongSumSpec& s) {
                Structure out(Signature(), 0);
                for (const auto& p : s.parts) out = strong_sum(out, generate_term(*p, n, options));
                return out;
            },
            [&](const CopiesSpec& c) {
                const long long m = evaluate_index(c.m, n, "copy count");
                return disjoint_copies(generate_term(*c.inner, n, options), static_cast<std::size_t>(m));
            },
            [&](const ReindexedSpec& r) {
                return generate_term(*r.inner, evaluate_index(r.P, n, "reindexing polynomial"), options);
            },
            [&](const CustomSpec& c) {
                const auto size = static_cast<std::size_t>(n);
                if (c.name == "constant") return *c.structure;
                if (c.name == "complete") return complete_graph(size);
                if (c.name == "empty") return empty_graph(size);
                if (c.name == "cycle") return cycle_graph(size);
                if (c.name == "path") return path_graph(size);
                return build_transitive_tournament(size);
            },
        },
        spec.node);
}

SpecPtr product_sequences(ProductKind kind, SpecPtr a, SpecPtr b) {
    require(a, "product");
    require(b, "product");
    for (const auto* s : {&a, &b}) {
        if (spec_signature(**s) != Signature::graph()) {
            throw Error(ErrorCode::InvalidArgument, std::string("product '") + product_name(kind) +
                                                        "' needs graph sequences, got " + spec_summary(**s));
        }
    }
    auto source = make_strong_sum({make_mark(std::move(a), "U"), make_mark(std::move(b), "U")});
    return make_interpreted(product_scheme(kind), std::move(source),
                            SchemeOrigin{"product", {{"kind", product_name(kind)}}});
}

} // namespace polyseq
