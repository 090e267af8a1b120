#include "polyseq/decompose.hpp"

#include "polyseq/canonical.hpp"
#include "polyseq/counting.hpp"
#include "polyseq/error.hpp"
#include "polyseq/graphs.hpp"

#include <map>

namespace polyseq {

namespace {

struct Census {
    std::map<std::string, std::size_t> counts;
    std::map<std::string, Structure> examples;
};

Census census(const Structure& s) {
    Census c;
    for (const auto& comp : connected_components(s)) {
        Structure part = induced(s, comp);
        auto key = canonical_form(part, {std::max<std::size_t>(12, part.domain_size())});
        ++c.counts[key];
        c.examples.emplace(key, std::move(part));
    }
    return c;
}

void check_degree(const Structure& s, long long n, std::size_t cap) {
    const auto deg = max_degree(s);
    if (deg > cap) {
        throw Error(ErrorCode::UnboundedDegree, "maximum degree " + std::to_string(deg) + " at n = " +
                                                    std::to_string(n) + " exceeds the cap " + std::to_string(cap));
    }
}

} // namespace

Decomposition bounded_decompose(SpecPtr spec, const DecomposeOptions& options) {
    if (!spec) throw Error(ErrorCode::InvalidArgument, "bounded_decompose: missing sequence");
    // Every term up to the last held-out index is checked for degree before
    // any census comparison, so growing degrees surface as UnboundedDegree.
    std::vector<Structure> terms;
    auto term = [&](long long n) -> const Structure& {
        while (static_cast<long long>(terms.size()) <= n) {
            terms.push_back(generate_term(*spec, static_cast<long long>(terms.size()), options.generate));
            check_degree(terms.back(), static_cast<long long>(terms.size()) - 1, options.degree_cap);
        }
        return terms[static_cast<std::size_t>(n)];
    };

    // |A_n| has degree at most spec_degree; interpolate and read off d.
    const auto bound = static_cast<long long>(spec_degree(*spec));
    std::vector<std::pair<long long, BigInt>> sizes;
    for (long long n = 0; n <= bound; ++n) sizes.emplace_back(n, BigInt(term(n).domain_size()));
    Decomposition out;
    out.size = interpolate(sizes);
    const long long d = std::max(out.size.degree(), 0);
    if (static_cast<std::size_t>(d) > options.max_size_degree) {
        throw Error(ErrorCode::CapExceeded, "size polynomial has degree " + std::to_string(d) +
                                                ", above the limit " + std::to_string(options.max_size_degree));
    }
    const long long last = d + 1 + static_cast<long long>(options.held_out);
    // A degree that grows by one per step passes the cap by n = cap + 2.
    const long long sweep = std::max(last, static_cast<long long>(options.degree_cap) + 2);
    for (long long n = 0; n <= sweep; ++n) term(n);

    std::vector<Census> censuses;
    std::map<std::string, Structure> components;
    for (long long n = 0; n <= d + 1; ++n) {
        censuses.push_back(census(term(n)));
        components.insert(censuses.back().examples.begin(), censuses.back().examples.end());
        out.samples.push_back(n);
    }
    for (auto& [key, comp] : components) {
        std::vector<std::pair<long long, BigInt>> mult;
        for (long long n = 0; n <= d + 1; ++n) {
            auto it = censuses[static_cast<std::size_t>(n)].counts.find(key);
            mult.emplace_back(n, BigInt(it == censuses[static_cast<std::size_t>(n)].counts.end() ? 0 : it->second));
        }
        out.parts.push_back({comp, interpolate(mult), key});
    }
    // Smaller components first; ties keep key order.
    std::stable_sort(out.parts.begin(), out.parts.end(), [](const auto& a, const auto& b) {
        return a.component.domain_size() < b.component.domain_size();
    });

    for (long long n = d + 2; n <= last; ++n) {
        const auto c = census(term(n));
        for (const auto& [key, count] : c.counts) {
            bool known = false;
            for (const auto& p : out.parts) known = known || p.key == key;
            if (!known) {
                throw Error(ErrorCode::VerificationFailed,
                            "a component on " + std::to_string(c.examples.at(key).domain_size()) +
                                " vertices appears first at n = " + std::to_string(n));
            }
        }
        for (const auto& p : out.parts) {
            auto it = c.counts.find(p.key);
            const BigInt seen = it == c.counts.end() ? 0 : it->second;
            if (seen != p.multiplicity(n)) {
                throw Error(ErrorCode::VerificationFailed,
                            "multiplicity of a component on " + std::to_string(p.component.domain_size()) +
                                " vertices is " + seen.str() + " at n = " + std::to_string(n) + ", predicted " +
                                p.multiplicity(n).str());
            }
        }
        out.verified.push_back(n);
    }
    return out;
}

Structure reassemble(const Decomposition& d, long long n) {
    std::optional<Structure> out;
    for (const auto& p : d.parts) {
        BigInt m = p.multiplicity(n);
        if (m < 0) throw Error(ErrorCode::NegativeValue, "negative multiplicity at n = " + std::to_string(n));
        Structure copies = disjoint_copies(p.component, static_cast<std::size_t>(m));
        out = out ? disjoint_union(*out, copies) : copies;
    }
    if (!out) return Structure(Signature::graph(), 0);
    return *out;
}

} // namespace polyseq
