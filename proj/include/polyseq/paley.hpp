#pragma once

#include "polyseq/bigint.hpp"
#include "polyseq/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyseq {

bool is_prime(long long q);
// Vertices Z_q, x ~ y iff x - y is a nonzero square. Needs q prime, q = 1 mod 4.
Structure paley_graph(long long q);

struct PaleyRow {
    long long q = 0;
    bool sample = false;  // used for the fit, otherwise held out
    BigInt hom;
    BigInt images;        // distinct homomorphic images (vertex set, edge set)
    std::optional<Rational> predicted_hom, predicted_images;
    bool hom_match = true, images_match = true;
};

// Polynomial in q through the sample points, monomial coefficients c_0..c_d.
struct RationalFit {
    std::vector<Rational> coeffs;
    Rational operator()(long long q) const;
    std::string to_string() const;
};

struct PaleyReport {
    std::vector<PaleyRow> rows;
    RationalFit hom_fit, images_fit;
    bool hom_verified = false;     // every held-out hom count matches
    bool images_verified = false;
    std::string note;
};

// Fits hom(F, Paley_q) and the number of homomorphic images on the first
// `sample_count` primes (default: all but the last) and checks the rest.
PaleyReport paley_experiment(const Structure& pattern, const std::vector<long long>& primes,
                             std::optional<std::size_t> sample_count = {});

} // namespace polyseq
