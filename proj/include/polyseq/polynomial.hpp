#pragma once

#include "polyseq/bigint.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyseq {

// Integer-valued polynomial stored as sum of c_k * C(n, k).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> binomial_coeffs);

    static IntPolynomial constant(const BigInt& c);
    static IntPolynomial variable();                  // n
    static IntPolynomial binomial(std::size_t k);     // C(n, k)
    // Newton forward differences of values at n = 0, 1, ..., size-1.
    static IntPolynomial from_values(std::span<const BigInt> values);

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    BigInt operator()(const BigInt& n) const;
    BigInt operator()(long long n) const { return (*this)(BigInt(n)); }

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const BigInt& c) const;
    // (*this)(inner(n)); inner must be integer-valued, which it is by type.
    IntPolynomial compose(const IntPolynomial& inner) const;
    // Throws InvalidArgument unless every coefficient is divisible by d.
    IntPolynomial divide_exact(const BigInt& d) const;
    IntPolynomial pow(unsigned e) const;
    // Sum_{i=1}^{n} P(i).
    IntPolynomial prefix_sum() const;

    bool operator==(const IntPolynomial&) const = default;

    // "2*C(n,2) + C(n,1)"; parse_polynomial reads it back.
    std::string to_string() const;
    // Ordinary-basis rendering with rational coefficients, e.g. "n^2 - n".
    std::string to_monomial_string() const;
    std::vector<Rational> monomial_coeffs() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

// Expressions in n: integers, n, + - * ^, parentheses, C(expr, k) or
// binom(expr, k) with a literal k, and exact division by an integer.
IntPolynomial parse_polynomial(std::string_view text);

// Samples (n, value) at consecutive n = 0, 1, ...; throws InvalidArgument otherwise.
IntPolynomial interpolate(std::span<const std::pair<long long, BigInt>> samples);

} // namespace polyseq
