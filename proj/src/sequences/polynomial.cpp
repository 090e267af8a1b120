#include "polyseq/polynomial.hpp"

#include "polyseq/error.hpp"

#include <cctype>
#include <sstream>

namespace polyseq {

namespace {

BigInt binom(const BigInt& n, std::size_t k) {
    // n(n-1)...(n-k+1)/k!, valid for negative n too.
    BigInt num = 1;
    for (std::size_t i = 0; i < k; ++i) num *= (n - BigInt(i));
    BigInt den = 1;
    for (std::size_t i = 2; i <= k; ++i) den *= BigInt(i);
    return num / den;
}

} // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> binomial_coeffs) : coeffs_(std::move(binomial_coeffs)) {
    trim();
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial({c}); }
IntPolynomial IntPolynomial::variable() { return IntPolynomial({0, 1}); }

IntPolynomial IntPolynomial::binomial(std::size_t k) {
    std::vector<BigInt> c(k + 1, 0);
    c[k] = 1;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::from_values(std::span<const BigInt> values) {
    std::vector<BigInt> diff(values.begin(), values.end());
    std::vector<BigInt> out;
    out.reserve(diff.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        out.push_back(diff[0]);
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }
    return IntPolynomial(std::move(out));
}

BigInt IntPolynomial::operator()(const BigInt& n) const {
    BigInt total = 0;
    if (n >= 0 && n < BigInt(coeffs_.size())) {
        // C(n, k) = 0 for k > n; cheap path for small arguments.
        const auto top = static_cast<std::size_t>(n);
        for (std::size_t k = 0; k <= top; ++k) total += coeffs_[k] * binom(n, k);
        return total;
    }
    BigInt b = 1;  // C(n, k), updated incrementally
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k > 0) b = b * (n - BigInt(k - 1)) / BigInt(k);
        total += coeffs_[k] * b;
    }
    return total;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<BigInt> c(coeffs_);
    for (auto& x : c) x = -x;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator*(const BigInt& c) const {
    std::vector<BigInt> out(coeffs_);
    for (auto& x : out) x *= c;
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    const std::size_t count = coeffs_.size() + o.coeffs_.size() - 1;
    std::vector<BigInt> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = (*this)(BigInt(i)) * o(BigInt(i));
    return from_values(v);
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& inner) const {
    if (is_constant()) return *this;
    const std::size_t d = static_cast<std::size_t>(degree()) *
                          static_cast<std::size_t>(std::max(inner.degree(), 0));
    std::vector<BigInt> v(d + 1);
    for (std::size_t i = 0; i <= d; ++i) v[i] = (*this)(inner(BigInt(i)));
    return from_values(v);
}

IntPolynomial IntPolynomial::divide_exact(const BigInt& d) const {
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    std::vector<BigInt> out(coeffs_);
    for (auto& x : out) {
        if (x % d != 0) {
            throw Error(ErrorCode::InvalidArgument,
                        "polynomial " + to_string() + " is not divisible by " + polyseq::to_string(d));
        }
        x /= d;
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
    IntPolynomial r = constant(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

IntPolynomial IntPolynomial::prefix_sum() const {
    // Degree goes up by one, so deg+2 values pin it down.
    std::vector<BigInt> v(coeffs_.size() + 1);
    BigInt acc = 0;
    for (std::size_t n = 0; n < v.size(); ++n) {
        if (n > 0) acc += (*this)(BigInt(n));
        v[n] = acc;
    }
    return from_values(v);
}

std::string IntPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        BigInt c = coeffs_[k];
        if (c == 0) continue;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out << '-';
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            out << polyseq::to_string(c);
            continue;
        }
        if (c != 1) out << polyseq::to_string(c) << '*';
        out << "C(n," << k << ')';
    }
    return out.str();
}

std::vector<Rational> IntPolynomial::monomial_coeffs() const {
    // C(n,k) = n(n-1)...(n-k+1)/k!
    std::vector<Rational> out(coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        std::vector<BigInt> falling{1};  // coefficients of n(n-1)...(n-k+1)
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<BigInt> next(falling.size() + 1, 0);
            for (std::size_t j = 0; j < falling.size(); ++j) {
                next[j + 1] += falling[j];
                next[j] -= falling[j] * BigInt(i);
            }
            falling = std::move(next);
        }
        BigInt fact = 1;
        for (std::size_t i = 2; i <= k; ++i) fact *= BigInt(i);
        for (std::size_t j = 0; j < falling.size(); ++j) {
            out[j] += Rational(coeffs_[k] * falling[j], fact);
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::string IntPolynomial::to_monomial_string() const {
    auto m = monomial_coeffs();
    if (m.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t j = m.size(); j-- > 0;) {
        Rational c = m[j];
        if (c == 0) continue;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out << '-';
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        if (j == 0 || c != 1) {
            out << c;
            if (j > 0) out << '*';
        }
        if (j >= 1) out << 'n';
        if (j >= 2) out << '^' << j;
    }
    return out.str();
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    IntPolynomial parse() {
        auto p = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial: " + msg, 1, pos_ + 1);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    BigInt integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    IntPolynomial expr() {
        IntPolynomial acc;
        bool neg = eat('-');
        if (!neg) eat('+');
        acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) {
                acc = acc + term();
            } else if (eat('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    IntPolynomial term() {
        IntPolynomial acc = power();
        while (true) {
            if (eat('*')) {
                acc = acc * power();
            } else if (eat('/')) {
                skip();
                std::size_t at = pos_;
                BigInt d = integer();
                try {
                    acc = acc.divide_exact(d);
                } catch (const Error&) {
                    pos_ = at;
                    fail("division does not give an integer-valued polynomial");
                }
            } else {
                return acc;
            }
        }
    }

    IntPolynomial power() {
        IntPolynomial base = factor();
        if (eat('^')) {
            BigInt e = integer();
            if (e > 64) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    IntPolynomial factor() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto p = expr();
            expect(')');
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return IntPolynomial::constant(integer());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view word = text_.substr(start, pos_ - start);
            if (word == "n") return IntPolynomial::variable();
            if (word == "C" || word == "binom") {
                expect('(');
                auto inner = expr();
                expect(',');
                BigInt k = integer();
                expect(')');
                if (k > 64) fail("binomial index too large");
                return IntPolynomial::binomial(static_cast<std::size_t>(k)).compose(inner);
            }
            pos_ = start;
            fail("unknown identifier '" + std::string(word) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

IntPolynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

IntPolynomial interpolate(std::span<const std::pair<long long, BigInt>> samples) {
    if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "interpolate: no samples");
    std::vector<BigInt> values;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].first != static_cast<long long>(i)) {
            throw Error(ErrorCode::InvalidArgument,
                        "interpolate: samples must be at consecutive n = 0, 1, ...; got n = " +
                            std::to_string(samples[i].first) + " at position " + std::to_string(i));
        }
        values.push_back(samples[i].second);
    }
    return IntPolynomial::from_values(values);
}

} // namespace polyseq
