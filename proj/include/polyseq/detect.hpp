#pragma once

#include "polyseq/counting.hpp"
#include "polyseq/formula.hpp"
#include "polyseq/polynomial.hpp"
#include "polyseq/sequence.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polyseq {

enum class Verdict { Polynomial, NotPolynomial, Inconclusive };
const char* verdict_name(Verdict v);

struct PatternQuery {
    Structure pattern;
    CountMode mode = CountMode::Hom;
};

// Counts |phi(A_n)|; phi must be quantifier-free.
struct FormulaQuery {
    Formula formula;
};

using Query = std::variant<PatternQuery, FormulaQuery>;
std::string query_summary(const Query& q);

struct SamplePoint {
    long long n = 0;
    BigInt value;
};

struct VerifyPoint {
    long long n = 0;
    BigInt value;
    BigInt predicted;
    bool match = false;
};

struct PolynomialFit {
    IntPolynomial fit;
    std::size_t degree_bound = 0;
    std::vector<SamplePoint> samples;
    std::vector<VerifyPoint> verify;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<long long> witness;  // first mismatching n
    std::string note;                  // why the verdict is not Polynomial
};

// Terms of one sequence, generated once and shared by every query. Thread-safe.
class TermCache {
public:
    explicit TermCache(SpecPtr spec, GenerateOptions options = {});

    const SequenceSpec& spec() const { return *spec_; }
    std::shared_ptr<const Structure> term(long long n);

private:
    SpecPtr spec_;
    GenerateOptions options_;
    std::mutex mutex_;
    std::map<long long, std::shared_ptr<std::once_flag>> once_;
    std::map<long long, std::shared_ptr<const Structure>> terms_;
};

struct DetectOptions {
    std::size_t verify_count = 5;
    CountOptions count;
    EvalOptions eval;
    bool parallel = true;
};

// (number of free variables, or pattern size) times spec_degree.
std::size_t degree_bound(const SequenceSpec& spec, const Query& query);

// Samples n = 0..d, interpolates, then checks d+1..d+verify_count. A mismatch
// is NotPolynomial, except below quotient schemes where it is Inconclusive.
// Exhausted budgets give Inconclusive with whatever data was collected.
PolynomialFit detect_polynomial(TermCache& terms, const Query& query, const DetectOptions& options = {});
PolynomialFit detect_polynomial(SpecPtr spec, const Query& query, const DetectOptions& options = {});

} // namespace polyseq
