#include "polyseq/detect.hpp"

#include "polyseq/error.hpp"
#include "polyseq/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace polyseq {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Polynomial: return "Polynomial";
    case Verdict::NotPolynomial: return "NotPolynomial";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string query_summary(const Query& q) {
    if (const auto* p = std::get_if<PatternQuery>(&q)) {
        return std::string(mode_name(p->mode)) + " pattern on " + std::to_string(p->pattern.domain_size()) +
               " vertices";
    }
    return "formula " + std::get<FormulaQuery>(q).formula.to_string();
}

TermCache::TermCache(SpecPtr spec, GenerateOptions options)
    : spec_(std::move(spec)), options_(std::move(options)) {
    if (!spec_) throw Error(ErrorCode::InvalidArgument, "TermCache: missing sequence");
}

std::shared_ptr<const Structure> TermCache::term(long long n) {
    std::shared_ptr<std::once_flag> flag;
    {
        std::lock_guard lock(mutex_);
        auto& slot = once_[n];
        if (!slot) slot = std::make_shared<std::once_flag>();
        flag = slot;
    }
    // A throwing generator leaves the flag unset, so the next caller retries.
    std::call_once(*flag, [&] {
        auto s = std::make_shared<const Structure>(generate_term(*spec_, n, options_));
        std::lock_guard lock(mutex_);
        terms_[n] = std::move(s);
    });
    std::lock_guard lock(mutex_);
    return terms_.at(n);
}

std::size_t degree_bound(const SequenceSpec& spec, const Query& query) {
    std::size_t width = 0;
    if (const auto* p = std::get_if<PatternQuery>(&query)) {
        width = p->pattern.domain_size();
    } else {
        width = std::get<FormulaQuery>(query).formula.free_count();
    }
    return width * spec_degree(spec);
}

namespace {

BigInt evaluate_query(const Structure& term, const Query& query, const DetectOptions& options) {
    if (const auto* p = std::get_if<PatternQuery>(&query)) {
        return count(p->mode, p->pattern, term, options.count).value;
    }
    return count_satisfying(std::get<FormulaQuery>(query).formula, term, options.eval);
}

bool is_budget(const Error& e) {
    return e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::CapExceeded;
}

} // namespace

PolynomialFit detect_polynomial(TermCache& terms, const Query& query, const DetectOptions& options) {
    if (const auto* f = std::get_if<FormulaQuery>(&query); f && !f->formula.quantifier_free()) {
        throw Error(ErrorCode::NotQuantifierFree, "detect_polynomial: the formula has quantifiers");
    }
    PolynomialFit out;
    out.degree_bound = degree_bound(terms.spec(), query);
    const long long d = static_cast<long long>(out.degree_bound);
    const long long last = d + static_cast<long long>(options.verify_count);

    // Points are evaluated by a small pool; results are consumed in index
    // order so that partial data stays a prefix.
    const std::size_t count = static_cast<std::size_t>(last + 1);
    std::vector<std::optional<BigInt>> values(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                values[i] = evaluate_query(*terms.term(static_cast<long long>(i)), query, options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t threads = options.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1;
    threads = std::min(threads, count);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::pair<long long, BigInt>> samples;
    std::optional<std::string> failure;
    for (long long n = 0; n <= last; ++n) {
        const auto i = static_cast<std::size_t>(n);
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const Error& e) {
                if (!is_budget(e)) throw;
                if (!failure) failure = "n = " + std::to_string(n) + ": " + e.what();
            }
            continue;
        }
        if (failure) continue;
        const BigInt& value = *values[i];
        if (n <= d) {
            out.samples.push_back({n, value});
            samples.emplace_back(n, value);
            if (n == d) out.fit = interpolate(samples);
        } else {
            const BigInt predicted = out.fit(n);
            out.verify.push_back({n, value, predicted, value == predicted});
            if (value != predicted && !out.witness) out.witness = n;
        }
    }

    if (failure) {
        if (samples.size() < static_cast<std::size_t>(d + 1)) out.fit = IntPolynomial();
        out.verdict = Verdict::Inconclusive;
        out.note = "budget exhausted at " + *failure;
    } else if (out.witness) {
        const auto& w = out.verify[static_cast<std::size_t>(*out.witness - d - 1)];
        std::string msg = "at n = " + std::to_string(*out.witness) + " the count is " + w.value.str() +
                          " but the fit predicts " + w.predicted.str();
        if (spec_has_quotient(terms.spec())) {
            out.verdict = Verdict::Inconclusive;
            out.note = msg + "; the degree bound is not proven below quotient schemes";
        } else {
            out.verdict = Verdict::NotPolynomial;
            out.note = msg;
        }
    } else {
        out.verdict = Verdict::Polynomial;
    }
    return out;
}

PolynomialFit detect_polynomial(SpecPtr spec, const Query& query, const DetectOptions& options) {
    TermCache terms(std::move(spec));
    return detect_polynomial(terms, query, options);
}

} // namespace polyseq
