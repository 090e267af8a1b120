#include "polyseq/report.hpp"

#include "polyseq/graphs.hpp"

#include <limits>
#include <sstream>

namespace polyseq {

std::optional<ReportFormat> parse_format(const std::string& text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    return std::nullopt;
}

Json bigint_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
        return static_cast<long long>(v);
    }
    return v.str();
}

namespace {

Json rational_json(const Rational& r) {
    if (denominator(r) == 1) return bigint_json(numerator(r));
    return r.str();
}

} // namespace

Json polynomial_json(const IntPolynomial& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(bigint_json(c));
    return {{"binomial", std::move(coeffs)}, {"text", p.to_string()}, {"monomial", p.to_monomial_string()}};
}

Json fit_json(const PolynomialFit& fit) {
    Json samples = Json::array();
    for (const auto& s : fit.samples) samples.push_back({{"n", s.n}, {"value", bigint_json(s.value)}});
    Json verify = Json::array();
    for (const auto& v : fit.verify) {
        verify.push_back({{"n", v.n},
                          {"value", bigint_json(v.value)},
                          {"predicted", bigint_json(v.predicted)},
                          {"match", v.match}});
    }
    Json j = {{"verdict", verdict_name(fit.verdict)},
              {"degreeBound", fit.degree_bound},
              {"fit", polynomial_json(fit.fit)},
              {"samples", std::move(samples)},
              {"verify", std::move(verify)}};
    j["witness"] = fit.witness ? Json(*fit.witness) : Json(nullptr);
    if (!fit.note.empty()) j["note"] = fit.note;
    return j;
}

std::string fit_csv(const PolynomialFit& fit) {
    std::ostringstream out;
    out << "n,value,phase,match\n";
    for (const auto& s : fit.samples) out << s.n << ',' << s.value << ",sample,\n";
    for (const auto& v : fit.verify) out << v.n << ',' << v.value << ",verify," << (v.match ? "true" : "false") << '\n';
    return out.str();
}

Json gallery_json(const GalleryReport& report) {
    Json params = Json::object();
    for (const auto& [k, v] : report.params) params[k] = v;
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        Json row = {{"n", r.n},
                    {"equal", r.equal},
                    {"scheme", {{"vertices", r.scheme_vertices}, {"edges", r.scheme_edges}}},
                    {"oracle", {{"vertices", r.oracle_vertices}, {"edges", r.oracle_edges}}},
                    {"key", r.key}};
        if (r.error) row["error"] = *r.error;
        rows.push_back(std::move(row));
    }
    Json fits = Json::array();
    for (const auto& f : report.fits) {
        Json j = fit_json(f.fit);
        j["pattern"] = f.pattern;
        fits.push_back(std::move(j));
    }
    Json j = {{"entry", report.name}, {"params", std::move(params)}, {"passed", report.passed()},
              {"rows", std::move(rows)}, {"fits", std::move(fits)}};
    if (report.first_mismatch) {
        j["firstMismatch"] = *report.first_mismatch;
        if (report.mismatch_scheme) j["mismatchScheme"] = *report.mismatch_scheme;
        if (report.mismatch_oracle) j["mismatchOracle"] = *report.mismatch_oracle;
    }
    return j;
}

std::string gallery_csv(const GalleryReport& report) {
    std::ostringstream out;
    out << "n,equal,scheme_vertices,scheme_edges,oracle_vertices,oracle_edges,key\n";
    for (const auto& r : report.rows) {
        out << r.n << ',' << (r.equal ? "true" : "false") << ',' << r.scheme_vertices << ',' << r.scheme_edges << ','
            << r.oracle_vertices << ',' << r.oracle_edges << ',' << r.key << '\n';
    }
    return out.str();
}

Json decomposition_json(const Decomposition& d) {
    Json parts = Json::array();
    for (const auto& p : d.parts) {
        parts.push_back({{"component", structure_to_json_value(p.component)},
                         {"multiplicity", polynomial_json(p.multiplicity)}});
    }
    return {{"size", polynomial_json(d.size)}, {"parts", std::move(parts)}, {"samples", d.samples},
            {"verified", d.verified}};
}

std::string decomposition_csv(const Decomposition& d) {
    std::ostringstream out;
    out << "vertices,tuples,multiplicity\n";
    for (const auto& p : d.parts) {
        out << p.component.domain_size() << ',' << p.component.tuple_count() << ",\"" << p.multiplicity.to_string()
            << "\"\n";
    }
    return out.str();
}

Json paley_json(const PaleyReport& report) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        Json row = {{"q", r.q}, {"phase", r.sample ? "sample" : "verify"}, {"hom", bigint_json(r.hom)},
                    {"images", bigint_json(r.images)}};
        if (r.predicted_hom) {
            row["predictedHom"] = rational_json(*r.predicted_hom);
            row["predictedImages"] = rational_json(*r.predicted_images);
            row["homMatch"] = r.hom_match;
            row["imagesMatch"] = r.images_match;
        }
        rows.push_back(std::move(row));
    }
    return {{"rows", std::move(rows)},
            {"homFit", report.hom_fit.to_string()},
            {"imagesFit", report.images_fit.to_string()},
            {"homVerified", report.hom_verified},
            {"imagesVerified", report.images_verified},
            {"note", report.note}};
}

std::string paley_csv(const PaleyReport& report) {
    std::ostringstream out;
    out << "q,phase,hom,predicted_hom,images,predicted_images\n";
    for (const auto& r : report.rows) {
        out << r.q << ',' << (r.sample ? "sample" : "verify") << ',' << r.hom << ','
            << (r.predicted_hom ? r.predicted_hom->str() : "") << ',' << r.images << ','
            << (r.predicted_images ? r.predicted_images->str() : "") << '\n';
    }
    return out.str();
}

std::string render_json(Json body) {
    Json j = {{"schemaVersion", kReportSchemaVersion}};
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    return j.dump(2) + "\n";
}

std::string emit_report(const PolynomialFit& fit, ReportFormat format) {
    return format == ReportFormat::Csv ? fit_csv(fit) : render_json(fit_json(fit));
}

std::string emit_report(const GalleryReport& report, ReportFormat format) {
    return format == ReportFormat::Csv ? gallery_csv(report) : render_json(gallery_json(report));
}

std::string emit_report(const Decomposition& d, ReportFormat format) {
    return format == ReportFormat::Csv ? decomposition_csv(d) : render_json(decomposition_json(d));
}

std::string emit_report(const PaleyReport& report, ReportFormat format) {
    return format == ReportFormat::Csv ? paley_csv(report) : render_json(paley_json(report));
}

} // namespace polyseq
