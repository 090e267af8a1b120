#pragma once

#include "polyseq/decompose.hpp"
#include "polyseq/detect.hpp"
#include "polyseq/gallery.hpp"
#include "polyseq/paley.hpp"
#include "polyseq/structure_json.hpp"

#include <optional>
#include <string>

namespace polyseq {

enum class ReportFormat { Json, Csv };
std::optional<ReportFormat> parse_format(const std::string& text);

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json bigint_json(const BigInt& v);
// {"binomial": [c_0, ..], "text": "..", "monomial": ".."}
Json polynomial_json(const IntPolynomial& p);

Json fit_json(const PolynomialFit& fit);
// Columns n,value,phase,match; phase is sample or verify, match is empty on samples.
std::string fit_csv(const PolynomialFit& fit);

Json gallery_json(const GalleryReport& report);
// One row per n: n,equal,scheme_vertices,scheme_edges,oracle_vertices,oracle_edges,key
std::string gallery_csv(const GalleryReport& report);

Json decomposition_json(const Decomposition& d);
// One row per part: vertices,tuples,multiplicity
std::string decomposition_csv(const Decomposition& d);

Json paley_json(const PaleyReport& report);
// One row per prime: q,phase,hom,predicted_hom,images,predicted_images
std::string paley_csv(const PaleyReport& report);

// Adds schemaVersion and renders; JSON output ends with a newline.
std::string emit_report(const PolynomialFit& fit, ReportFormat format);
std::string emit_report(const GalleryReport& report, ReportFormat format);
std::string emit_report(const Decomposition& d, ReportFormat format);
std::string emit_report(const PaleyReport& report, ReportFormat format);
std::string render_json(Json body);

} // namespace polyseq
