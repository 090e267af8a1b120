#pragma once

#include "polyseq/detect.hpp"
#include "polyseq/sequence.hpp"
#include "polyseq/structure_json.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polyseq {

// Parameters travel as strings; `kind` documents how they are read.
struct GalleryParam {
    std::string name;
    std::string kind;  // integer | set | polynomial | polynomials | edges | parents | choice
    std::string default_value;
    std::string description;
};

struct GalleryEntry {
    std::string name;
    std::string description;
    std::vector<GalleryParam> params;
    long long range_first = 0;
    long long range_last = 6;
    // Interpreted over a basic sequence (possibly through a base graph).
    std::function<SpecPtr(const SchemeParams&)> spec;
    // Direct construction of the n-th term.
    std::function<Structure(const SchemeParams&, long long)> oracle;
};

const std::vector<GalleryEntry>& gallery_entries();
// Throws UnknownEntry.
const GalleryEntry& gallery_entry(const std::string& name);
// Defaults filled in; unknown parameter names raise InvalidArgument.
SchemeParams gallery_params(const GalleryEntry& entry, const SchemeParams& given);

// Direct constructions shared with tests.
Structure crown_graph(std::size_t n);
Structure johnson_graph(std::size_t n, std::size_t k, const std::vector<std::size_t>& d);
Structure half_graph(std::size_t n);
Structure chord_graph(std::size_t n);
Structure star_union(std::size_t count);
Structure line_graph(const Structure& g);
Structure subdivision(const Structure& g);
Structure clique_graph(const Structure& g, std::size_t k, const std::vector<std::size_t>& d);
Structure blowup_graph(const std::vector<std::size_t>& sizes,
                       const std::vector<std::pair<Vertex, Vertex>>& edges);
Structure tree_blowup(const std::vector<std::size_t>& parents, const std::vector<std::size_t>& copies);
Structure octahedron();

struct GalleryBuild {
    Structure via_scheme;
    Structure via_oracle;
};

GalleryBuild gallery_build(const std::string& name, const SchemeParams& params, long long n);

struct GalleryRow {
    long long n = 0;
    bool equal = false;
    std::size_t scheme_vertices = 0, scheme_edges = 0;
    std::size_t oracle_vertices = 0, oracle_edges = 0;
    std::string key;  // short digest of the scheme output's canonical key
    std::optional<std::string> error;
};

struct GalleryFit {
    std::string pattern;
    PolynomialFit fit;
};

struct GalleryReport {
    std::string name;
    SchemeParams params;
    std::vector<GalleryRow> rows;
    std::optional<long long> first_mismatch;
    // Both structures at the first mismatch, as JSON.
    std::optional<Json> mismatch_scheme, mismatch_oracle;
    std::vector<GalleryFit> fits;
    bool passed() const;
};

struct GalleryCheckOptions {
    std::optional<long long> first, last;  // default: the entry's range
    bool detect = true;
    DetectOptions detect_options;
};

// The patterns used by gallery_check: K_1, K_2, P_3, K_3.
std::vector<std::pair<std::string, Structure>> gallery_patterns();

GalleryReport gallery_check(const std::string& name, const SchemeParams& params,
                            const GalleryCheckOptions& options = {});

Json gallery_list_json();

} // namespace polyseq
