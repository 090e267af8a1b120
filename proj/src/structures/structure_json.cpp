#include "polyseq/structure_json.hpp"

#include "polyseq/error.hpp"

#include <fstream>
#include <sstream>

namespace polyseq {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

[[noreturn]] void malformed(const std::string& what) {
    throw ParseError("malformed structure: " + what, 1, 1);
}

} // namespace

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is 1-based and points at the offending character.
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string msg = e.what();
        auto pos = msg.find("; last read");
        throw ParseError("invalid JSON" + (pos == std::string::npos ? "" : msg.substr(pos)),
                         line, column);
    }
}

Json structure_to_json_value(const Structure& s) {
    Json j = Json::object();
    Json sig = Json::array();
    for (const auto& sym : s.signature().symbols()) {
        Json e = Json::object();
        e["name"] = sym.name;
        e["arity"] = sym.arity;
        sig.push_back(std::move(e));
    }
    j["signature"] = std::move(sig);
    j["domain"] = s.domain_size();
    Json rels = Json::object();
    for (std::size_t i = 0; i < s.symbol_count(); ++i) {
        Json tuples = Json::array();
        for (const auto& t : s.relation(i)) tuples.push_back(t);
        rels[s.signature()[i].name] = std::move(tuples);
    }
    j["relations"] = std::move(rels);
    return j;
}

Structure structure_from_json_value(const Json& j) {
    if (!j.is_object()) malformed("expected an object");
    for (const char* key : {"signature", "domain", "relations"}) {
        if (!j.contains(key)) malformed(std::string("missing \"") + key + "\"");
    }
    const auto& sig_j = j.at("signature");
    if (!sig_j.is_array()) malformed("\"signature\" must be an array");
    std::vector<Symbol> symbols;
    for (const auto& e : sig_j) {
        if (!e.is_object() || !e.contains("name") || !e.contains("arity") ||
            !e.at("name").is_string() || !e.at("arity").is_number_integer()) {
            malformed("signature entries need a string name and an integer arity");
        }
        symbols.push_back({e.at("name").get<std::string>(), e.at("arity").get<int>()});
    }
    Signature sig(std::move(symbols));
    const auto& dom = j.at("domain");
    if (!dom.is_number_unsigned() && !(dom.is_number_integer() && dom.get<long long>() >= 0)) {
        malformed("\"domain\" must be a non-negative integer");
    }
    const auto n = dom.get<std::size_t>();
    const auto& rels_j = j.at("relations");
    if (!rels_j.is_object()) malformed("\"relations\" must be an object");
    std::vector<std::vector<Tuple>> rels(sig.size());
    for (auto it = rels_j.begin(); it != rels_j.end(); ++it) {
        auto idx = sig.find(it.key());
        if (!idx) {
            throw Error(ErrorCode::UnknownSymbol,
                        "relation '" + it.key() + "' not declared in signature");
        }
        if (!it.value().is_array()) malformed("relation '" + it.key() + "' must be an array");
        for (const auto& t : it.value()) {
            if (!t.is_array()) malformed("tuples must be arrays");
            Tuple tuple;
            for (const auto& v : t) {
                if (!v.is_number_integer() || v.get<long long>() < 0) {
                    malformed("tuple entries must be non-negative integers");
                }
                tuple.push_back(v.get<Vertex>());
            }
            rels[*idx].push_back(std::move(tuple));
        }
    }
    return Structure(std::move(sig), n, std::move(rels));
}

std::string structure_to_json(const Structure& s) { return structure_to_json_value(s).dump(); }

Structure structure_from_json(std::string_view text) {
    return structure_from_json_value(parse_json_text(text));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

Structure load_structure(const std::string& path) {
    return structure_from_json(read_text_file(path));
}

void save_structure(const std::string& path, const Structure& s) {
    write_text_file(path, structure_to_json(s) + "\n");
}

} // namespace polyseq
