#include "polyseq/sequence_json.hpp"

#include "polyseq/error.hpp"
#include "polyseq/scheme_text.hpp"

#include <filesystem>

namespace polyseq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, "sequence " + (where.empty() ? "/" : where) + ": " + what);
}

const Json& field(const Json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
    return j.at(key);
}

std::string string_field(const Json& j, const std::string& where, const char* key) {
    const auto& v = field(j, where, key);
    if (!v.is_string()) bad(where + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::size_t count_field(const Json& j, const std::string& where, const char* key) {
    const auto& v = field(j, where, key);
    if (!v.is_number_unsigned()) bad(where + "/" + key, "expected a non-negative integer");
    return v.get<std::size_t>();
}

IntPolynomial poly(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return IntPolynomial::constant(BigInt(v.get<long long>()));
    if (!v.is_string()) bad(where, "expected a polynomial string");
    try {
        return parse_polynomial(v.get<std::string>());
    } catch (const Error& e) {
        bad(where, e.what());
    }
}

Json scheme_json(const InterpretedSpec& i) {
    Json s = Json::object();
    if (i.origin) {
        s["builtin"] = i.origin->builtin;
        Json params = Json::object();
        for (const auto& [k, v] : i.origin->params) params[k] = v;
        s["params"] = std::move(params);
    } else {
        s["text"] = scheme_to_text(i.scheme);
    }
    return s;
}

SpecPtr read(const Json& j, const std::string& where, const std::string& base_dir) {
    if (!j.is_object()) bad(where, "expected an object");
    const std::string type = string_field(j, where, "type");
    auto inner = [&](const char* key) { return read(field(j, where, key), where + "/" + key, base_dir); };
    try {
        if (type == "basic") {
            const auto k = count_field(j, where, "k");
            const auto l = count_field(j, where, "l");
            std::vector<IntPolynomial> orders;
            if (k > 0 || j.contains("orders")) {
                const auto& o = field(j, where, "orders");
                if (!o.is_array()) bad(where + "/orders", "expected an array");
                for (std::size_t i = 0; i < o.size(); ++i) {
                    orders.push_back(poly(o[i], where + "/orders/" + std::to_string(i)));
                }
            }
            return make_basic(k, l, std::move(orders));
        }
        if (type == "orderedSum") {
            auto length = j.contains("length") ? poly(j.at("length"), where + "/length") : IntPolynomial::variable();
            return make_ordered_sum(inner("inner"), std::move(length));
        }
        if (type == "interpreted") {
            const auto& s = field(j, where, "scheme");
            const std::string sw = where + "/scheme";
            if (!s.is_object()) bad(sw, "expected an object");
            auto in = inner("inner");
            if (s.contains("builtin")) {
                const auto name = string_field(s, sw, "builtin");
                SchemeParams params;
                if (s.contains("params")) {
                    if (!s.at("params").is_object()) bad(sw + "/params", "expected an object");
                    for (const auto& [k, v] : s.at("params").items()) {
                        params[k] = v.is_string() ? v.get<std::string>() : v.dump();
                    }
                }
                if (name == "mark") {
                    auto it = params.find("name");
                    return make_mark(std::move(in), it == params.end() ? "U" : it->second);
                }
                return make_builtin_interpreted(name, params, std::move(in));
            }
            if (s.contains("text")) return make_interpreted(parse_scheme_text(string_field(s, sw, "text")), std::move(in));
            if (s.contains("file")) {
                std::filesystem::path path = string_field(s, sw, "file");
                if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
                return make_interpreted(load_scheme(path.string()), std::move(in));
            }
            bad(sw, "expected \"builtin\", \"text\" or \"file\"");
        }
        if (type == "strongSum") {
            const auto& parts = field(j, where, "parts");
            if (!parts.is_array()) bad(where + "/parts", "expected an array");
            std::vector<SpecPtr> out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                out.push_back(read(parts[i], where + "/parts/" + std::to_string(i), base_dir));
            }
            return make_strong_sum(std::move(out));
        }
        if (type == "copies") return make_copies(poly(field(j, where, "m"), where + "/m"), inner("inner"));
        if (type == "reindexed") return make_reindexed(poly(field(j, where, "P"), where + "/P"), inner("inner"));
        if (type == "custom") {
            const auto name = string_field(j, where, "name");
            if (name == "constant") return make_constant(structure_from_json_value(field(j, where, "structure")));
            return make_custom(name);
        }
        if (type == "product") {
            auto kind = parse_product(string_field(j, where, "kind"));
            if (!kind) bad(where + "/kind", "expected disjointUnion, direct, cartesian, strong or lex");
            return product_sequences(*kind, inner("a"), inner("b"));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        if (std::string(e.what()).rfind("sequence ", 0) == 0) throw;
        throw Error(e.code(), "sequence " + (where.empty() ? "/" : where) + ": " + e.what());
    }
    bad(where + "/type", "unknown node type '" + type + "'");
}

} // namespace

Json sequence_to_json_value(const SequenceSpec& spec) {
    Json j = Json::object();
    std::visit(
        overloaded{
            [&](const BasicSpec& b) {
                j["type"] = "basic";
                j["k"] = b.k;
                j["l"] = b.l;
                Json orders = Json::array();
                for (const auto& q : b.orders) orders.push_back(q.to_string());
                j["orders"] = std::move(orders);
            },
            [&](const OrderedSumSpec& o) {
                j["type"] = "orderedSum";
                j["length"] = o.length.to_string();
                j["inner"] = sequence_to_json_value(*o.inner);
            },
            [&](const InterpretedSpec& i) {
                j["type"] = "interpreted";
                j["scheme"] = scheme_json(i);
                j["inner"] = sequence_to_json_value(*i.inner);
            },
            [&](const StrongSumSpec& s) {
                j["type"] = "strongSum";
                Json parts = Json::array();
                for (const auto& p : s.parts) parts.push_back(sequence_to_json_value(*p));
                j["parts"] = std::move(parts);
            },
            [&](const CopiesSpec& c) {
                j["type"] = "copies";
                j["m"] = c.m.to_string();
                j["inner"] = sequence_to_json_value(*c.inner);
            },
            [&](const ReindexedSpec& r) {
                j["type"] = "reindexed";
                j["P"] = r.P.to_string();
                j["inner"] = sequence_to_json_value(*r.inner);
            },
            [&](const CustomSpec& c) {
                j["type"] = "custom";
                j["name"] = c.name;
                if (c.structure) j["structure"] = structure_to_json_value(*c.structure);
            },
        },
        spec.node);
    return j;
}

SpecPtr sequence_from_json_value(const Json& j, const std::string& base_dir) { return read(j, "", base_dir); }

std::string sequence_to_json(const SequenceSpec& spec) { return sequence_to_json_value(spec).dump(2) + "\n"; }

SpecPtr sequence_from_json(std::string_view text, const std::string& base_dir) {
    return sequence_from_json_value(parse_json_text(text), base_dir);
}

SpecPtr load_sequence(const std::string& path) {
    auto dir = std::filesystem::path(path).parent_path().string();
    return sequence_from_json(read_text_file(path), dir.empty() ? "." : dir);
}

void save_sequence(const std::string& path, const SequenceSpec& spec) {
    write_text_file(path, sequence_to_json(spec));
}

} // namespace polyseq
