#include "polyseq/scheme_text.hpp"

#include "polyseq/error.hpp"
#include "polyseq/parser.hpp"
#include "polyseq/structure_json.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace polyseq {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool is_ident(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    }
    return true;
}

class Document {
public:
    explicit Document(std::string_view text) : text_(text) {
        // Comments become spaces so offsets stay valid.
        bool comment = false;
        for (char& c : text_) {
            if (c == '\n') comment = false;
            else if (c == '#') comment = true;
            if (comment) c = ' ';
        }
    }

    const std::string& text() const { return text_; }

    SourcePos pos(std::size_t offset) const {
        SourcePos p;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++p.line;
                p.column = 1;
            } else {
                ++p.column;
            }
        }
        return p;
    }

    [[noreturn]] void syntax(const std::string& msg, std::size_t offset) const {
        auto p = pos(offset);
        throw ParseError(msg, p.line, p.column);
    }

    [[noreturn]] void fail(ErrorCode code, const std::string& msg, std::size_t offset) const {
        auto p = pos(offset);
        throw Error(code, msg + " at line " + std::to_string(p.line) + ", column " +
                              std::to_string(p.column));
    }

    std::size_t skip_space(std::size_t i) const {
        while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
        return i;
    }

private:
    std::string text_;
};

struct Piece {
    std::string text;
    std::size_t offset;  // of the first non-space character
};

Piece make_piece(const Document& doc, std::size_t begin, std::size_t end) {
    std::size_t a = doc.skip_space(begin);
    if (a > end) a = end;
    std::size_t b = end;
    while (b > a && std::isspace(static_cast<unsigned char>(doc.text()[b - 1]))) --b;
    return {doc.text().substr(a, b - a), a};
}

// Splits [begin, end) at `sep` outside parentheses and braces.
std::vector<Piece> split_top(const Document& doc, std::size_t begin, std::size_t end, char sep) {
    std::vector<Piece> out;
    int depth = 0;
    std::size_t start = begin;
    for (std::size_t i = begin; i < end; ++i) {
        char c = doc.text()[i];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == sep && depth == 0) {
            out.push_back(make_piece(doc, start, i));
            start = i + 1;
        }
    }
    out.push_back(make_piece(doc, start, end));
    return out;
}

Signature signature_at(const Document& doc, const Piece& piece) {
    try {
        return parse_signature_text(piece.text);
    } catch (const ParseError& e) {
        auto p = doc.pos(piece.offset + e.column() - 1);
        throw ParseError(e.detail(), p.line, p.column);
    } catch (const Error& e) {
        doc.fail(e.code(), e.what(), piece.offset);
    }
}

struct Definition {
    std::string name;
    std::vector<std::vector<std::string>> groups;
    std::vector<std::string> vars;  // groups flattened
    Piece body;
    std::size_t offset;
};

Definition definition(const Document& doc, const Piece& key, const Piece& body) {
    Definition d;
    d.body = body;
    d.offset = key.offset;
    auto open = key.text.find('(');
    d.name = trim(key.text.substr(0, open));
    if (!is_ident(d.name) || key.text.back() != ')') doc.syntax("malformed definition '" + key.text + "'", key.offset);
    const std::size_t inner_begin = key.offset + open + 1;
    const std::size_t inner_end = key.offset + key.text.size() - 1;
    for (const auto& group : split_top(doc, inner_begin, inner_end, ';')) {
        std::vector<std::string> vars;
        for (const auto& v : split_top(doc, group.offset, group.offset + group.text.size(), ',')) {
            if (!is_ident(v.text)) doc.syntax("expected a variable name, got '" + v.text + "'", v.offset);
            vars.push_back(v.text);
            d.vars.push_back(v.text);
        }
        d.groups.push_back(std::move(vars));
    }
    return d;
}

Formula formula_of(const Document& doc, const Definition& d, const Signature& sig) {
    if (d.body.text.empty()) doc.syntax("missing formula", d.body.offset);
    return parse_formula(d.body.text, sig, d.vars, doc.pos(d.body.offset));
}

void check_groups(const Document& doc, const Definition& d, std::size_t arity, std::size_t p) {
    if (d.groups.size() != arity) {
        doc.fail(ErrorCode::ArityMismatch,
                 "'" + d.name + "' has arity " + std::to_string(arity) + " but " +
                     std::to_string(d.groups.size()) + " variable groups are given",
                 d.offset);
    }
    for (const auto& g : d.groups) {
        if (g.size() != p) {
            doc.fail(ErrorCode::ArityMismatch,
                     "'" + d.name + "': each variable group needs p = " + std::to_string(p) +
                         " variables, got " + std::to_string(g.size()),
                     d.offset);
        }
    }
}

} // namespace

Signature parse_signature_text(std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "graph") return Signature::graph();
    auto expect_int = [&](const std::string& s, std::size_t at) -> std::size_t {
        std::string t = trim(s);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 6) {
            throw ParseError("expected a non-negative integer", 1, at + 1);
        }
        return static_cast<std::size_t>(std::stoul(t));
    };
    if (text.rfind("basic(", 0) == 0 && text.back() == ')') {
        std::string inner = text.substr(6, text.size() - 7);
        std::optional<std::size_t> k, l;
        std::stringstream in(inner);
        std::string item;
        std::size_t at = 6;
        while (std::getline(in, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw ParseError("expected k=.. or l=..", 1, at + 1);
            auto key = trim(item.substr(0, eq));
            auto value = expect_int(item.substr(eq + 1), at + eq + 1);
            if (key == "k") k = value;
            else if (key == "l") l = value;
            else throw ParseError("unknown basic parameter '" + key + "'", 1, at + 1);
            at += item.size() + 1;
        }
        return basic_signature(k.value_or(0), l.value_or(0));
    }
    if (text.rfind("sig{", 0) == 0 && text.back() == '}') {
        std::vector<Symbol> symbols;
        std::string inner = text.substr(4, text.size() - 5);
        std::size_t at = 4;
        if (trim(inner).empty()) return Signature();
        std::stringstream in(inner);
        std::string item;
        while (std::getline(in, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos) throw ParseError("expected NAME:ARITY", 1, at + 1);
            auto name = trim(item.substr(0, colon));
            if (!is_ident(name)) throw ParseError("bad symbol name '" + name + "'", 1, at + 1);
            symbols.push_back({name, static_cast<int>(expect_int(item.substr(colon + 1), at + colon + 1))});
            at += item.size() + 1;
        }
        return Signature(std::move(symbols));
    }
    throw ParseError("expected graph, basic(k=..,l=..) or sig{...}", 1, 1);
}

std::string signature_to_text(const Signature& sig) {
    std::string out = "sig{";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        out += (i ? ", " : "") + sig[i].name + ":" + std::to_string(sig[i].arity);
    }
    return out + "}";
}

Scheme parse_scheme_text(std::string_view raw) {
    Document doc(raw);
    const auto& text = doc.text();
    std::size_t i = doc.skip_space(0);
    std::size_t kw_start = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    const std::string keyword = text.substr(kw_start, i - kw_start);
    if (keyword != "interpretation" && keyword != "graphical") {
        doc.syntax("expected 'interpretation' or 'graphical'", kw_start);
    }
    const bool graphical = keyword == "graphical";
    i = doc.skip_space(i);
    std::size_t name_start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '{') ++i;
    std::string name = text.substr(name_start, i - name_start);
    if (name.empty()) doc.syntax("expected a scheme name", name_start);
    i = doc.skip_space(i);
    if (i >= text.size() || text[i] != '{') doc.syntax("expected '{'", i);
    const std::size_t body_begin = i + 1;
    int depth = 0;
    std::size_t body_end = std::string::npos;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] == '{') ++depth;
        if (text[j] == '}' && --depth == 0) {
            body_end = j;
            break;
        }
    }
    if (body_end == std::string::npos) doc.syntax("missing '}'", text.size());
    if (doc.skip_space(body_end + 1) != text.size()) {
        doc.syntax("unexpected text after '}'", doc.skip_space(body_end + 1));
    }

    std::optional<Signature> source, target;
    std::optional<std::size_t> p;
    std::optional<Formula> domain, edge, equiv;
    std::optional<LoopPolicy> loops;
    std::vector<std::optional<Formula>> rels;
    std::vector<ClassCertificate> certificates;
    if (graphical) target = Signature::graph();

    auto need_header = [&](std::size_t at) {
        if (!source || !p || !target) doc.syntax("source, target and p must precede the formulas", at);
    };

    for (const auto& stmt : split_top(doc, body_begin, body_end, ';')) {
        if (stmt.text.empty()) continue;
        auto parts = split_top(doc, stmt.offset, stmt.offset + stmt.text.size(), ':');
        if (parts.size() < 2) doc.syntax("expected KEY: VALUE", stmt.offset);
        const Piece key = parts[0];
        // The value runs to the end of the statement, colons included.
        const std::size_t colon = parts[1].offset;
        Piece value = make_piece(doc, colon, stmt.offset + stmt.text.size());
        if (key.text == "source") {
            source = signature_at(doc, value);
        } else if (key.text == "target") {
            if (graphical) doc.syntax("graphical schemes always target graphs", key.offset);
            target = signature_at(doc, value);
            rels.assign(target->size(), std::nullopt);
        } else if (key.text == "p") {
            if (value.text.empty() || value.text.find_first_not_of("0123456789") != std::string::npos ||
                value.text.size() > 3 || std::stoul(value.text) == 0) {
                doc.syntax("p must be a positive integer", value.offset);
            }
            p = std::stoul(value.text);
        } else if (key.text == "loops") {
            if (!graphical) doc.syntax("'loops' applies to graphical schemes only", key.offset);
            if (value.text == "drop") loops = LoopPolicy::Drop;
            else if (value.text == "keep") loops = LoopPolicy::Keep;
            else doc.syntax("loops must be drop or keep", value.offset);
        } else if (key.text.rfind("class", 0) == 0 && key.text.find('(') == std::string::npos) {
            need_header(key.offset);
            auto label = trim(key.text.substr(5));
            if (!is_ident(label)) doc.syntax("expected a class label", key.offset);
            const auto& v = value.text;
            auto size_at = v.rfind("size");
            auto comma = size_at == std::string::npos ? std::string::npos : v.rfind(',', size_at);
            if (v.rfind("eta", 0) != 0 || comma == std::string::npos) {
                doc.syntax("expected eta=FORMULA, size=POLY", value.offset);
            }
            auto eta_eq = v.find('=');
            auto size_eq = v.find('=', size_at);
            if (size_eq == std::string::npos || trim(v.substr(3, eta_eq - 3)) != "" ||
                trim(v.substr(comma + 1, size_at - comma - 1)) != "" ||
                trim(v.substr(size_at + 4, size_eq - size_at - 4)) != "") {
                doc.syntax("expected eta=FORMULA, size=POLY", value.offset);
            }
            Piece eta = make_piece(doc, value.offset + eta_eq + 1, value.offset + comma);
            Piece poly = make_piece(doc, value.offset + size_eq + 1, value.offset + v.size());
            auto vars = block_vars(*p, 1);
            auto f = parse_formula(eta.text, *source, vars, doc.pos(eta.offset));
            IntPolynomial q;
            try {
                q = parse_polynomial(poly.text);
            } catch (const ParseError& e) {
                auto at = doc.pos(poly.offset + e.column() - 1);
                throw ParseError(e.detail(), at.line, at.column);
            } catch (const Error& e) {
                doc.fail(e.code(), e.what(), poly.offset);
            }
            certificates.push_back({std::move(f), std::move(q)});
        } else if (key.text.find('(') != std::string::npos) {
            need_header(key.offset);
            auto d = definition(doc, key, value);
            if (d.name == "domain") {
                check_groups(doc, d, 1, *p);
                if (domain) doc.fail(ErrorCode::InvalidArgument, "domain defined twice", d.offset);
                domain = formula_of(doc, d, *source);
            } else if (d.name == "equiv") {
                if (graphical) doc.syntax("graphical schemes have no equivalence", d.offset);
                check_groups(doc, d, 2, *p);
                if (equiv) doc.fail(ErrorCode::InvalidArgument, "equiv defined twice", d.offset);
                equiv = formula_of(doc, d, *source);
            } else if (graphical) {
                if (d.name != "edge") {
                    doc.fail(ErrorCode::UnknownSymbol, "unknown relation '" + d.name + "'", d.offset);
                }
                check_groups(doc, d, 2, *p);
                if (edge) doc.fail(ErrorCode::InvalidArgument, "edge defined twice", d.offset);
                edge = formula_of(doc, d, *source);
            } else {
                auto idx = target->find(d.name);
                if (!idx) doc.fail(ErrorCode::UnknownSymbol, "unknown relation '" + d.name + "'", d.offset);
                check_groups(doc, d, static_cast<std::size_t>((*target)[*idx].arity), *p);
                if (rels[*idx]) {
                    doc.fail(ErrorCode::InvalidArgument, "relation '" + d.name + "' defined twice", d.offset);
                }
                rels[*idx] = formula_of(doc, d, *source);
            }
        } else {
            doc.syntax("unknown key '" + key.text + "'", key.offset);
        }
    }

    if (!source || !p) doc.syntax("scheme needs source and p", body_end);
    if (!domain) doc.fail(ErrorCode::InvalidArgument, "scheme has no domain formula", body_end);
    if (graphical) {
        if (!edge) doc.fail(ErrorCode::InvalidArgument, "graphical scheme has no edge formula", body_end);
        GraphicalScheme g{name, *p, *source, *domain, *edge, loops.value_or(LoopPolicy::Drop)};
        validate_scheme(g);
        return g;
    }
    if (!target) doc.syntax("scheme needs a target", body_end);
    InterpretationScheme s;
    s.name = name;
    s.p = *p;
    s.source = *source;
    s.target = *target;
    s.rho0 = *domain;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        if (!rels[r]) {
            doc.fail(ErrorCode::InvalidArgument, "no formula for relation '" + (*target)[r].name + "'",
                     body_end);
        }
        s.rhos.push_back(*rels[r]);
    }
    if (!equiv) {
        if (!certificates.empty()) doc.syntax("class certificates need an equiv formula", body_end);
        validate_scheme(s);
        return s;
    }
    QuotientScheme q{std::move(s), *equiv, std::move(certificates)};
    validate_scheme(q);
    return q;
}

namespace {

std::string head(const Formula& f, const std::string& name, std::size_t p) {
    auto vars = f.free_vars();
    std::string out = name + "(";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += (i % p == 0) ? "; " : ",";
        out += vars[i];
    }
    return out + ")";
}

} // namespace

std::string scheme_to_text(const Scheme& scheme) {
    std::ostringstream out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GraphicalScheme>) {
                out << "graphical " << s.name << " {\n";
                out << "  source: " << signature_to_text(s.source) << ";\n";
                out << "  p: " << s.p << ";\n";
                out << "  " << head(s.iota, "domain", s.p) << ": " << s.iota.to_string() << ";\n";
                out << "  " << head(s.rho, "edge", s.p) << ": " << s.rho.to_string() << ";\n";
                out << "  loops: " << (s.loops == LoopPolicy::Drop ? "drop" : "keep") << ";\n";
            } else {
                const InterpretationScheme* base;
                if constexpr (std::is_same_v<T, QuotientScheme>) {
                    base = &s.base;
                } else {
                    base = &s;
                }
                out << "interpretation " << base->name << " {\n";
                out << "  source: " << signature_to_text(base->source) << ";\n";
                out << "  target: " << signature_to_text(base->target) << ";\n";
                out << "  p: " << base->p << ";\n";
                out << "  " << head(base->rho0, "domain", base->p) << ": " << base->rho0.to_string()
                    << ";\n";
                for (std::size_t i = 0; i < base->rhos.size(); ++i) {
                    out << "  " << head(base->rhos[i], base->target[i].name, base->p) << ": "
                        << base->rhos[i].to_string() << ";\n";
                }
                if constexpr (std::is_same_v<T, QuotientScheme>) {
                    out << "  " << head(s.varpi, "equiv", s.base.p) << ": " << s.varpi.to_string()
                        << ";\n";
                    for (std::size_t i = 0; i < s.certificates.size(); ++i) {
                        out << "  class c" << i + 1 << ": eta=" << s.certificates[i].eta.to_string()
                            << ", size=" << s.certificates[i].size.to_string() << ";\n";
                    }
                }
            }
            out << "}\n";
        },
        scheme);
    return out.str();
}

Scheme load_scheme(const std::string& path) { return parse_scheme_text(read_text_file(path)); }

void save_scheme(const std::string& path, const Scheme& scheme) {
    write_text_file(path, scheme_to_text(scheme));
}

} // namespace polyseq
