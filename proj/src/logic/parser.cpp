#include "polyseq/parser.hpp"

#include "polyseq/error.hpp"

#include <cctype>
#include <map>

namespace polyseq {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Eq, Not, And, Or, Implies, Iff, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view text, SourcePos origin) {
    std::vector<Token> out;
    std::size_t line = origin.line, column = origin.column;
    std::size_t i = 0;
    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t{Tok::End, "", line, column};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(text.substr(i, j - i));
            out.push_back(t);
            advance(j - i);
            continue;
        }
        std::size_t len = 1;
        switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case ',': t.kind = Tok::Comma; break;
        case '=': t.kind = Tok::Eq; break;
        case '!': t.kind = Tok::Not; break;
        case '&': t.kind = Tok::And; break;
        case '|': t.kind = Tok::Or; break;
        case '-':
            if (text.substr(i, 2) != "->") throw ParseError("expected '->'", line, column);
            t.kind = Tok::Implies;
            len = 2;
            break;
        case '<':
            if (text.substr(i, 3) != "<->") throw ParseError("expected '<->'", line, column);
            t.kind = Tok::Iff;
            len = 3;
            break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, column);
        }
        t.text = std::string(text.substr(i, len));
        out.push_back(t);
        advance(len);
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

std::string where(const Token& t) {
    return " at line " + std::to_string(t.line) + ", column " + std::to_string(t.column);
}

class Parser {
public:
    Parser(std::vector<Token> tokens, const Signature& sig,
           const std::optional<std::vector<std::string>>& declared)
        : toks_(std::move(tokens)), sig_(sig), declared_(declared) {}

    Formula run() {
        NodePtr root = formula();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return finish(std::move(root));
    }

private:
    struct Entry {
        std::string name;
        bool free;
    };

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        throw ParseError(msg, t.line, t.column);
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) {
            fail(std::string("expected ") + what +
                 (peek().kind == Tok::End ? " before end of input"
                                          : ", found '" + peek().text + "'"));
        }
        return next();
    }

    NodePtr formula() { return iff(); }

    NodePtr iff() {
        NodePtr left = imp();
        while (accept(Tok::Iff)) left = make_iff(left, imp());
        return left;
    }

    NodePtr imp() {
        NodePtr left = disj();
        if (accept(Tok::Implies)) return make_implies(left, imp());
        return left;
    }

    NodePtr disj() {
        std::vector<NodePtr> kids{conj()};
        while (accept(Tok::Or)) kids.push_back(conj());
        return make_or(std::move(kids));
    }

    NodePtr conj() {
        std::vector<NodePtr> kids{unary()};
        while (accept(Tok::And)) kids.push_back(unary());
        return make_and(std::move(kids));
    }

    NodePtr unary() {
        if (accept(Tok::Not)) return make_not(unary());
        if (accept(Tok::LParen)) {
            NodePtr inner = formula();
            expect(Tok::RParen, "')'");
            return inner;
        }
        return atom();
    }

    std::size_t variable(const Token& t) {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
            if (entries_[*it].name == t.text) return *it;
        }
        auto found = free_.find(t.text);
        if (found != free_.end()) return found->second;
        if (declared_) {
            bool ok = false;
            for (const auto& d : *declared_) ok = ok || d == t.text;
            if (!ok) {
                throw Error(ErrorCode::UndeclaredVariable,
                            "undeclared variable '" + t.text + "'" + where(t));
            }
        }
        entries_.push_back({t.text, true});
        free_[t.text] = entries_.size() - 1;
        return entries_.size() - 1;
    }

    NodePtr atom() {
        if (peek().kind != Tok::Ident) {
            fail(peek().kind == Tok::End ? "unexpected end of input"
                                         : "unexpected '" + peek().text + "'");
        }
        const Token name = next();
        if (name.text == "true") return make_true();
        if (name.text == "false") return make_false();
        if (name.text == "exists" || name.text == "forall") {
            const Token& var = expect(Tok::Ident, "a variable");
            entries_.push_back({var.text, false});
            const std::size_t slot = entries_.size() - 1;
            expect(Tok::LParen, "'('");
            scope_.push_back(slot);
            NodePtr body = formula();
            scope_.pop_back();
            expect(Tok::RParen, "')'");
            return name.text == "exists" ? make_exists(slot, body) : make_forall(slot, body);
        }
        if (accept(Tok::LParen)) {
            auto idx = sig_.find(name.text);
            if (!idx) {
                throw Error(ErrorCode::UnknownSymbol,
                            "unknown symbol '" + name.text + "'" + where(name));
            }
            std::vector<std::size_t> vars;
            do {
                vars.push_back(variable(expect(Tok::Ident, "a variable")));
            } while (accept(Tok::Comma));
            expect(Tok::RParen, "')'");
            const auto arity = static_cast<std::size_t>(sig_[*idx].arity);
            if (vars.size() != arity) {
                throw Error(ErrorCode::ArityMismatch,
                            "symbol '" + name.text + "' expects " + std::to_string(arity) +
                                " arguments, got " + std::to_string(vars.size()) + where(name));
            }
            return make_atom(*idx, std::move(vars));
        }
        if (peek().kind == Tok::Eq) {
            const std::size_t a = variable(name);
            next();
            const std::size_t b = variable(expect(Tok::Ident, "a variable"));
            return make_eq(a, b);
        }
        fail("expected '(' or '=' after '" + name.text + "'");
    }

    NodePtr remap(const Node& n, const std::vector<std::size_t>& map) const {
        auto out = std::make_shared<Node>(n);
        for (auto& v : out->vars) v = map[v];
        for (auto& k : out->kids) k = remap(*k, map);
        return out;
    }

    Formula finish(NodePtr root) {
        std::vector<std::string> names;
        std::vector<std::size_t> map(entries_.size());
        if (declared_) {
            for (const auto& d : *declared_) {
                for (const auto& prev : names) {
                    if (prev == d) {
                        throw Error(ErrorCode::InvalidArgument,
                                    "variable '" + d + "' declared twice");
                    }
                }
                names.push_back(d);
                auto it = free_.find(d);
                if (it != free_.end()) map[it->second] = names.size() - 1;
            }
        } else {
            for (std::size_t i = 0; i < entries_.size(); ++i) {
                if (!entries_[i].free) continue;
                map[i] = names.size();
                names.push_back(entries_[i].name);
            }
        }
        const std::size_t free_count = names.size();
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].free) continue;
            map[i] = names.size();
            names.push_back(entries_[i].name);
        }
        return Formula(sig_, std::move(names), free_count, remap(*root, map));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Signature& sig_;
    const std::optional<std::vector<std::string>>& declared_;
    std::vector<Entry> entries_;
    std::map<std::string, std::size_t> free_;
    std::vector<std::size_t> scope_;
};

} // namespace

Formula parse_formula(std::string_view text, const Signature& signature,
                      const std::optional<std::vector<std::string>>& declared, SourcePos origin) {
    return Parser(tokenize(text, origin), signature, declared).run();
}

} // namespace polyseq
