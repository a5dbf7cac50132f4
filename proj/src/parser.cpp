#include "allog/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace allog {

std::string to_string(const Diagnostic& d) {
    return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
}

namespace {

enum class Tok { ident, quoted, number, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1, col = 1;
};

const std::set<std::string> kKeywords = {"top", "bot", "not", "and", "or", "all", "some", "concept", "role", "individual"};

std::vector<Token> lex(std::string_view src, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n = 1) {
        for (; n > 0 && i < src.size(); --n, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance();
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::ident;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                t.text += src[i];
                advance();
            }
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::number;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                t.text += src[i];
                advance();
            }
        } else if (c == '\'') {
            t.kind = Tok::quoted;
            advance();
            bool closed = false;
            while (i < src.size()) {
                if (src[i] == '\\' && i + 1 < src.size()) {
                    advance();
                    t.text += src[i];
                    advance();
                } else if (src[i] == '\'') {
                    advance();
                    closed = true;
                    break;
                } else if (src[i] == '\n') {
                    break;
                } else {
                    t.text += src[i];
                    advance();
                }
            }
            if (!closed) diags.push_back({t.line, t.col, "unterminated quoted constant"});
        } else {
            t.kind = Tok::punct;
            auto two = src.substr(i, 2);
            if (two == ":-" || two == "==" || two == "<=" || two == "?-") {
                t.text = std::string(two);
                advance(2);
            } else if (std::string_view(".,():&").find(c) != std::string_view::npos) {
                t.text = std::string(1, c);
                advance();
            } else {
                diags.push_back({line, col, std::string("unexpected character '") + c + "'"});
                advance();
                continue;
            }
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

struct ParseError {};

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::end; }
    bool is(const char* p, std::size_t k = 0) const { return peek(k).kind == Tok::punct && peek(k).text == p; }
    bool is_word(const char* w, std::size_t k = 0) const { return peek(k).kind == Tok::ident && peek(k).text == w; }
    Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        diags_.push_back({t.line, t.col, msg});
        throw ParseError{};
    }

    Token expect(const char* p) {
        if (!is(p)) fail(peek(), std::string("expected '") + p + "'" + found());
        return take();
    }

    std::string found() const {
        if (at_end()) return " at end of input";
        return " before '" + peek().text + "'";
    }

    // Skip past the next period.
    void recover() {
        while (!at_end() && !is(".")) take();
        if (is(".")) take();
    }

    struct Use {
        enum Kind { concept_name, role_name, individual } kind;
        std::string name;
        std::size_t line, col;
    };
    std::vector<Use> uses;

    Concept concept_expr() {
        Concept c = conj();
        while (is_word("or")) {
            take();
            c = Concept::disjunction(c, conj());
        }
        return c;
    }

    Concept conj() {
        Concept c = unary();
        while (is_word("and")) {
            take();
            c = Concept::conjunction(c, unary());
        }
        return c;
    }

    Concept unary() {
        if (is_word("not")) {
            take();
            return Concept::negation(unary());
        }
        return primary();
    }

    Concept primary() {
        if (is("(")) {
            take();
            Concept c = concept_expr();
            expect(")");
            return c;
        }
        const Token& t = peek();
        if (t.kind != Tok::ident) fail(t, "expected a concept" + found());
        if (t.text == "top") {
            take();
            return Concept::top();
        }
        if (t.text == "bot") {
            take();
            return Concept::bottom();
        }
        if ((t.text == "all" || t.text == "some") && is("(", 1)) {
            bool all = t.text == "all";
            take();
            take();
            Token r = take();
            if (r.kind != Tok::ident || kKeywords.count(r.text)) fail(r, "expected a role name");
            uses.push_back({Use::role_name, r.text, r.line, r.col});
            expect(",");
            Concept f = concept_expr();
            expect(")");
            return all ? Concept::universal(r.text, f) : Concept::existential(r.text, f);
        }
        if (kKeywords.count(t.text)) fail(t, "unexpected keyword '" + t.text + "'");
        Token n = take();
        uses.push_back({Use::concept_name, n.text, n.line, n.col});
        return Concept::atomic(n.text);
    }

    bool is_name_token(std::size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == Tok::ident || t.kind == Tok::quoted || t.kind == Tok::number;
    }

    std::string individual() {
        const Token& t = peek();
        if (!is_name_token()) fail(t, "expected an individual" + found());
        if (t.kind == Tok::ident && kKeywords.count(t.text)) fail(t, "unexpected keyword '" + t.text + "'");
        Token n = take();
        uses.push_back({Use::individual, n.text, n.line, n.col});
        return n.text;
    }

    Term term() {
        const Token& t = peek();
        if (t.kind == Tok::quoted || t.kind == Tok::number) return Term::constant(take().text);
        if (t.kind == Tok::ident) {
            Token n = take();
            if (std::isupper(static_cast<unsigned char>(n.text[0])) || n.text[0] == '_') return Term::var(n.text);
            return Term::constant(n.text);
        }
        fail(t, "expected a term" + found());
    }

    struct ArityUse {
        std::size_t arity, line, col;
    };
    std::map<std::string, ArityUse> arities;

    Atom atom() {
        const Token& t = peek();
        if (t.kind != Tok::ident || !std::islower(static_cast<unsigned char>(t.text[0])))
            fail(t, "expected a predicate" + found());
        Token n = take();
        Atom a{n.text, {}};
        if (is("(")) {
            take();
            a.args.push_back(term());
            while (is(",")) {
                take();
                a.args.push_back(term());
            }
            expect(")");
        }
        auto [it, fresh] = arities.emplace(a.predicate, ArityUse{a.arity(), n.line, n.col});
        if (!fresh && it->second.arity != a.arity())
            diags_.push_back({n.line, n.col,
                              "predicate " + a.predicate + " used with arity " + std::to_string(a.arity()) +
                                  ", earlier with arity " + std::to_string(it->second.arity) + " at " +
                                  std::to_string(it->second.line) + ":" + std::to_string(it->second.col)});
        return a;
    }

    Constraint constraint() {
        Term t = term();
        expect(":");
        return {t, concept_expr()};
    }

    void body(Clause& c) {
        if (!is("&")) {
            c.body.push_back(atom());
            while (is(",")) {
                take();
                c.body.push_back(atom());
            }
        }
        if (is("&")) {
            take();
            c.constraints.push_back(constraint());
            while (is(",")) {
                take();
                c.constraints.push_back(constraint());
            }
        }
    }

    Clause clause() {
        Clause c;
        if (is("?-")) {
            take();
            body(c);
            return c;
        }
        c.head = atom();
        if (is(":-")) {
            take();
            body(c);
        }
        return c;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic>& diags_;
};

const char* kind_name(Parser::Use::Kind k) {
    switch (k) {
    case Parser::Use::concept_name: return "concept";
    case Parser::Use::role_name: return "role";
    case Parser::Use::individual: return "individual";
    }
    return "";
}

}  // namespace

Parsed<Ontology> parse_ontology(std::string_view text) {
    Parsed<Ontology> out;
    auto& diags = out.diagnostics;
    Parser p(lex(text, diags), diags);
    Ontology o;
    std::map<std::string, Parser::Use::Kind> declared;

    while (!p.at_end()) {
        try {
            if ((p.is_word("concept") || p.is_word("role") || p.is_word("individual")) && p.is_name_token(1)) {
                std::string kw = p.take().text;
                auto kind = kw == "concept" ? Parser::Use::concept_name
                            : kw == "role"  ? Parser::Use::role_name
                                            : Parser::Use::individual;
                for (;;) {
                    Token n = p.peek();
                    if (!p.is_name_token() || (n.kind != Tok::ident && kind != Parser::Use::individual))
                        p.fail(n, "expected a " + std::string(kind_name(kind)) + " name" + p.found());
                    if (n.kind == Tok::ident && kKeywords.count(n.text)) p.fail(n, "'" + n.text + "' is reserved");
                    p.take();
                    auto [it, fresh] = declared.emplace(n.text, kind);
                    if (!fresh && it->second != kind)
                        diags.push_back({n.line, n.col,
                                         n.text + " declared as " + kind_name(kind) + " and as " + kind_name(it->second)});
                    if (kind == Parser::Use::concept_name) o.declare_concept(n.text);
                    else if (kind == Parser::Use::role_name) o.declare_role(n.text);
                    else o.declare_individual(n.text);
                    if (!p.is(",")) break;
                    p.take();
                }
                p.expect(".");
            } else if (p.is("(")) {
                p.take();
                std::string a = p.individual();
                p.expect(",");
                std::string b = p.individual();
                p.expect(")");
                p.expect(":");
                Token r = p.take();
                if (r.kind != Tok::ident) p.fail(r, "expected a role name");
                p.uses.push_back({Parser::Use::role_name, r.text, r.line, r.col});
                p.expect(".");
                o.role_assertions.push_back({a, b, r.text});
            } else if (p.is_name_token() && p.is(":", 1)) {
                std::string a = p.individual();
                p.take();
                Concept c = p.concept_expr();
                p.expect(".");
                o.concept_assertions.push_back({a, c});
            } else {
                Concept lhs = p.concept_expr();
                Axiom ax;
                if (p.is("==")) ax.kind = Axiom::Kind::equivalence;
                else if (p.is("<=")) ax.kind = Axiom::Kind::subsumption;
                else p.fail(p.peek(), "expected '==' or '<='" + p.found());
                p.take();
                ax.lhs = lhs;
                ax.rhs = p.concept_expr();
                p.expect(".");
                o.axioms.push_back(ax);
            }
        } catch (const ParseError&) {
            p.recover();
        }
    }
    for (const auto& u : p.uses) {
        auto it = declared.find(u.name);
        if (it == declared.end())
            diags.push_back({u.line, u.col, "undeclared " + std::string(kind_name(u.kind)) + " " + u.name});
        else if (it->second != u.kind)
            diags.push_back({u.line, u.col, u.name + " is a " + kind_name(it->second) + ", not a " + kind_name(u.kind)});
    }
    if (diags.empty()) out.value = std::move(o);
    return out;
}

Parsed<Program> parse_program(std::string_view text) {
    Parsed<Program> out;
    auto& diags = out.diagnostics;
    Parser p(lex(text, diags), diags);
    Program prog;
    while (!p.at_end()) {
        try {
            Clause c = p.clause();
            p.expect(".");
            (c.is_query() ? prog.queries : prog.clauses).push_back(std::move(c));
        } catch (const ParseError&) {
            p.recover();
        }
    }
    if (diags.empty()) out.value = std::move(prog);
    return out;
}

Parsed<Clause> parse_clause(std::string_view text) {
    Parsed<Clause> out;
    auto& diags = out.diagnostics;
    Parser p(lex(text, diags), diags);
    try {
        Clause c = p.clause();
        if (p.is(".")) p.take();
        if (!p.at_end()) p.fail(p.peek(), "unexpected input after clause");
        if (diags.empty()) out.value = std::move(c);
    } catch (const ParseError&) {
    }
    return out;
}

Parsed<Concept> parse_concept(std::string_view text) {
    Parsed<Concept> out;
    auto& diags = out.diagnostics;
    Parser p(lex(text, diags), diags);
    try {
        Concept c = p.concept_expr();
        if (!p.at_end()) p.fail(p.peek(), "unexpected input after concept");
        if (diags.empty()) out.value = c;
    } catch (const ParseError&) {
    }
    return out;
}

std::string print_ontology(const Ontology& o) {
    std::ostringstream s;
    for (const auto& n : o.concept_names()) s << "concept " << n << ".\n";
    for (const auto& n : o.role_names()) s << "role " << n << ".\n";
    for (const auto& n : o.individuals()) s << "individual " << quote_constant(n) << ".\n";
    for (const auto& ax : o.axioms)
        s << to_string(ax.lhs) << (ax.kind == Axiom::Kind::equivalence ? " == " : " <= ") << to_string(ax.rhs) << ".\n";
    for (const auto& a : o.concept_assertions) s << quote_constant(a.individual) << " : " << to_string(a.type) << ".\n";
    for (const auto& a : o.role_assertions)
        s << "(" << quote_constant(a.subject) << "," << quote_constant(a.object) << ") : " << a.role << ".\n";
    return s.str();
}

std::string print_program(const Program& p) {
    std::string out;
    for (const auto& c : p.clauses) out += to_string(c) + "\n";
    for (const auto& q : p.queries) out += to_string(q) + "\n";
    return out;
}

}  // namespace allog
