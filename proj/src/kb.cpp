#include "allog/kb.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

namespace allog {

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_const(); });
}

bool Clause::is_ground() const {
    if (head && !head->is_ground()) return false;
    for (const auto& a : body)
        if (!a.is_ground()) return false;
    for (const auto& c : constraints)
        if (c.term.is_var()) return false;
    return true;
}

namespace {

bool declare(const std::string& n, std::vector<std::string>& v, std::set<std::string>& s) {
    if (!s.insert(n).second) return false;
    v.push_back(n);
    return true;
}

void push_unique(std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

bool Ontology::declare_concept(const std::string& n) { return declare(n, concepts_, concept_set_); }
bool Ontology::declare_role(const std::string& n) { return declare(n, roles_, role_set_); }
bool Ontology::declare_individual(const std::string& n) { return declare(n, individuals_, individual_set_); }

std::vector<std::string> KnowledgeBase::program_constants() const {
    std::vector<std::string> out;
    for (const auto& c : program)
        for (const auto& k : constants(c)) push_unique(out, k);
    return out;
}

std::string quote_constant(const std::string& name) {
    bool ident = !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
    bool numeral = !name.empty();
    for (char ch : name) {
        auto u = static_cast<unsigned char>(ch);
        if (!(std::isalnum(u) || ch == '_')) ident = false;
        if (!std::isdigit(u)) numeral = false;
    }
    if (ident || numeral) return name;
    std::string out = "'";
    for (char ch : name) {
        if (ch == '\'' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "'";
}

std::string to_string(const Term& t) { return t.is_var() ? t.name : quote_constant(t.name); }

std::string to_string(const Atom& a) {
    std::string out = a.predicate + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += to_string(a.args[i]);
    }
    return out + ")";
}

std::string to_string(const Constraint& c) { return to_string(c.term) + ":" + to_string(c.type); }

std::string to_string(const Clause& c) {
    std::string out;
    if (c.head) {
        out = to_string(*c.head);
        if (c.body.empty() && c.constraints.empty()) return out + ".";
        out += " :- ";
    } else {
        out = "?- ";
    }
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (i) out += ", ";
        out += to_string(c.body[i]);
    }
    if (!c.constraints.empty()) {
        out += c.body.empty() ? "& " : " & ";
        for (std::size_t i = 0; i < c.constraints.size(); ++i) {
            if (i) out += ", ";
            out += to_string(c.constraints[i]);
        }
    }
    return out + ".";
}

std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s) {
        if (!first) out += ", ";
        first = false;
        out += v + "/" + to_string(t);
    }
    return out + "}";
}

std::vector<std::string> variables(const Atom& a) {
    std::vector<std::string> out;
    for (const auto& t : a.args)
        if (t.is_var()) push_unique(out, t.name);
    return out;
}

std::vector<Term> terms(const Clause& c) {
    std::vector<Term> out;
    auto add = [&](const Term& t) {
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    };
    if (c.head)
        for (const auto& t : c.head->args) add(t);
    for (const auto& a : c.body)
        for (const auto& t : a.args) add(t);
    for (const auto& k : c.constraints) add(k.term);
    return out;
}

std::vector<std::string> variables(const Clause& c) {
    std::vector<std::string> out;
    for (const auto& t : terms(c))
        if (t.is_var()) out.push_back(t.name);
    return out;
}

std::vector<std::string> constants(const Clause& c) {
    std::vector<std::string> out;
    for (const auto& t : terms(c))
        if (t.is_const()) out.push_back(t.name);
    return out;
}

Term substitute(const Substitution& s, const Term& t) {
    if (!t.is_var()) return t;
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
}

Atom substitute(const Substitution& s, const Atom& a) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(substitute(s, t));
    return out;
}

Constraint substitute(const Substitution& s, const Constraint& c) { return {substitute(s, c.term), c.type}; }

Clause apply_substitution(const Clause& c, const Substitution& s) {
    Clause out;
    if (c.head) out.head = substitute(s, *c.head);
    for (const auto& a : c.body) out.body.push_back(substitute(s, a));
    for (const auto& k : c.constraints) out.constraints.push_back(substitute(s, k));
    return out;
}

bool is_oi_substitution(const Substitution& s, const Clause& c) {
    std::vector<Term> images;
    for (const auto& t : terms(c)) images.push_back(substitute(s, t));
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (images[i] == images[j]) return false;
    return true;
}

bool is_linked_connected(const Clause& c) {
    std::set<std::string> datalog_vars;
    if (c.head)
        for (const auto& v : variables(*c.head)) datalog_vars.insert(v);
    for (const auto& a : c.body)
        for (const auto& v : variables(a)) datalog_vars.insert(v);
    for (const auto& k : c.constraints)
        if (k.term.is_var() && !datalog_vars.count(k.term.name)) return false;

    std::set<std::string> reached;
    if (c.head)
        for (const auto& v : variables(*c.head)) reached.insert(v);
    std::vector<bool> linked(c.body.size(), false);
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (linked[i]) continue;
            auto vs = variables(c.body[i]);
            bool touches = std::any_of(vs.begin(), vs.end(), [&](const std::string& v) { return reached.count(v); });
            // without a head the first atom anchors the clause
            if (!c.head && reached.empty()) touches = true;
            if (!touches) continue;
            linked[i] = grew = true;
            reached.insert(vs.begin(), vs.end());
        }
    }
    return std::all_of(linked.begin(), linked.end(), [](bool b) { return b; });
}

std::string canonical_variable(std::size_t i) {
    std::string name(1, static_cast<char>('A' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    return name;
}

namespace {

struct Rendering {
    std::string text;
    Clause clause;
};

Rendering render_with_order(const Clause& c, const std::vector<std::size_t>& order) {
    Substitution ren;
    std::size_t next = 0;
    auto visit = [&](const Term& t) {
        if (t.is_var() && !ren.count(t.name)) ren[t.name] = Term::var(canonical_variable(next++));
    };
    if (c.head)
        for (const auto& t : c.head->args) visit(t);
    for (auto i : order)
        for (const auto& t : c.body[i].args) visit(t);
    for (const auto& k : c.constraints) visit(k.term);

    Clause out;
    if (c.head) out.head = substitute(ren, *c.head);
    for (auto i : order) out.body.push_back(substitute(ren, c.body[i]));
    std::vector<std::pair<std::string, Constraint>> ks;
    for (const auto& k : c.constraints) {
        auto r = substitute(ren, k);
        ks.emplace_back(to_string(r), r);
    }
    std::sort(ks.begin(), ks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ks.erase(std::unique(ks.begin(), ks.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             ks.end());
    for (auto& [_, k] : ks) out.constraints.push_back(k);
    return {to_string(out), out};
}

constexpr std::size_t kMaxPermutedAtoms = 8;

}  // namespace

Clause canonical_form(const Clause& c) {
    std::vector<std::size_t> order(c.body.size());
    std::iota(order.begin(), order.end(), 0);
    if (c.body.size() > kMaxPermutedAtoms) {
        // fall back to a rename-independent sort key
        auto key = [&](std::size_t i) {
            std::string k = c.body[i].predicate;
            for (const auto& t : c.body[i].args) k += t.is_var() ? "|?" : "|" + t.name;
            return k;
        };
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
        return render_with_order(c, order).clause;
    }
    Rendering best = render_with_order(c, order);
    while (std::next_permutation(order.begin(), order.end())) {
        Rendering r = render_with_order(c, order);
        if (r.text < best.text) best = std::move(r);
    }
    return best.clause;
}

std::string canonical_text(const Clause& c) { return to_string(canonical_form(c)); }

namespace {

bool match_term(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                std::map<std::string, std::string>& bwd) {
    if (a.kind != b.kind) return false;
    if (a.is_const()) return a.name == b.name;
    auto f = fwd.find(a.name);
    auto r = bwd.find(b.name);
    if (f == fwd.end() && r == bwd.end()) {
        fwd[a.name] = b.name;
        bwd[b.name] = a.name;
        return true;
    }
    return f != fwd.end() && r != bwd.end() && f->second == b.name && r->second == a.name;
}

bool match_atom(const Atom& a, const Atom& b, std::map<std::string, std::string>& fwd,
                std::map<std::string, std::string>& bwd) {
    if (a.predicate != b.predicate || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (!match_term(a.args[i], b.args[i], fwd, bwd)) return false;
    return true;
}

std::vector<Constraint> dedup_constraints(std::vector<Constraint> ks) {
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

}  // namespace

bool is_variant(const Clause& a, const Clause& b) {
    if (a.head.has_value() != b.head.has_value() || a.body.size() != b.body.size()) return false;
    auto ka = dedup_constraints(a.constraints), kb = dedup_constraints(b.constraints);
    if (ka.size() != kb.size()) return false;

    std::map<std::string, std::string> fwd, bwd;
    if (a.head && !match_atom(*a.head, *b.head, fwd, bwd)) return false;

    std::vector<bool> used(b.body.size(), false);
    std::function<bool(std::size_t, std::map<std::string, std::string>&, std::map<std::string, std::string>&)> go;
    go = [&](std::size_t i, std::map<std::string, std::string>& f, std::map<std::string, std::string>& r) -> bool {
        (void)r;
        if (i == a.body.size()) {
            std::vector<Constraint> mapped;
            for (const auto& k : ka) {
                Term t = k.term;
                if (t.is_var()) {
                    auto it = f.find(t.name);
                    if (it == f.end()) return false;
                    t.name = it->second;
                }
                mapped.push_back({t, k.type});
            }
            return dedup_constraints(mapped) == kb;
        }
        for (std::size_t j = 0; j < b.body.size(); ++j) {
            if (used[j]) continue;
            auto f2 = f;
            auto r2 = r;
            if (!match_atom(a.body[i], b.body[j], f2, r2)) continue;
            used[j] = true;
            bool ok = go(i + 1, f2, r2);
            used[j] = false;
            if (ok) return true;
        }
        return false;
    };
    return go(0, fwd, bwd);
}

std::string to_string(Violation::Kind k) {
    switch (k) {
    case Violation::Kind::alphabet_clash: return "alphabet-clash";
    case Violation::Kind::unknown_constant: return "unknown-constant";
    case Violation::Kind::unsafe_constraint: return "unsafe-constraint";
    }
    return "?";
}

ValidationReport validate_kb(const Ontology& sigma, const std::vector<Clause>& program) {
    ValidationReport r;
    std::set<std::string> clashed, missing;
    for (std::size_t i = 0; i < program.size(); ++i) {
        const Clause& c = program[i];
        const std::string text = to_string(c);
        std::vector<const Atom*> atoms;
        if (c.head) atoms.push_back(&*c.head);
        for (const auto& a : c.body) atoms.push_back(&a);
        for (const Atom* a : atoms)
            if ((sigma.has_concept(a->predicate) || sigma.has_role(a->predicate)) && clashed.insert(a->predicate).second)
                r.violations.push_back({Violation::Kind::alphabet_clash, i, a->predicate,
                                        "predicate " + a->predicate + " is also an ontology name, in " + text});
        for (const auto& k : constants(c))
            if (!sigma.has_individual(k) && missing.insert(k).second)
                r.violations.push_back({Violation::Kind::unknown_constant, i, k,
                                        "constant " + quote_constant(k) + " is not an individual, in " + text});
        std::set<std::string> datalog;
        for (const Atom* a : atoms)
            for (const auto& v : variables(*a)) datalog.insert(v);
        for (const auto& k : c.constraints)
            if (k.term.is_var() && !datalog.count(k.term.name))
                r.violations.push_back({Violation::Kind::unsafe_constraint, i, k.term.name,
                                        "variable " + k.term.name + " occurs only in constraints, in " + text});
    }
    return r;
}

}  // namespace allog
