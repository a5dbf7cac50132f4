#include "allog/concept.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace allog {

struct Concept::Node {
    ConceptKind kind;
    std::string name;
    std::vector<Concept> children;
    std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Concept Concept::make(ConceptKind k, std::string name, std::vector<Concept> children) {
    std::size_t h = mix(static_cast<std::size_t>(k) + 1, std::hash<std::string>{}(name));
    for (const auto& c : children) h = mix(h, c.hash());
    return Concept(std::make_shared<const Node>(Node{k, std::move(name), std::move(children), h}));
}

Concept::Concept() : Concept(top()) {}

Concept Concept::top() {
    static const Concept t = make(ConceptKind::top, "", {});
    return t;
}

Concept Concept::bottom() {
    static const Concept b = make(ConceptKind::bottom, "", {});
    return b;
}

Concept Concept::atomic(std::string name) { return make(ConceptKind::atomic, std::move(name), {}); }
Concept Concept::negation(const Concept& c) { return make(ConceptKind::negation, "", {c}); }
Concept Concept::conjunction(const Concept& a, const Concept& b) { return make(ConceptKind::conjunction, "", {a, b}); }
Concept Concept::disjunction(const Concept& a, const Concept& b) { return make(ConceptKind::disjunction, "", {a, b}); }
Concept Concept::universal(std::string role, const Concept& f) { return make(ConceptKind::universal, std::move(role), {f}); }
Concept Concept::existential(std::string role, const Concept& f) { return make(ConceptKind::existential, std::move(role), {f}); }

Concept Concept::conjunction(const std::vector<Concept>& parts) {
    if (parts.empty()) return top();
    Concept r = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) r = conjunction(r, parts[i]);
    return r;
}

Concept Concept::disjunction(const std::vector<Concept>& parts) {
    if (parts.empty()) return bottom();
    Concept r = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) r = disjunction(r, parts[i]);
    return r;
}

ConceptKind Concept::kind() const { return node_->kind; }
const std::string& Concept::name() const { return node_->name; }
std::size_t Concept::hash() const { return node_->hash; }

const Concept& Concept::left() const {
    assert(!node_->children.empty());
    return node_->children[0];
}

const Concept& Concept::right() const {
    assert(node_->children.size() == 2);
    return node_->children[1];
}

int compare(const Concept& a, const Concept& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    switch (a.kind()) {
    case ConceptKind::top:
    case ConceptKind::bottom:
    case ConceptKind::atomic:
        return 0;
    case ConceptKind::negation:
    case ConceptKind::universal:
    case ConceptKind::existential:
        return compare(a.left(), b.left());
    case ConceptKind::conjunction:
    case ConceptKind::disjunction:
        if (int c = compare(a.left(), b.left()); c != 0) return c;
        return compare(a.right(), b.right());
    }
    return 0;
}

bool operator==(const Concept& a, const Concept& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
}

bool operator<(const Concept& a, const Concept& b) { return compare(a, b) < 0; }

namespace {

Concept nnf_of(const Concept& c, bool negated) {
    switch (c.kind()) {
    case ConceptKind::top:
        return negated ? Concept::bottom() : c;
    case ConceptKind::bottom:
        return negated ? Concept::top() : c;
    case ConceptKind::atomic:
        return negated ? Concept::negation(c) : c;
    case ConceptKind::negation:
        return nnf_of(c.left(), !negated);
    case ConceptKind::conjunction:
        return negated ? Concept::disjunction(nnf_of(c.left(), true), nnf_of(c.right(), true))
                       : Concept::conjunction(nnf_of(c.left(), false), nnf_of(c.right(), false));
    case ConceptKind::disjunction:
        return negated ? Concept::conjunction(nnf_of(c.left(), true), nnf_of(c.right(), true))
                       : Concept::disjunction(nnf_of(c.left(), false), nnf_of(c.right(), false));
    case ConceptKind::universal:
        return negated ? Concept::existential(c.name(), nnf_of(c.filler(), true))
                       : Concept::universal(c.name(), nnf_of(c.filler(), false));
    case ConceptKind::existential:
        return negated ? Concept::universal(c.name(), nnf_of(c.filler(), true))
                       : Concept::existential(c.name(), nnf_of(c.filler(), false));
    }
    return c;
}

}  // namespace

Concept nnf(const Concept& c) { return nnf_of(c, false); }

bool is_nnf(const Concept& c) {
    switch (c.kind()) {
    case ConceptKind::top:
    case ConceptKind::bottom:
    case ConceptKind::atomic:
        return true;
    case ConceptKind::negation:
        return c.left().is_atomic();
    case ConceptKind::conjunction:
    case ConceptKind::disjunction:
        return is_nnf(c.left()) && is_nnf(c.right());
    case ConceptKind::universal:
    case ConceptKind::existential:
        return is_nnf(c.filler());
    }
    return false;
}

void collect_names(const Concept& c, std::vector<std::string>& concepts, std::vector<std::string>& roles) {
    auto add = [](std::vector<std::string>& v, const std::string& s) {
        if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
    };
    switch (c.kind()) {
    case ConceptKind::top:
    case ConceptKind::bottom:
        return;
    case ConceptKind::atomic:
        add(concepts, c.name());
        return;
    case ConceptKind::negation:
        collect_names(c.left(), concepts, roles);
        return;
    case ConceptKind::conjunction:
    case ConceptKind::disjunction:
        collect_names(c.left(), concepts, roles);
        collect_names(c.right(), concepts, roles);
        return;
    case ConceptKind::universal:
    case ConceptKind::existential:
        add(roles, c.name());
        collect_names(c.filler(), concepts, roles);
        return;
    }
}

namespace {

// 0: or, 1: and, 2: prefix / primary
int precedence(const Concept& c) {
    switch (c.kind()) {
    case ConceptKind::disjunction: return 0;
    case ConceptKind::conjunction: return 1;
    default: return 2;
    }
}

void print(const Concept& c, std::string& out);

void print_operand(const Concept& c, int min_prec, std::string& out) {
    if (precedence(c) < min_prec) {
        out += '(';
        print(c, out);
        out += ')';
    } else {
        print(c, out);
    }
}

void print(const Concept& c, std::string& out) {
    switch (c.kind()) {
    case ConceptKind::top: out += "top"; return;
    case ConceptKind::bottom: out += "bot"; return;
    case ConceptKind::atomic: out += c.name(); return;
    case ConceptKind::negation:
        out += "not ";
        print_operand(c.left(), 2, out);
        return;
    case ConceptKind::conjunction:
        // binary operators are left-associative; a right operand of equal precedence needs parentheses
        print_operand(c.left(), 1, out);
        out += " and ";
        print_operand(c.right(), 2, out);
        return;
    case ConceptKind::disjunction:
        print_operand(c.left(), 0, out);
        out += " or ";
        print_operand(c.right(), 1, out);
        return;
    case ConceptKind::universal:
    case ConceptKind::existential:
        out += c.kind() == ConceptKind::universal ? "all(" : "some(";
        out += c.name();
        out += ", ";
        print(c.filler(), out);
        out += ')';
        return;
    }
}

}  // namespace

std::string to_string(const Concept& c) {
    std::string out;
    print(c, out);
    return out;
}

std::size_t concept_depth(const Concept& c) {
    switch (c.kind()) {
    case ConceptKind::top:
    case ConceptKind::bottom:
    case ConceptKind::atomic:
        return 0;
    case ConceptKind::negation:
        return concept_depth(c.left());
    case ConceptKind::conjunction:
    case ConceptKind::disjunction:
        return std::max(concept_depth(c.left()), concept_depth(c.right()));
    case ConceptKind::universal:
    case ConceptKind::existential:
        return 1 + concept_depth(c.filler());
    }
    return 0;
}

}  // namespace allog
