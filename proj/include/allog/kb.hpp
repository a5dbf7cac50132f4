#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "allog/concept.hpp"

namespace allog {

struct Term {
    enum class Kind { variable, constant };
    Kind kind = Kind::constant;
    std::string name;

    static Term var(std::string n) { return {Kind::variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::constant, std::move(n)}; }
    bool is_var() const { return kind == Kind::variable; }
    bool is_const() const { return kind == Kind::constant; }

    friend bool operator==(const Term& a, const Term& b) { return a.kind == b.kind && a.name == b.name; }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
    friend bool operator<(const Term& a, const Term& b) {
        return a.kind != b.kind ? a.kind < b.kind : a.name < b.name;
    }
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;
    friend bool operator==(const Atom& a, const Atom& b) { return a.predicate == b.predicate && a.args == b.args; }
    friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
    friend bool operator<(const Atom& a, const Atom& b) {
        return a.predicate != b.predicate ? a.predicate < b.predicate : a.args < b.args;
    }
};

// t : C
struct Constraint {
    Term term;
    Concept type;
    friend bool operator==(const Constraint& a, const Constraint& b) { return a.term == b.term && a.type == b.type; }
    friend bool operator!=(const Constraint& a, const Constraint& b) { return !(a == b); }
    friend bool operator<(const Constraint& a, const Constraint& b) {
        return a.term != b.term ? a.term < b.term : a.type < b.type;
    }
};

// head <- body & constraints. A missing head denotes a query.
struct Clause {
    std::optional<Atom> head;
    std::vector<Atom> body;
    std::vector<Constraint> constraints;

    bool is_fact() const { return head && body.empty() && constraints.empty() && head->is_ground(); }
    bool is_query() const { return !head.has_value(); }
    bool is_ground() const;
    friend bool operator==(const Clause& a, const Clause& b) {
        return a.head == b.head && a.body == b.body && a.constraints == b.constraints;
    }
    friend bool operator!=(const Clause& a, const Clause& b) { return !(a == b); }
};

struct Axiom {
    enum class Kind { equivalence, subsumption };
    Kind kind = Kind::subsumption;
    Concept lhs, rhs;
    friend bool operator==(const Axiom& a, const Axiom& b) { return a.kind == b.kind && a.lhs == b.lhs && a.rhs == b.rhs; }
};

struct ConceptAssertion {
    std::string individual;
    Concept type;
    friend bool operator==(const ConceptAssertion& a, const ConceptAssertion& b) {
        return a.individual == b.individual && a.type == b.type;
    }
};

struct RoleAssertion {
    std::string subject, object, role;
    friend bool operator==(const RoleAssertion& a, const RoleAssertion& b) {
        return a.subject == b.subject && a.object == b.object && a.role == b.role;
    }
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;

// Names keep declaration order.
class Ontology {
public:
    std::vector<Axiom> axioms;
    std::vector<ConceptAssertion> concept_assertions;
    std::vector<RoleAssertion> role_assertions;

    const std::vector<std::string>& concept_names() const { return concepts_; }
    const std::vector<std::string>& role_names() const { return roles_; }
    const std::vector<std::string>& individuals() const { return individuals_; }

    bool has_concept(const std::string& n) const { return concept_set_.count(n) != 0; }
    bool has_role(const std::string& n) const { return role_set_.count(n) != 0; }
    bool has_individual(const std::string& n) const { return individual_set_.count(n) != 0; }

    // Return whether the name was new.
    bool declare_concept(const std::string& n);
    bool declare_role(const std::string& n);
    bool declare_individual(const std::string& n);

    friend bool operator==(const Ontology& a, const Ontology& b) {
        return a.concepts_ == b.concepts_ && a.roles_ == b.roles_ && a.individuals_ == b.individuals_ &&
               a.axioms == b.axioms && a.concept_assertions == b.concept_assertions &&
               a.role_assertions == b.role_assertions;
    }

private:
    std::vector<std::string> concepts_, roles_, individuals_;
    std::set<std::string> concept_set_, role_set_, individual_set_;
};

struct Program {
    std::vector<Clause> clauses;
    std::vector<Clause> queries;
    friend bool operator==(const Program& a, const Program& b) {
        return a.clauses == b.clauses && a.queries == b.queries;
    }
};

struct KnowledgeBase {
    Ontology sigma;
    std::vector<Clause> program;

    std::vector<std::string> program_constants() const;
};

using Substitution = std::map<std::string, Term>;

// Rendering. Constants print bare when they are lowercase identifiers or numerals, quoted otherwise.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Constraint& c);
std::string to_string(const Clause& c);
std::string to_string(const Substitution& s);
std::string quote_constant(const std::string& name);

// Variables in order of first occurrence (head, body, constraints).
std::vector<std::string> variables(const Clause& c);
std::vector<std::string> constants(const Clause& c);
std::vector<Term> terms(const Clause& c);
std::vector<std::string> variables(const Atom& a);

Term substitute(const Substitution& s, const Term& t);
Atom substitute(const Substitution& s, const Atom& a);
Constraint substitute(const Substitution& s, const Constraint& c);
Clause apply_substitution(const Clause& c, const Substitution& s);

// Injective over terms(c) and never maps a variable onto a constant of c or of another variable's image.
bool is_oi_substitution(const Substitution& s, const Clause& c);

// Every body atom is reachable from the head through shared variables, and
// every constrained variable occurs in the Datalog part.
bool is_linked_connected(const Clause& c);

// Clauses equal up to a bijective variable renaming and reordering of body atoms and constraints.
bool is_variant(const Clause& a, const Clause& b);

// The clause with variables renamed by first occurrence (A, B, ...) and body atoms
// permuted to give the lexicographically least rendering; constraints sorted.
Clause canonical_form(const Clause& c);
std::string canonical_text(const Clause& c);

// Variable name for index i: A..Z, then A1..Z1, ...
std::string canonical_variable(std::size_t i);

// Safety of a knowledge base.
struct Violation {
    enum class Kind {
        alphabet_clash,     // a predicate named like a concept or role
        unknown_constant,   // a program constant that is not an individual
        unsafe_constraint,  // a constraint variable outside the Datalog part
    };
    Kind kind;
    std::size_t clause = 0;  // index into the program
    std::string name;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

std::string to_string(Violation::Kind k);
ValidationReport validate_kb(const Ontology& sigma, const std::vector<Clause>& program);

}  // namespace allog
