#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace allog {

enum class ConceptKind { top, bottom, atomic, negation, conjunction, disjunction, universal, existential };

// Immutable ALC concept expression with value semantics. Nodes are shared.
class Concept {
public:
    Concept();  // top

    static Concept top();
    static Concept bottom();
    static Concept atomic(std::string name);
    static Concept negation(const Concept& c);
    static Concept conjunction(const Concept& a, const Concept& b);
    static Concept disjunction(const Concept& a, const Concept& b);
    static Concept universal(std::string role, const Concept& filler);
    static Concept existential(std::string role, const Concept& filler);

    // Left-folded n-ary forms; empty input yields top (resp. bottom).
    static Concept conjunction(const std::vector<Concept>& parts);
    static Concept disjunction(const std::vector<Concept>& parts);

    ConceptKind kind() const;
    // atomic: concept name; universal/existential: role name.
    const std::string& name() const;
    const Concept& left() const;   // negation operand, binary left, restriction filler
    const Concept& right() const;  // binary right
    const Concept& filler() const { return left(); }

    bool is_atomic() const { return kind() == ConceptKind::atomic; }
    std::size_t hash() const;

    friend bool operator==(const Concept& a, const Concept& b);
    friend bool operator!=(const Concept& a, const Concept& b) { return !(a == b); }
    // Total structural order, used for canonical sorting.
    friend bool operator<(const Concept& a, const Concept& b);

private:
    struct Node;
    explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
    static Concept make(ConceptKind k, std::string name, std::vector<Concept> children);
};

int compare(const Concept& a, const Concept& b);

// Negation normal form: negation only in front of atomic names.
Concept nnf(const Concept& c);
bool is_nnf(const Concept& c);

// Concept names and role names occurring in c.
void collect_names(const Concept& c, std::vector<std::string>& concepts, std::vector<std::string>& roles);

// Surface syntax: top, bot, Name, not C, C and D, C or D, all(R, C), some(R, C).
std::string to_string(const Concept& c);

std::size_t concept_depth(const Concept& c);

struct ConceptHash {
    std::size_t operator()(const Concept& c) const { return c.hash(); }
};

}  // namespace allog
