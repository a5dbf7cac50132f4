#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "allog/kb.hpp"
#include "allog/rational.hpp"
#include "allog/tableau.hpp"

namespace allog {

struct EngineOptions {
    std::size_t max_depth = 50;
    std::size_t max_groundings = 100'000;  // groundings of variables left free by a derivation
    TableauLimits tableau;
};

struct Derivation {
    Substitution answer;             // bindings of the query variables
    ConstraintSet constraints;  // ground constraints collected along the way
};

struct ResolutionResult {
    std::vector<Derivation> derivations;
    bool depth_limited = false;  // some call was cut at max_depth nested calls
};

struct QueryOptions {
    // Distinct terms of the query must denote distinct individuals.
    bool object_identity = false;
    // Clauses (by index) whose use must also respect object identity.
    std::set<std::size_t> oi_clauses;
};

struct Observation {
    Atom label;               // q(a)
    std::vector<Atom> facts;  // the interpretation describing a
};

// Constrained SLD resolution over a fixed knowledge base, leftmost selection,
// with answer tables per call pattern. Each answer keeps the minimal constraint
// sets of its derivations; tables are reused across queries.
class Engine {
public:
    explicit Engine(KnowledgeBase kb, EngineOptions options = {}, std::shared_ptr<ReasonerCache> cache = nullptr);
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const KnowledgeBase& kb() const { return kb_; }
    const Reasoner& reasoner() const { return *reasoner_; }
    const EngineOptions& options() const { return options_; }

    // The query is the body and constraints of q; a head, if any, is ignored.
    ResolutionResult resolve_all(const Clause& q, const QueryOptions& opts = {}) const;
    // sigma entails the disjunction of the constraint sets of all derivations.
    bool answer(const Clause& q, const QueryOptions& opts = {}) const;

    // Individuals a of sigma with sigma |= a:C, in declaration order.
    const std::vector<std::string>& instances(const Concept& c) const;
    // Extension of an observation query q(X) <- ... & X:Cref, ..., under object identity.
    std::vector<std::string> answer_set(const Clause& q) const;
    Rational support(const Clause& q) const;
    // Reference concept named by the constraint on the head variable.
    static std::optional<Concept> reference_concept(const Clause& q);

    bool covers(const Clause& q, const std::string& individual) const;

private:
    struct Index;
    struct Tables;
    KnowledgeBase kb_;
    EngineOptions options_;
    std::unique_ptr<Reasoner> reasoner_;
    std::unique_ptr<Index> index_;
    std::unique_ptr<Tables> tables_;
    mutable std::unordered_map<std::string, std::vector<std::string>> instances_;
};

ResolutionResult resolve_all(const KnowledgeBase& kb, const Clause& q, const EngineOptions& options = {});
bool answer_ground_query(const KnowledgeBase& kb, const Clause& q, const EngineOptions& options = {});
std::vector<std::string> answer_set(const Clause& q, const KnowledgeBase& kb, const EngineOptions& options = {});
Rational support(const Clause& q, const KnowledgeBase& kb, const EngineOptions& options = {});

bool covers_interpretations(const Clause& h, const KnowledgeBase& kb, const Observation& o,
                            const EngineOptions& options = {});
// o is a ground clause q(a) <- facts & constraints; its constraints join the ontology.
bool covers_entailment(const Clause& h, const KnowledgeBase& kb, const Clause& o, const EngineOptions& options = {});

}  // namespace allog
