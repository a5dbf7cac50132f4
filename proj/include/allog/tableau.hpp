#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "allog/kb.hpp"

namespace allog {

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TableauLimits {
    std::size_t max_nodes = 1'000'000;       // tableau nodes and branch points per check
    std::size_t max_selections = 100'000;    // choice functions tried by entails_disjunction
};

// Ground constraints a:C, grouped per individual. merged() yields one conjunction per individual.
class ConstraintSet {
public:
    void add(const std::string& individual, const Concept& c);
    void add(const ConstraintSet& other);
    bool empty() const { return parts_.empty(); }
    std::size_t size() const;
    const std::map<std::string, std::vector<Concept>>& parts() const { return parts_; }
    std::vector<ConceptAssertion> merged() const;
    std::string to_string() const;

    friend bool operator==(const ConstraintSet& a, const ConstraintSet& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const ConstraintSet& a, const ConstraintSet& b) { return a.parts_ < b.parts_; }

private:
    std::map<std::string, std::vector<Concept>> parts_;  // concepts kept sorted and unique
};

struct ModelSketch {
    struct Node {
        std::string name;
        bool fresh = false;
        std::vector<std::string> label;
    };
    std::vector<Node> nodes;
    std::vector<RoleAssertion> edges;
};

struct ConsistencyResult {
    bool consistent = false;
    std::optional<ModelSketch> model;  // present when consistent and a sketch was requested
};

struct ReasonerCache;

// Tableau reasoner bound to one ontology. Checks are split by ABox connected
// component; answers for unchanged components are memoised in a cache that can be
// shared between reasoners over ontologies with the same axioms.
class Reasoner {
public:
    explicit Reasoner(Ontology sigma, TableauLimits limits = {}, std::shared_ptr<ReasonerCache> cache = nullptr);
    ~Reasoner();
    Reasoner(const Reasoner&) = delete;
    Reasoner& operator=(const Reasoner&) = delete;

    const Ontology& ontology() const { return sigma_; }
    const TableauLimits& limits() const { return limits_; }
    std::shared_ptr<ReasonerCache> cache() const { return cache_; }

    // Trace lines "RULE <name> <individual> : <concept>" for every rule application.
    void set_trace(std::ostream* out) { trace_ = out; }

    // Consistency of sigma extended by the given assertions.
    bool is_consistent(const std::vector<ConceptAssertion>& extra = {},
                       const std::vector<RoleAssertion>& extra_roles = {}) const;
    // As is_consistent, on the whole ABox at once, returning a model sketch when consistent.
    ConsistencyResult check(const std::vector<ConceptAssertion>& extra = {},
                            const std::vector<RoleAssertion>& extra_roles = {}) const;

    bool entails(const std::string& individual, const Concept& c) const;
    bool entails(const ConceptAssertion& a) const { return entails(a.individual, a.type); }
    // sigma entails the disjunction of the conjunctions given by each alternative.
    bool entails_disjunction(const std::vector<ConstraintSet>& alternatives) const;
    // sigma entails sub subsumed-by sup.
    bool subsumes(const Concept& sup, const Concept& sub) const;

    std::size_t tableau_runs() const { return runs_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Ontology sigma_;
    TableauLimits limits_;
    std::shared_ptr<ReasonerCache> cache_;
    std::ostream* trace_ = nullptr;
    mutable std::size_t runs_ = 0;
};

ConsistencyResult check_consistency(const Ontology& sigma, const std::vector<ConceptAssertion>& extra = {},
                                    const TableauLimits& limits = {});
bool entails_assertion(const Ontology& sigma, const ConceptAssertion& a, const TableauLimits& limits = {});
bool entails_constraint_disjunction(const Ontology& sigma, const std::vector<ConstraintSet>& alternatives,
                                    const TableauLimits& limits = {});

}  // namespace allog
