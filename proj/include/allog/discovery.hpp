#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "allog/bias.hpp"
#include "allog/engine.hpp"
#include "allog/kb.hpp"
#include "allog/rational.hpp"

namespace allog {

struct PatternEntry {
    std::size_t id = 0;
    Clause query;      // canonical form
    std::string text;  // canonical text
    std::size_t level = 0;  // 0 when no variable besides the distinguished one is constrained
    std::size_t depth = 1;
    Rational support;
    std::size_t count = 0, population = 0;  // support = count / population
    bool frequent = false;
    std::vector<std::size_t> parents;  // ids of the generalisations it was checked against
    std::vector<std::string> extension;
};

struct StageReport {
    std::size_t level = 0, depth = 0;
    std::size_t candidates = 0, frequent = 0;
};

struct DiscoveryResult {
    std::vector<PatternEntry> entries;  // every evaluated candidate, in evaluation order
    std::size_t candidates() const { return entries.size(); }
    std::size_t frequent_count() const;
    std::vector<PatternEntry> frequent() const;
};

struct DiscoveryOptions {
    EngineOptions engine;
    std::function<void(const StageReport&)> progress;
    // Shuffles the candidates of each stage before evaluation; the result must not depend on it.
    std::optional<unsigned> evaluation_seed;
};

// q(X) <- & X:Cref
Clause trivial_query(const LanguageSpec& spec);

// Body atoms plus constraints plus constant arguments; the trivial query has depth 1.
std::size_t pattern_depth(const Clause& q);

// The refinement operator of a multi-grained language of O-queries. Patterns are
// uniform in granularity: every constraint concept besides Cref comes from one
// level, and patterns with constants belong to the finest level.
class Refinement {
public:
    Refinement(const LanguageSpec& spec, const KnowledgeBase& kb, const Reasoner& reasoner);

    // Level of a pattern, 0 for unconstrained ones; nullopt when not in the language.
    std::optional<std::size_t> level_of(const Clause& q) const;
    // Evaluation level: unconstrained patterns are evaluated with the first level.
    std::size_t stage_of(const Clause& q) const;

    // Downward refinements in canonical form: a new atom with fresh output variables,
    // left free or constrained, a new atom with a constant in an output slot, a
    // constraint on a free variable, and the replacement of every constraint concept
    // by a subconcept one level down.
    std::vector<Clause> refine(const Clause& q) const;
    // Immediate generalisations, inverse of refine.
    std::vector<Clause> parents(const Clause& q) const;

    const std::vector<std::string>& constant_pool(const std::string& predicate) const;

private:
    struct Var {
        std::string name;
        std::string type;  // slot type it was introduced with, Cref for the distinguished variable
    };
    std::vector<Var> typed_variables(const Clause& q) const;
    bool fits(const std::string& slot_type, const std::string& concept_name) const;
    std::optional<std::string> parent_concept(const std::string& name) const;
    std::vector<std::string> child_concepts(const std::string& name) const;

    const LanguageSpec& spec_;
    const Reasoner& reasoner_;
    std::map<std::string, std::vector<std::string>> pool_;
    mutable std::map<std::pair<std::string, std::string>, bool> fits_;
};

DiscoveryResult discover(const KnowledgeBase& kb, const LanguageSpec& spec, const DiscoveryOptions& options = {});
// As above with a prepared engine; options.engine is ignored.
DiscoveryResult discover(const Engine& engine, const LanguageSpec& spec, const DiscoveryOptions& options = {});

// One tab-separated record per candidate.
std::string discovery_report(const DiscoveryResult& r);

}  // namespace allog
