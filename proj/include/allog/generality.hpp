#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "allog/engine.hpp"
#include "allog/kb.hpp"

namespace allog {

struct SkolemMap {
    Substitution bindings;           // variable -> fresh constant
    std::vector<std::string> fresh;  // in order of first occurrence
};

// Fresh constants a, b, c, ... avoid every name of the kb and of the given clauses.
SkolemMap skolem_substitution(const Clause& h, const KnowledgeBase& kb, const std::vector<Clause>& avoid = {});
std::pair<Clause, SkolemMap> skolemize(const Clause& h, const KnowledgeBase& kb, const std::vector<Clause>& avoid = {});

enum class Comparison { more_general, less_general, equivalent, incomparable };
std::string to_string(Comparison c);

struct GeneralityOptions {
    EngineOptions engine;
    std::size_t max_theta = 100'000;  // candidate substitutions examined per test
};

struct SubsumptionWitness {
    Substitution theta;  // vars(h1) -> terms of h2 or kb constants
    SkolemMap sigma;
};

// A single clause, or the union of clauses left by an m.g.d. of incomparable ones.
using Intension = std::vector<Clause>;

// Conjunction of two clauses with the same head: the body of q follows that of p.
// A variable of q is identified with one of p when it has the same constraints and
// its atoms are already in p under that renaming; the others get a numeric suffix.
// Exact duplicates are merged.
Clause conjoin(const Clause& p, const Clause& q);

class Generality {
public:
    explicit Generality(KnowledgeBase kb, GeneralityOptions options = {},
                        std::shared_ptr<ReasonerCache> cache = nullptr);

    const KnowledgeBase& kb() const { return kb_; }

    std::optional<SubsumptionWitness> witness(const Clause& h1, const Clause& h2) const;
    bool b_subsumes(const Clause& h1, const Clause& h2) const;
    Comparison compare(const Clause& h1, const Clause& h2) const;

    // Every clause of h2 is B-subsumed by some clause of h1.
    bool b_subsumes(const Intension& h1, const Intension& h2) const;
    Comparison compare(const Intension& h1, const Intension& h2) const;

    Intension mgd(const Intension& p, const Intension& q) const;
    Intension msd(const Intension& p, const Intension& q) const;
    // Left folds in the given order.
    Intension mgd_all(const std::vector<Intension>& all) const;
    Intension msd_all(const std::vector<Intension>& all) const;

    std::size_t tests() const { return tests_; }

private:
    KnowledgeBase kb_;
    GeneralityOptions options_;
    std::shared_ptr<ReasonerCache> cache_;
    mutable std::map<std::pair<std::string, std::string>, bool> memo_;
    mutable std::size_t tests_ = 0;
};

bool b_subsumes(const Clause& h1, const Clause& h2, const KnowledgeBase& kb, const GeneralityOptions& options = {});
Comparison compare(const Clause& h1, const Clause& h2, const KnowledgeBase& kb, const GeneralityOptions& options = {});

}  // namespace allog
