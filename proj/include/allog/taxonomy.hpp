#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "allog/bias.hpp"
#include "allog/discovery.hpp"
#include "allog/generality.hpp"

namespace allog {

struct TaxonomyNode {
    std::size_t id = 0;  // insertion index, the root is 0
    std::size_t level = 1, depth = 1;  // stage of the first pattern placed here
    Intension intension;
    std::vector<std::string> extension;  // sorted
    std::vector<std::string> merged;     // canonical texts of every pattern placed here
};

struct Taxonomy {
    std::vector<TaxonomyNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // parent, child; sorted

    std::optional<std::size_t> find(const std::vector<std::string>& extension) const;
    std::vector<std::size_t> children(std::size_t id) const;
    std::vector<std::size_t> parents(std::size_t id) const;
};

// Constraint concepts other than Cref come from levels >= minG, and, when required,
// every variable of the body is constrained.
bool passes_language_bias(const Clause& q, const TaxonomyBias& bias, const LanguageSpec& spec);

// Hasse diagram of strict inclusion between the node extensions.
std::vector<std::pair<std::size_t, std::size_t>> inclusion_edges(const std::vector<TaxonomyNode>& nodes);

// Places p on the node with the same extension, updating its intension by the search
// bias, or on a new node. Returns the node id.
std::size_t insert_concept(Taxonomy& g, const PatternEntry& p, const Generality& generality, SearchBias bias);

// Patterns in (level, depth, text) order; the trivial query is always the root.
Taxonomy build_taxonomy(const std::vector<PatternEntry>& frequent, const KnowledgeBase& kb, const TaxonomyBias& bias,
                        const LanguageSpec& spec, const GeneralityOptions& options = {});

// sigma with one concept <reference>_<id> per node besides the root, placed under the
// concepts of its parent nodes and asserted of its extension.
Ontology refine_ontology(const Ontology& sigma, const Taxonomy& g, const std::string& reference);

std::string taxonomy_text(const Taxonomy& g);
std::string taxonomy_records(const Taxonomy& g);  // one tab-separated line per node
std::string taxonomy_json(const Taxonomy& g);
std::string taxonomy_dot(const Taxonomy& g);

}  // namespace allog
