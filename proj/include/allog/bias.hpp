#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "allog/rational.hpp"

namespace allog {

// Mode of one argument position: + links an existing variable, - introduces a new one.
// type bounds the concepts a variable in this slot may carry; empty means top.
struct SlotSpec {
    bool input = false;
    std::string type;
    friend bool operator==(const SlotSpec& a, const SlotSpec& b) { return a.input == b.input && a.type == b.type; }
};

struct PredicateSpec {
    std::string name;
    std::size_t arity = 2;
    std::vector<SlotSpec> slots;  // empty: first slot input, the others output, all untyped
    friend bool operator==(const PredicateSpec& a, const PredicateSpec& b) {
        return a.name == b.name && a.arity == b.arity && a.slots == b.slots;
    }
};

struct LanguageSpec {
    std::string reference;
    std::vector<PredicateSpec> predicates;
    std::vector<std::vector<std::string>> levels;  // levels[l-1] holds the concepts of granularity l
    std::size_t max_depth = 5;
    std::size_t max_granularity = 1;
    std::vector<Rational> minsup;                  // minsup[l-1]

    std::size_t level_of(const std::string& concept_name) const;  // 0 when absent
    Rational threshold(std::size_t level) const;
    // Slot modes with the defaults filled in.
    std::vector<SlotSpec> slots(const PredicateSpec& p) const;
    friend bool operator==(const LanguageSpec& a, const LanguageSpec& b) {
        return a.reference == b.reference && a.predicates == b.predicates && a.levels == b.levels &&
               a.max_depth == b.max_depth && a.max_granularity == b.max_granularity && a.minsup == b.minsup;
    }
};

enum class SearchBias { mgd, msd };

struct TaxonomyBias {
    std::size_t min_granularity = 1;
    bool all_vars_constrained = true;
    SearchBias bias = SearchBias::mgd;
    friend bool operator==(const TaxonomyBias& a, const TaxonomyBias& b) {
        return a.min_granularity == b.min_granularity && a.all_vars_constrained == b.all_vars_constrained &&
               a.bias == b.bias;
    }
};

struct BiasConfig {
    LanguageSpec language;
    TaxonomyBias taxonomy;
    friend bool operator==(const BiasConfig& a, const BiasConfig& b) {
        return a.language == b.language && a.taxonomy == b.taxonomy;
    }
};

}  // namespace allog
