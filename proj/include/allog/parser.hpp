#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "allog/bias.hpp"
#include "allog/kb.hpp"

namespace allog {

struct Diagnostic {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

// "line:col: message"
std::string to_string(const Diagnostic& d);

// All or nothing: value is set only when there are no diagnostics.
template <class T>
struct Parsed {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;
    explicit operator bool() const { return value.has_value(); }
};

Parsed<Ontology> parse_ontology(std::string_view text);
Parsed<Program> parse_program(std::string_view text);
// A single clause or "?-" query, with or without the final period.
Parsed<Clause> parse_clause(std::string_view text);
Parsed<Concept> parse_concept(std::string_view text);
Parsed<BiasConfig> parse_bias(std::string_view text);

std::string print_ontology(const Ontology& o);
std::string print_program(const Program& p);
std::string print_bias(const BiasConfig& b);

}  // namespace allog
