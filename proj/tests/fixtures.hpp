#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "allog/parser.hpp"

namespace fixtures {

inline std::string read(const std::string& name) {
    std::ifstream in(std::string(ALLOG_DATA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class T>
T unwrap(allog::Parsed<T> p) {
    if (!p) {
        std::string msg;
        for (const auto& d : p.diagnostics) msg += allog::to_string(d) + "\n";
        throw std::runtime_error(msg);
    }
    return std::move(*p.value);
}

inline allog::Ontology ontology(const std::string& name) { return unwrap(allog::parse_ontology(read(name))); }
inline allog::Program program(const std::string& name) { return unwrap(allog::parse_program(read(name))); }
inline allog::Concept concept_of(const std::string& text) { return unwrap(allog::parse_concept(text)); }
inline allog::Clause clause(const std::string& text) { return unwrap(allog::parse_clause(text)); }

inline allog::KnowledgeBase kb(const std::string& stem) {
    return {ontology(stem + ".onto"), program(stem + ".dlp").clauses};
}

}  // namespace fixtures
