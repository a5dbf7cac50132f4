#pragma once

#include <string>

#include "allog/kb.hpp"

namespace allog {

// RDF/XML rendering of an ALC ontology: one top-level element per axiom and assertion,
// in declaration order. Connectives stay binary, so every constructor of Sigma maps to
// exactly one OWL element.
std::string export_owl(const Ontology& sigma);

}  // namespace allog
