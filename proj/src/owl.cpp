#include "allog/owl.hpp"

#include <functional>
#include <sstream>

namespace allog {

namespace {

const char* const owl_ns = "http://www.w3.org/2002/07/owl#";
const char* const base = "http://example.org/ontology";

std::string attr(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string resource(const Concept& c) {
    if (c.kind() == ConceptKind::top) return std::string(owl_ns) + "Thing";
    if (c.kind() == ConceptKind::bottom) return std::string(owl_ns) + "Nothing";
    return "#" + attr(c.name());
}

bool named(const Concept& c) {
    return c.kind() == ConceptKind::atomic || c.kind() == ConceptKind::top || c.kind() == ConceptKind::bottom;
}

class Writer {
public:
    std::ostringstream out;

    void line(int depth, const std::string& s) { out << std::string(2 * depth, ' ') << s << "\n"; }

    void operand(const Concept& c, int depth) {
        if (c.kind() == ConceptKind::atomic) line(depth, "<owl:Class rdf:ID=\"" + attr(c.name()) + "\" />");
        else if (named(c)) line(depth, "<owl:Class rdf:about=\"" + resource(c) + "\" />");
        else description(c, depth);
    }

    // The element for a complex concept; inside writes further children.
    void description(const Concept& c, int depth, const std::function<void(int)>& inside = {}) {
        const bool restriction = c.kind() == ConceptKind::existential || c.kind() == ConceptKind::universal;
        line(depth, restriction ? "<owl:Restriction>" : "<owl:Class>");
        switch (c.kind()) {
        case ConceptKind::negation:
            line(depth + 1, "<owl:complementOf>");
            operand(c.left(), depth + 2);
            line(depth + 1, "</owl:complementOf>");
            break;
        case ConceptKind::conjunction:
        case ConceptKind::disjunction: {
            std::string tag = c.kind() == ConceptKind::conjunction ? "owl:intersectionOf" : "owl:unionOf";
            line(depth + 1, "<" + tag + " rdf:parseType=\"Collection\">");
            operand(c.left(), depth + 2);
            operand(c.right(), depth + 2);
            line(depth + 1, "</" + tag + ">");
            break;
        }
        default: {
            std::string tag = c.kind() == ConceptKind::existential ? "owl:someValuesFrom" : "owl:allValuesFrom";
            line(depth + 1, "<owl:onProperty rdf:resource=\"#" + attr(c.name()) + "\" />");
            value(tag, c.filler(), depth + 1);
        }
        }
        if (inside) inside(depth + 1);
        line(depth, restriction ? "</owl:Restriction>" : "</owl:Class>");
    }

    // <tag rdf:resource=.../> for a named concept, the nested description otherwise.
    void value(const std::string& tag, const Concept& c, int depth) {
        if (named(c)) {
            line(depth, "<" + tag + " rdf:resource=\"" + resource(c) + "\" />");
            return;
        }
        line(depth, "<" + tag + ">");
        description(c, depth + 1);
        line(depth, "</" + tag + ">");
    }

    void axiom(const Axiom& a) {
        std::string tag = a.kind == Axiom::Kind::equivalence ? "owl:sameAs" : "rdfs:subClassOf";
        auto link = [&](int depth) { value(tag, a.rhs, depth); };
        if (!named(a.lhs)) {
            description(a.lhs, 1, link);
            return;
        }
        line(1, a.lhs.kind() == ConceptKind::atomic ? "<owl:Class rdf:ID=\"" + attr(a.lhs.name()) + "\">"
                                                    : "<owl:Class rdf:about=\"" + resource(a.lhs) + "\">");
        link(2);
        line(1, "</owl:Class>");
    }
};

}  // namespace

std::string export_owl(const Ontology& sigma) {
    Writer w;
    w.line(0, "<?xml version=\"1.0\"?>");
    w.line(0, "<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"");
    w.line(0, "         xmlns:rdfs=\"http://www.w3.org/2000/01/rdf-schema#\"");
    w.line(0, "         xmlns:owl=\"" + std::string(owl_ns) + "\"");
    w.line(0, "         xmlns=\"" + std::string(base) + "#\"");
    w.line(0, "         xml:base=\"" + std::string(base) + "\">");
    for (const auto& a : sigma.axioms) w.axiom(a);
    for (const auto& a : sigma.concept_assertions) {
        if (a.type.kind() == ConceptKind::atomic) {
            w.line(1, "<" + a.type.name() + " rdf:ID=\"" + attr(a.individual) + "\" />");
        } else {
            w.line(1, "<owl:Thing rdf:ID=\"" + attr(a.individual) + "\">");
            w.line(2, "<rdf:type>");
            w.operand(a.type, 3);
            w.line(2, "</rdf:type>");
            w.line(1, "</owl:Thing>");
        }
    }
    for (const auto& r : sigma.role_assertions) {
        w.line(1, "<owl:Thing rdf:ID=\"" + attr(r.subject) + "\">");
        w.line(2, "<" + r.role + " rdf:resource=\"#" + attr(r.object) + "\" />");
        w.line(1, "</owl:Thing>");
    }
    w.line(0, "</rdf:RDF>");
    return w.out.str();
}

}  // namespace allog
