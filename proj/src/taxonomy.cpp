#include "allog/taxonomy.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace allog {

std::optional<std::size_t> Taxonomy::find(const std::vector<std::string>& extension) const {
    for (const auto& n : nodes)
        if (n.extension == extension) return n.id;
    return std::nullopt;
}

std::vector<std::size_t> Taxonomy::children(std::size_t id) const {
    std::vector<std::size_t> out;
    for (const auto& [p, c] : edges)
        if (p == id) out.push_back(c);
    return out;
}

std::vector<std::size_t> Taxonomy::parents(std::size_t id) const {
    std::vector<std::size_t> out;
    for (const auto& [p, c] : edges)
        if (c == id) out.push_back(p);
    return out;
}

bool passes_language_bias(const Clause& q, const TaxonomyBias& bias, const LanguageSpec& spec) {
    const Term* x = q.head && !q.head->args.empty() ? &q.head->args[0] : nullptr;
    std::set<std::string> constrained;
    for (const auto& k : q.constraints) {
        constrained.insert(k.term.name);
        if (x && k.term == *x) continue;
        if (!k.type.is_atomic() || spec.level_of(k.type.name()) < std::max<std::size_t>(bias.min_granularity, 1))
            return false;
    }
    if (bias.all_vars_constrained)
        for (const auto& v : variables(Clause{std::nullopt, q.body, {}}))
            if (!constrained.count(v)) return false;
    return true;
}

namespace {

bool strict_subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> inclusion_edges(const std::vector<TaxonomyNode>& nodes) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& u : nodes)
        for (const auto& v : nodes) {
            if (!strict_subset(v.extension, u.extension)) continue;
            bool between = std::any_of(nodes.begin(), nodes.end(), [&](const TaxonomyNode& w) {
                return strict_subset(v.extension, w.extension) && strict_subset(w.extension, u.extension);
            });
            if (!between) out.emplace_back(u.id, v.id);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t insert_concept(Taxonomy& g, const PatternEntry& p, const Generality& generality, SearchBias bias) {
    std::vector<std::string> ext = p.extension;
    std::sort(ext.begin(), ext.end());
    if (auto at = g.find(ext)) {
        auto& node = g.nodes[*at];
        Intension incoming{p.query};
        node.intension = bias == SearchBias::mgd ? generality.mgd(node.intension, incoming)
                                                 : generality.msd(node.intension, incoming);
        node.merged.push_back(p.text);
        return *at;
    }
    TaxonomyNode node;
    node.id = g.nodes.size();
    node.level = std::max<std::size_t>(p.level, 1);
    node.depth = p.depth;
    node.intension = {p.query};
    node.extension = std::move(ext);
    node.merged = {p.text};
    g.nodes.push_back(std::move(node));
    g.edges = inclusion_edges(g.nodes);
    return g.nodes.back().id;
}

Taxonomy build_taxonomy(const std::vector<PatternEntry>& frequent, const KnowledgeBase& kb, const TaxonomyBias& bias,
                        const LanguageSpec& spec, const GeneralityOptions& options) {
    std::vector<const PatternEntry*> order;
    for (const auto& p : frequent)
        if (p.frequent) order.push_back(&p);
    const std::string top = to_string(canonical_form(trivial_query(spec)));
    auto key = [&](const PatternEntry* p) {
        return std::make_tuple(p->text != top, std::max<std::size_t>(p->level, 1), p->depth, p->text);
    };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });

    Generality generality(kb, options);
    Taxonomy g;
    for (const auto* p : order) {
        if (p->text != top && !passes_language_bias(p->query, bias, spec)) continue;
        insert_concept(g, *p, generality, bias.bias);
    }
    return g;
}

Ontology refine_ontology(const Ontology& sigma, const Taxonomy& g, const std::string& reference) {
    Ontology out = sigma;
    auto name = [&](std::size_t id) { return id == 0 ? reference : reference + "_" + std::to_string(id); };
    for (const auto& n : g.nodes) {
        if (n.id == 0) continue;
        out.declare_concept(name(n.id));
        auto parents = g.parents(n.id);
        if (parents.empty()) parents.push_back(0);
        for (auto p : parents)
            out.axioms.push_back({Axiom::Kind::subsumption, Concept::atomic(name(n.id)), Concept::atomic(name(p))});
        for (const auto& a : n.extension) out.concept_assertions.push_back({a, Concept::atomic(name(n.id))});
    }
    return out;
}

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

}  // namespace

std::string taxonomy_text(const Taxonomy& g) {
    std::ostringstream out;
    for (const auto& n : g.nodes) {
        out << "concept " << n.id << " (l=" << n.level << ", k=" << n.depth << ")\n";
        for (const auto& c : n.intension) out << "  " << to_string(c) << "\n";
        out << "  {" << join(n.extension, ", ") << "}\n";
    }
    for (const auto& [p, c] : g.edges) out << "edge " << p << " -> " << c << "\n";
    return out.str();
}

std::string taxonomy_records(const Taxonomy& g) {
    std::ostringstream out;
    out << "id\tlevel\tdepth\tsize\tparents\textension\tintension\n";
    for (const auto& n : g.nodes) {
        std::vector<std::string> parents, intension;
        for (auto p : g.parents(n.id)) parents.push_back(std::to_string(p));
        for (const auto& c : n.intension) intension.push_back(to_string(c));
        out << n.id << "\t" << n.level << "\t" << n.depth << "\t" << n.extension.size() << "\t"
            << (parents.empty() ? "-" : join(parents, ",")) << "\t" << join(n.extension, ",") << "\t"
            << join(intension, " | ") << "\n";
    }
    return out.str();
}

std::string taxonomy_json(const Taxonomy& g) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : g.nodes) {
        nlohmann::ordered_json j;
        j["id"] = n.id;
        j["level"] = n.level;
        j["depth"] = n.depth;
        std::vector<std::string> in;
        for (const auto& c : n.intension) in.push_back(to_string(c));
        j["intension"] = in;
        j["extension"] = n.extension;
        j["merged"] = n.merged;
        doc["nodes"].push_back(j);
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& [p, c] : g.edges) doc["edges"].push_back({p, c});
    return doc.dump(2) + "\n";
}

std::string taxonomy_dot(const Taxonomy& g) {
    std::ostringstream out;
    out << "digraph taxonomy {\n  node [shape=box];\n";
    for (const auto& n : g.nodes)
        out << "  n" << n.id << " [label=\"" << n.id << " (" << n.extension.size() << ")\"];\n";
    for (const auto& [p, c] : g.edges) out << "  n" << p << " -> n" << c << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace allog
