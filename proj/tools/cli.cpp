#include "cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "allog/discovery.hpp"
#include "allog/engine.hpp"
#include "allog/generality.hpp"
#include "allog/owl.hpp"
#include "allog/parser.hpp"
#include "allog/taxonomy.hpp"

namespace allog {

namespace {

// Raised for input problems; the message is already formatted.
struct Failure {
    std::string message;
};

struct Settings {
    std::string format = "text";
    std::optional<std::size_t> max_depth, tableau_cap, max_pattern_depth, min_granularity;
    std::optional<std::string> search_bias;
    bool seedless = false;
    std::string output;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{path + ": cannot read"};
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out || !(out << text)) throw Failure{path + ": cannot write"};
}

template <class T>
T parsed(Parsed<T> p, const std::string& source) {
    if (p) return std::move(*p.value);
    std::string msg;
    for (const auto& d : p.diagnostics) msg += (msg.empty() ? "" : "\n") + source + ":" + to_string(d);
    throw Failure{msg};
}

EngineOptions engine_options(const Settings& s) {
    EngineOptions e;
    if (s.max_depth) e.max_depth = *s.max_depth;
    if (s.tableau_cap) e.tableau.max_nodes = *s.tableau_cap;
    return e;
}

KnowledgeBase load_kb(const std::string& onto, const std::string& prog) {
    KnowledgeBase kb;
    kb.sigma = parsed(parse_ontology(read_file(onto)), onto);
    kb.program = parsed(parse_program(read_file(prog)), prog).clauses;
    return kb;
}

BiasConfig load_bias(const std::string& path, const Settings& s) {
    BiasConfig b = parsed(parse_bias(read_file(path)), path);
    if (s.max_pattern_depth) b.language.max_depth = *s.max_pattern_depth;
    if (s.min_granularity) b.taxonomy.min_granularity = *s.min_granularity;
    if (s.search_bias) b.taxonomy.bias = *s.search_bias == "msd" ? SearchBias::msd : SearchBias::mgd;
    return b;
}

Clause load_clause(const std::string& text) { return parsed(parse_clause(text), "<clause>"); }

class Output {
public:
    Output(std::ostream& out, const std::string& path) : out_(out), path_(path) {}
    std::ostream& stream() { return buffer_; }
    void flush() {
        if (path_.empty()) out_ << buffer_.str();
        else write_file(path_, buffer_.str());
    }

private:
    std::ostream& out_;
    std::string path_;
    std::ostringstream buffer_;
};

int run_validate(const std::string& onto, const std::string& prog, const Settings& s, std::ostream& out) {
    auto kb = load_kb(onto, prog);
    auto report = validate_kb(kb.sigma, kb.program);
    Output o(out, s.output);
    if (s.format == "records") {
        o.stream() << "clause\tkind\tname\tmessage\n";
        for (const auto& v : report.violations)
            o.stream() << v.clause << "\t" << to_string(v.kind) << "\t" << v.name << "\t" << v.message << "\n";
    } else if (report.ok()) {
        o.stream() << "ok: " << kb.sigma.axioms.size() << " axioms, "
                   << kb.sigma.concept_assertions.size() + kb.sigma.role_assertions.size() << " assertions, "
                   << kb.program.size() << " clauses\n";
    } else {
        for (const auto& v : report.violations)
            o.stream() << prog << ": clause " << v.clause + 1 << ": " << to_string(v.kind) << ": " << v.message << "\n";
    }
    o.flush();
    return report.ok() ? 0 : 1;
}

int run_check(const std::string& onto, const Settings& s, std::ostream& out) {
    Ontology sigma = parsed(parse_ontology(read_file(onto)), onto);
    Reasoner r(sigma, engine_options(s).tableau);
    bool ok = r.is_consistent();
    Output o(out, s.output);
    if (s.format == "records") o.stream() << "consistent\n" << (ok ? "yes" : "no") << "\n";
    else o.stream() << (ok ? "consistent" : "inconsistent") << "\n";
    o.flush();
    return 0;
}

int run_query(const std::string& onto, const std::string& prog, const std::string& text, const Settings& s,
              std::ostream& out, std::ostream& err) {
    auto kb = load_kb(onto, prog);
    Clause q = load_clause(text);
    Engine engine(kb, engine_options(s));
    Output o(out, s.output);
    const bool records = s.format == "records";

    if (q.head && Engine::reference_concept(q)) {
        auto ext = engine.answer_set(q);
        auto sup = engine.support(q);
        if (records) {
            o.stream() << "individual\n";
            for (const auto& a : ext) o.stream() << a << "\n";
        } else {
            o.stream() << "{";
            for (std::size_t i = 0; i < ext.size(); ++i) o.stream() << (i ? ", " : "") << ext[i];
            o.stream() << "}\nsupport " << to_string(sup) << " (" << to_percent(sup) << ")\n";
        }
        o.flush();
        return 0;
    }

    auto result = engine.resolve_all(q);
    if (result.depth_limited) {
        err << "query: resolution cut at depth " << engine.options().max_depth << "\n";
        return 2;
    }
    std::map<std::string, std::pair<Substitution, std::vector<ConstraintSet>>> groups;
    std::vector<std::string> order;
    for (auto& d : result.derivations) {
        auto key = to_string(d.answer);
        auto [it, fresh] = groups.try_emplace(key, d.answer, std::vector<ConstraintSet>{});
        if (fresh) order.push_back(key);
        it->second.second.push_back(std::move(d.constraints));
    }
    std::size_t yes = 0;
    if (records) o.stream() << "answer\tconstraints\n";
    for (const auto& key : order) {
        const auto& [answer, alternatives] = groups.at(key);
        if (!engine.reasoner().entails_disjunction(alternatives)) continue;
        ++yes;
        std::string witness;
        for (const auto& c : alternatives) {
            if (c.empty()) continue;
            witness += (witness.empty() ? "" : " | ") + c.to_string();
        }
        if (records) {
            o.stream() << key << "\t" << witness << "\n";
        } else if (!answer.empty() || !witness.empty()) {
            o.stream() << (answer.empty() ? "yes" : key);
            if (!witness.empty()) o.stream() << "  given " << witness;
            o.stream() << "\n";
        } else {
            o.stream() << "yes\n";
        }
    }
    if (!yes && !records) o.stream() << "no\n";
    o.flush();
    return 0;
}

int run_compare(const std::string& onto, const std::string& prog, const std::string& a, const std::string& b,
                const Settings& s, std::ostream& out) {
    auto kb = load_kb(onto, prog);
    GeneralityOptions g;
    g.engine = engine_options(s);
    Generality gen(kb, g);
    Output o(out, s.output);
    Clause h1 = load_clause(a), h2 = load_clause(b);
    auto c = gen.compare(h1, h2);
    if (s.format == "records") o.stream() << "first\tsecond\tcomparison\n" << to_string(h1) << "\t" << to_string(h2) << "\t";
    o.stream() << to_string(c) << "\n";
    o.flush();
    return 0;
}

DiscoveryResult discover_with(const KnowledgeBase& kb, const BiasConfig& bias, const Settings& s,
                              std::vector<StageReport>* stages) {
    DiscoveryOptions d;
    d.engine = engine_options(s);
    if (stages) d.progress = [stages](const StageReport& r) { stages->push_back(r); };
    return discover(kb, bias.language, d);
}

int run_discover(const std::string& onto, const std::string& prog, const std::string& bias_path, const Settings& s,
                 std::ostream& out) {
    auto kb = load_kb(onto, prog);
    auto bias = load_bias(bias_path, s);
    std::vector<StageReport> stages;
    auto r = discover_with(kb, bias, s, &stages);
    Output o(out, s.output);
    if (s.format == "records") {
        o.stream() << discovery_report(r);
    } else {
        for (const auto& st : stages)
            o.stream() << "level " << st.level << " depth " << st.depth << ": " << st.candidates << " candidates, "
                       << st.frequent << " frequent\n";
        o.stream() << "total: " << r.candidates() << " candidates, " << r.frequent_count() << " frequent\n";
        for (const auto& p : r.entries)
            if (p.frequent)
                o.stream() << "  " << p.count << "/" << p.population << "\t" << p.text << "\n";
    }
    o.flush();
    return 0;
}

int run_taxonomy(const std::string& onto, const std::string& prog, const std::string& bias_path,
                 const std::string& dot, const std::string& owl, const Settings& s, std::ostream& out) {
    auto kb = load_kb(onto, prog);
    auto bias = load_bias(bias_path, s);
    auto r = discover_with(kb, bias, s, nullptr);
    GeneralityOptions g;
    g.engine = engine_options(s);
    auto tax = build_taxonomy(r.frequent(), kb, bias.taxonomy, bias.language, g);
    Output o(out, s.output);
    o.stream() << (s.format == "records" ? taxonomy_records(tax)
                   : s.format == "json"  ? taxonomy_json(tax)
                                         : taxonomy_text(tax));
    o.flush();
    if (!dot.empty()) write_file(dot, taxonomy_dot(tax));
    if (!owl.empty()) write_file(owl, export_owl(refine_ontology(kb.sigma, tax, bias.language.reference)));
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"AL-log knowledge bases: validation, reasoning, query answering and concept discovery", "allog"};
    app.require_subcommand(1);
    Settings s;
    app.add_option("--format", s.format, "Output format; json applies to taxonomy reports")->check(CLI::IsMember({"text", "records", "json"}));
    app.add_option("--max-depth", s.max_depth, "Maximum nesting of resolution calls");
    app.add_option("--tableau-cap", s.tableau_cap, "Maximum tableau nodes per check");
    app.add_flag("--seedless", s.seedless, "Accepted for scripting; runs are always deterministic");
    app.add_option("-o,--output", s.output, "Write the report to a file");

    std::string onto, prog, bias, query, first, second, dot, owl;
    auto* validate = app.add_subcommand("validate", "Check the safety conditions of a knowledge base");
    validate->add_option("ontology", onto)->required();
    validate->add_option("program", prog)->required();

    auto* check = app.add_subcommand("check", "Consistency of an ontology");
    check->add_option("ontology", onto)->required();

    auto* q = app.add_subcommand("query", "Answer a query, or the answer set of an O-query");
    q->add_option("ontology", onto)->required();
    q->add_option("program", prog)->required();
    q->add_option("query", query)->required();

    auto* compare = app.add_subcommand("compare", "Generality order of two clauses");
    compare->add_option("ontology", onto)->required();
    compare->add_option("program", prog)->required();
    compare->add_option("first", first)->required();
    compare->add_option("second", second)->required();

    auto add_bias = [&](CLI::App* sub) {
        sub->add_option("ontology", onto)->required();
        sub->add_option("program", prog)->required();
        sub->add_option("bias", bias)->required();
        sub->add_option("--max-pattern-depth", s.max_pattern_depth, "Override maxD");
        sub->add_option("--min-granularity", s.min_granularity, "Override minG");
        sub->add_option("--search-bias", s.search_bias, "Override the search bias")
            ->check(CLI::IsMember({"mgd", "msd"}));
    };
    auto* disc = app.add_subcommand("discover", "Frequent patterns, level by level");
    add_bias(disc);
    auto* tax = app.add_subcommand("taxonomy", "Discover patterns and organise them into a taxonomy");
    add_bias(tax);
    tax->add_option("--dot", dot, "Write the taxonomy as a DOT graph");
    tax->add_option("--owl", owl, "Write the ontology extended by the taxonomy as OWL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) return run_validate(onto, prog, s, out);
        if (*check) return run_check(onto, s, out);
        if (*q) return run_query(onto, prog, query, s, out, err);
        if (*compare) return run_compare(onto, prog, first, second, s, out);
        if (*disc) return run_discover(onto, prog, bias, s, out);
        if (*tax) return run_taxonomy(onto, prog, bias, dot, owl, s, out);
    } catch (const Failure& f) {
        err << f.message << "\n";
        return 1;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace allog
