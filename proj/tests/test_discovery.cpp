#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "allog/discovery.hpp"
#include "fixtures.hpp"

using namespace allog;
using fixtures::clause;

namespace {

LanguageSpec mini_spec(std::size_t max_depth = 5, std::size_t max_granularity = 3) {
    auto spec = fixtures::unwrap(parse_bias(fixtures::read("mini.bias"))).language;
    spec.max_depth = max_depth;
    spec.max_granularity = max_granularity;
    return spec;
}

bool has(const std::vector<Clause>& cs, const char* text) {
    auto want = canonical_text(clause(text));
    return std::any_of(cs.begin(), cs.end(), [&](const Clause& c) { return to_string(c) == want; });
}

std::set<std::string> frequent_texts(const DiscoveryResult& r) {
    std::set<std::string> out;
    for (const auto& e : r.entries)
        if (e.frequent) out.insert(e.text);
    return out;
}

// Star patterns over the two MINI predicates, enumerated directly.
struct OraclePattern {
    std::vector<std::pair<std::string, std::string>> atoms;  // predicate, concept ("" when free)
};

const std::map<std::string, std::string> kUp{{"AfroAsiaticLanguage", "Language"},
                                             {"IndoEuropeanLanguage", "Language"},
                                             {"MonotheisticReligion", "Religion"},
                                             {"ArabicLanguage", "AfroAsiaticLanguage"},
                                             {"IndoIranianLanguage", "IndoEuropeanLanguage"},
                                             {"ChristianReligion", "MonotheisticReligion"},
                                             {"MuslimReligion", "MonotheisticReligion"}};
const std::map<std::string, std::size_t> kLevel{
    {"Language", 1}, {"Religion", 1}, {"AfroAsiaticLanguage", 2}, {"IndoEuropeanLanguage", 2},
    {"MonotheisticReligion", 2}, {"ArabicLanguage", 3}, {"IndoIranianLanguage", 3},
    {"ChristianReligion", 3}, {"MuslimReligion", 3}};

std::string root_of(std::string c) {
    while (kUp.count(c)) c = kUp.at(c);
    return c;
}

Clause build(const OraclePattern& p) {
    Clause c;
    c.head = Atom{"q", {Term::var("X")}};
    c.constraints.push_back({Term::var("X"), Concept::atomic("MiddleEastCountry")});
    for (std::size_t i = 0; i < p.atoms.size(); ++i) {
        auto v = Term::var("Y" + std::to_string(i));
        c.body.push_back(Atom{p.atoms[i].first, {Term::var("X"), v}});
        if (!p.atoms[i].second.empty()) c.constraints.push_back({v, Concept::atomic(p.atoms[i].second)});
    }
    return c;
}

// 0 for free patterns, -1 for mixed ones
int oracle_level(const OraclePattern& p) {
    std::set<std::size_t> ls;
    for (const auto& [pred, c] : p.atoms)
        if (!c.empty()) ls.insert(kLevel.at(c));
    if (ls.size() > 1) return -1;
    return ls.empty() ? 0 : static_cast<int>(*ls.begin());
}

std::size_t oracle_depth(const OraclePattern& p) {
    std::size_t k = 1;
    for (const auto& a : p.atoms) k += a.second.empty() ? 1 : 2;
    return k;
}

std::vector<OraclePattern> oracle_language(const LanguageSpec& spec) {
    std::vector<std::pair<std::string, std::string>> items;
    for (const std::string pred : {"speaks", "believes"}) {
        items.push_back({pred, ""});
        for (const auto& [c, l] : kLevel)
            if (l <= spec.max_granularity && root_of(c) == (pred == "speaks" ? "Language" : "Religion"))
                items.push_back({pred, c});
    }
    std::vector<OraclePattern> out;
    std::function<void(std::size_t, OraclePattern)> grow = [&](std::size_t from, OraclePattern p) {
        if (oracle_level(p) < 0 || oracle_depth(p) > spec.max_depth) return;
        out.push_back(p);
        for (std::size_t i = from; i < items.size(); ++i) {
            auto q = p;
            q.atoms.push_back(items[i]);
            grow(i, q);
        }
    };
    grow(0, {});
    return out;
}

std::vector<OraclePattern> oracle_parents(const OraclePattern& p) {
    std::vector<OraclePattern> out;
    for (std::size_t i = 0; i < p.atoms.size(); ++i) {
        auto q = p;
        if (p.atoms[i].second.empty()) q.atoms.erase(q.atoms.begin() + static_cast<std::ptrdiff_t>(i));
        else q.atoms[i].second.clear();
        out.push_back(q);
    }
    if (oracle_level(p) > 1) {
        auto q = p;
        for (auto& a : q.atoms)
            if (!a.second.empty()) a.second = kUp.at(a.second);
        out.push_back(q);
    }
    return out;
}

struct OracleRun {
    std::set<std::string> candidates, frequent;
};

OracleRun oracle_discover(const KnowledgeBase& kb, const LanguageSpec& spec) {
    Engine engine(kb);
    std::map<std::string, bool> memo;
    std::map<std::string, OraclePattern> by_text;
    for (const auto& p : oracle_language(spec)) by_text.emplace(canonical_text(build(p)), p);
    OracleRun run;
    std::function<bool(const OraclePattern&)> frequent = [&](const OraclePattern& p) {
        auto text = canonical_text(build(p));
        auto it = memo.find(text);
        if (it != memo.end()) return it->second;
        bool parents_ok = true;
        for (const auto& q : oracle_parents(p)) parents_ok = parents_ok && frequent(q);
        bool f = false;
        if (parents_ok) {
            run.candidates.insert(text);
            int lv = oracle_level(p);
            f = engine.support(build(p)) >= spec.threshold(static_cast<std::size_t>(std::max(lv, 1)));
        }
        memo.emplace(text, f);
        if (f) run.frequent.insert(text);
        return f;
    };
    for (const auto& [text, p] : by_text) frequent(p);
    return run;
}

}  // namespace

TEST(Discovery, TrivialQuery) {
    auto spec = mini_spec();
    auto q = trivial_query(spec);
    EXPECT_EQ(to_string(q), to_string(clause("q(X) :- & X:MiddleEastCountry.")));
    EXPECT_EQ(q, trivial_query(spec));
    ASSERT_TRUE(q.head.has_value());
    EXPECT_EQ(q.head->predicate, "q");
    EXPECT_EQ(q.head->arity(), 1u);
    EXPECT_EQ(pattern_depth(q), 1u);
}

TEST(Discovery, DepthCountsAtomsConstraintsAndConstants) {
    EXPECT_EQ(pattern_depth(clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language.")), 3u);
    EXPECT_EQ(pattern_depth(clause("q(X) :- speaks(X,Y), believes(X,Z) & X:MiddleEastCountry, Y:Language, Z:Religion.")),
              5u);
    EXPECT_EQ(pattern_depth(clause("q(X) :- believes(X,'SunniMuslim') & X:MiddleEastCountry.")), 3u);
}

TEST(Discovery, RefinementsOfTheRunningExample) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec();
    Engine e(kb);
    Refinement r(spec, kb, e.reasoner());
    auto top = trivial_query(spec);
    auto first = r.refine(top);
    EXPECT_TRUE(has(first, "q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language."));
    EXPECT_TRUE(has(first, "q(X) :- speaks(X,Y) & X:MiddleEastCountry."));
    EXPECT_TRUE(has(first, "q(X) :- believes(X,Y) & X:MiddleEastCountry, Y:MonotheisticReligion."));
    EXPECT_FALSE(has(first, "q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Religion."));

    auto q1 = canonical_form(clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language."));
    EXPECT_EQ(r.level_of(q1), 1u);
    auto down = r.refine(q1);
    EXPECT_TRUE(has(down, "q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:IndoEuropeanLanguage."));
    EXPECT_TRUE(has(down, "q(X) :- speaks(X,Y), believes(X,Z) & X:MiddleEastCountry, Y:Language."));
    EXPECT_TRUE(has(down, "q(X) :- speaks(X,Y), believes(X,Z) & X:MiddleEastCountry, Y:Language, Z:Religion."));
    // no mixing of granularities
    EXPECT_FALSE(has(down, "q(X) :- speaks(X,Y), believes(X,Z) & X:MiddleEastCountry, Y:Language, Z:MuslimReligion."));
    for (const auto& c : down) {
        EXPECT_TRUE(is_linked_connected(c)) << to_string(c);
        EXPECT_LE(e.support(c), e.support(q1)) << to_string(c);
    }
    auto parents = r.parents(canonical_form(clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:IndoEuropeanLanguage.")));
    EXPECT_TRUE(has(parents, "q(X) :- speaks(X,Y) & X:MiddleEastCountry."));
    EXPECT_TRUE(has(parents, "q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language."));
    EXPECT_EQ(parents.size(), 2u);
}

TEST(Discovery, NoNewAtomsAtMaximumDepth) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec(3, 3);
    Engine e(kb);
    Refinement r(spec, kb, e.reasoner());
    auto q1 = canonical_form(clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language."));
    auto out = r.refine(q1);
    ASSERT_FALSE(out.empty());
    for (const auto& c : out) {
        EXPECT_EQ(c.body.size(), 1u) << to_string(c);
        EXPECT_EQ(pattern_depth(c), 3u);
    }
}

TEST(Discovery, LevelsAreUniform) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec();
    Engine e(kb);
    Refinement r(spec, kb, e.reasoner());
    EXPECT_EQ(r.level_of(trivial_query(spec)), 0u);
    EXPECT_EQ(r.stage_of(trivial_query(spec)), 1u);
    EXPECT_EQ(r.level_of(clause("q(X) :- speaks(X,Y), believes(X,Z) & X:MiddleEastCountry, Y:ArabicLanguage, "
                                "Z:MuslimReligion.")),
              3u);
    EXPECT_FALSE(r.level_of(clause("q(X) :- speaks(X,Y), believes(X,Z) & X:MiddleEastCountry, Y:Language, "
                                   "Z:MuslimReligion."))
                     .has_value());
    EXPECT_EQ(r.level_of(clause("q(X) :- believes(X,'SunniMuslim') & X:MiddleEastCountry.")), 3u);
    EXPECT_TRUE(r.constant_pool("speaks").empty());
}

TEST(Discovery, FrequentSetIsClosedUnderParents) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec();
    Engine e(kb);
    auto result = discover(e, spec);
    Refinement r(spec, kb, e.reasoner());
    std::map<std::string, const PatternEntry*> by_text;
    for (const auto& p : result.entries) by_text.emplace(p.text, &p);
    auto freq = frequent_texts(result);
    std::size_t edges = 0;
    for (const auto& p : result.entries) {
        EXPECT_TRUE(is_linked_connected(p.query)) << p.text;
        EXPECT_EQ(p.query.constraints.front().type, Concept::atomic("MiddleEastCountry"));
        for (std::size_t id : p.parents) EXPECT_TRUE(result.entries[id].frequent) << p.text;
        if (!p.frequent) continue;
        for (const auto& up : r.parents(p.query)) EXPECT_TRUE(freq.count(to_string(up))) << p.text;
        for (const auto& down : r.refine(p.query)) {
            auto it = by_text.find(to_string(down));
            if (it == by_text.end()) continue;
            ++edges;
            EXPECT_LE(it->second->support, p.support) << p.text << " -> " << it->second->text;
        }
    }
    std::printf("MINI candidates %zu frequent %zu refine-edges %zu\n", result.candidates(), result.frequent_count(),
                edges);
    EXPECT_GT(edges, 20u);
    EXPECT_TRUE(result.entries.front().frequent);
    EXPECT_EQ(result.entries.front().support, Rational(1, 1));
}

TEST(Discovery, AgreesWithBruteForceEnumeration) {
    auto kb = fixtures::kb("mini");
    for (auto [d, g] : {std::pair<std::size_t, std::size_t>{3, 1}, {3, 2}, {4, 2}, {5, 3}}) {
        auto spec = mini_spec(d, g);
        auto expected = oracle_discover(kb, spec);
        auto result = discover(kb, spec);
        std::set<std::string> candidates;
        for (const auto& p : result.entries) candidates.insert(p.text);
        EXPECT_EQ(frequent_texts(result), expected.frequent) << "maxD " << d << " maxG " << g;
        EXPECT_EQ(candidates, expected.candidates) << "maxD " << d << " maxG " << g;
    }
}

TEST(Discovery, FullSupportThreshold) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec(3, 2);
    spec.minsup = {Rational(1, 1), Rational(1, 1)};
    Engine e(kb);
    auto result = discover(e, spec);
    std::set<std::string> full;
    for (const auto& p : oracle_language(spec)) {
        auto c = build(p);
        if (e.support(c) == Rational(1, 1)) full.insert(canonical_text(c));
    }
    EXPECT_EQ(frequent_texts(result), full);
    EXPECT_TRUE(full.count(canonical_text(clause("q(X) :- believes(X,Y) & X:MiddleEastCountry."))));
    EXPECT_FALSE(full.count(canonical_text(clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry."))));
}

TEST(Discovery, ThresholdAboveEverySupport) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec(4, 2);
    spec.minsup = {Rational(1, 1), Rational(1, 1)};
    auto kb2 = kb;
    // no country is a Tibetan one
    kb2.sigma.declare_concept("TibetanCountry");
    spec.reference = "TibetanCountry";
    auto none = discover(kb2, spec);
    EXPECT_EQ(none.frequent_count(), 0u);
    EXPECT_EQ(none.candidates(), 1u);
}

TEST(Discovery, IndependentOfEvaluationOrder) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec();
    Engine e(kb);
    auto base = discover(e, spec);
    for (unsigned seed : {1u, 7u, 1234u}) {
        DiscoveryOptions o;
        o.evaluation_seed = seed;
        auto shuffled = discover(e, spec, o);
        EXPECT_EQ(frequent_texts(shuffled), frequent_texts(base)) << seed;
        EXPECT_EQ(shuffled.candidates(), base.candidates()) << seed;
    }
}

TEST(Discovery, ReportHasOneRecordPerCandidate) {
    auto kb = fixtures::kb("mini");
    auto spec = mini_spec(3, 2);
    std::vector<StageReport> stages;
    DiscoveryOptions o;
    o.progress = [&](const StageReport& s) { stages.push_back(s); };
    auto result = discover(kb, spec, o);
    EXPECT_EQ(stages.size(), 4u);
    std::size_t staged = 1;
    for (const auto& s : stages) staged += s.candidates;
    EXPECT_EQ(staged, result.candidates());
    auto report = discovery_report(result);
    EXPECT_EQ(static_cast<std::size_t>(std::count(report.begin(), report.end(), '\n')), result.candidates() + 1);
    EXPECT_EQ(report.substr(0, report.find('\n')), "id\tlevel\tdepth\tsupport\tpercent\tfrequent\tparents\tpattern");
    EXPECT_NE(report.find("\t3/3\t100.0 %\tyes\t-\t"), std::string::npos);
    EXPECT_NE(report.find("\t2/3\t66.6 %\tyes\t"), std::string::npos);
}
