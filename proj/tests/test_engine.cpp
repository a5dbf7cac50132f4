#include <gtest/gtest.h>

#include "allog/engine.hpp"
#include "fixtures.hpp"

using namespace allog;
using fixtures::clause;

namespace {

using Names = std::vector<std::string>;

KnowledgeBase mini() { return fixtures::kb("mini"); }

KnowledgeBase rules_only(KnowledgeBase kb) {
    std::erase_if(kb.program, [](const Clause& c) { return c.is_fact(); });
    return kb;
}

Atom atom(const std::string& text) { return clause(text + ".").head.value(); }

}  // namespace

TEST(Engine, AnswerSetOfSpeaksQuery) {
    Engine e(mini());
    auto q = clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language");
    EXPECT_EQ(e.answer_set(q), (Names{"ARM", "IR"}));
    EXPECT_EQ(e.support(q), Rational(2, 3));
    EXPECT_EQ(to_percent(e.support(q)), "66.6 %");
}

TEST(Engine, TrivialQueryCoversReference) {
    Engine e(mini());
    auto qt = clause("q(X) :- & X:MiddleEastCountry");
    EXPECT_EQ(e.answer_set(qt), (Names{"ARM", "IR", "SA"}));
    EXPECT_EQ(e.support(qt), Rational(1, 1));
}

TEST(Engine, ConceptHierarchyUsedInConstraints) {
    Engine e(mini());
    EXPECT_EQ(e.answer_set(clause("q(X) :- believes(X,Y) & X:MiddleEastCountry, Y:MuslimReligion")),
              (Names{"ARM", "IR", "SA"}));
    EXPECT_EQ(e.answer_set(clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:IndoEuropeanLanguage")),
              (Names{"ARM", "IR"}));
    EXPECT_EQ(e.answer_set(clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:IndoIranianLanguage")),
              (Names{"ARM", "IR"}));
    EXPECT_EQ(e.answer_set(clause("q(X) :- believes(X,Y) & X:MiddleEastCountry, Y:ChristianReligion")),
              (Names{"ARM"}));
}

TEST(Engine, ObjectIdentityInAnswerSets) {
    Engine e(mini());
    auto q = clause("q(A) :- believes(A,B), believes(A,C) & A:MiddleEastCountry, B:MuslimReligion");
    EXPECT_EQ(e.answer_set(q), (Names{"ARM", "IR"}));
    QueryOptions plain;
    Clause g = clause("?- believes('SA',B), believes('SA',C) & B:MuslimReligion");
    EXPECT_TRUE(e.answer(g, plain));
    QueryOptions oi;
    oi.object_identity = true;
    EXPECT_FALSE(e.answer(g, oi));
}

TEST(Engine, GroundQueries) {
    Engine e(mini());
    EXPECT_TRUE(e.answer(clause("?- speaks('IR','Persian')")));
    EXPECT_FALSE(e.answer(clause("?- speaks('SA',L)")));
    EXPECT_TRUE(e.answer(clause("?- believes('SA',R) & R:MonotheisticReligion")));
    EXPECT_FALSE(e.answer(clause("?- believes('SA',R) & R:ChristianReligion")));
    EXPECT_TRUE(e.answer(clause("?- language('IR','Persian',P)")));
}

TEST(Engine, DerivationsCarryConstraints) {
    Engine e(mini());
    auto r = e.resolve_all(clause("?- speaks('IR',L)"));
    ASSERT_EQ(r.derivations.size(), 2u);
    EXPECT_FALSE(r.depth_limited);
    const auto& d = r.derivations[0];
    EXPECT_EQ(to_string(d.answer), "{L/'Persian'}");
    EXPECT_EQ(d.constraints.to_string(), "{'IR':Country, 'Persian':Language}");
}

TEST(Engine, DisjunctionNeedsEveryDerivation) {
    auto kb = fixtures::kb("mini");
    kb.sigma = fixtures::unwrap(parse_ontology(R"(
concept A, B.
individual a, b.
a : A or B.
b : A.
)"));
    kb.program = fixtures::unwrap(parse_program(R"(
p(X) :- r(X) & X:A.
p(X) :- r(X) & X:B.
s(X) :- r(X) & X:A.
r(a). r(b).
)")).clauses;
    Engine e(kb);
    EXPECT_TRUE(e.answer(clause("?- p(a)")));
    EXPECT_FALSE(e.answer(clause("?- s(a)")));
    EXPECT_TRUE(e.answer(clause("?- s(b)")));
}

TEST(Engine, RecursionTerminatesOnCycles) {
    KnowledgeBase kb;
    kb.program = fixtures::unwrap(parse_program(R"(
path(X,Y) :- edge(X,Y).
path(X,Y) :- path(X,Z), edge(Z,Y).
edge(a,b). edge(b,c). edge(c,a). edge(d,d).
)")).clauses;
    Engine e(kb);
    EXPECT_TRUE(e.answer(clause("?- path(a,a)")));
    EXPECT_TRUE(e.answer(clause("?- path(c,b)")));
    EXPECT_FALSE(e.answer(clause("?- path(a,d)")));
    auto r = e.resolve_all(clause("?- path(a,Y)"));
    std::set<std::string> ys;
    for (const auto& d : r.derivations) ys.insert(d.answer.at("Y").name);
    EXPECT_EQ(ys, (std::set<std::string>{"a", "b", "c"}));
}

TEST(Engine, DepthCapIsReported) {
    KnowledgeBase kb;
    kb.program = fixtures::unwrap(parse_program(R"(
n(z).
n(Y) :- s(X,Y), n(X).
s(z,s1). s(s1,s2). s(s2,s3). s(s3,s4). s(s4,s5).
)")).clauses;
    EngineOptions shallow;
    shallow.max_depth = 4;
    Engine e(kb, shallow);
    auto r = e.resolve_all(clause("?- n(s5)"));
    EXPECT_TRUE(r.derivations.empty());
    EXPECT_TRUE(r.depth_limited);
    EXPECT_TRUE(Engine(kb).answer(clause("?- n(s5)")));
}

TEST(Engine, UnboundConstrainedVariablesRangeOverConstants) {
    auto kb = mini();
    kb.program.push_back(clause("lang(L) :- & L:IndoIranianLanguage."));
    Engine e(kb);
    auto r = e.resolve_all(clause("?- lang(L)"));
    std::set<std::string> ls;
    for (const auto& d : r.derivations)
        if (e.reasoner().entails_disjunction({d.constraints})) ls.insert(d.answer.at("L").name);
    EXPECT_EQ(ls, (std::set<std::string>{"Kurdish", "Persian"}));
    EXPECT_TRUE(e.answer(clause("?- lang('Persian')")));
    EXPECT_FALSE(e.answer(clause("?- lang('Arabic')")));
}

TEST(Engine, CoverageUnderInterpretations) {
    auto kb = rules_only(mini());
    auto h = clause("q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language.");
    Observation ir{atom("q('IR')"), {atom("language('IR','Persian',58)"), atom("language('IR','Arabic',1)")}};
    Observation sa{atom("q('SA')"), {atom("religion('SA','SunniMuslim',100)")}};
    EXPECT_TRUE(covers_interpretations(h, kb, ir));
    EXPECT_FALSE(covers_interpretations(h, kb, sa));
    auto two = clause("q(X) :- speaks(X,Y), speaks(X,Z) & X:MiddleEastCountry.");
    Observation one{atom("q('IR')"), {atom("language('IR','Persian',58)")}};
    EXPECT_TRUE(covers_interpretations(two, kb, ir));
    EXPECT_FALSE(covers_interpretations(two, kb, one));
}

TEST(Engine, CoverageUnderEntailment) {
    auto kb = rules_only(mini());
    auto h = clause("q(X) :- speaks(X,Y) & X:Country, Y:IndoEuropeanLanguage.");
    EXPECT_TRUE(covers_entailment(h, kb, clause("q('IR') :- language('IR','Persian',58).")));
    EXPECT_FALSE(covers_entailment(h, kb, clause("q('IR') :- language('IR','Arabic',1).")));
    EXPECT_TRUE(covers_entailment(h, kb, clause("q(t) :- language(t,'Persian',58) & t:Country.")));
}
