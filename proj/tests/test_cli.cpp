#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "fixtures.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "allog");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = allog::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ALLOG_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "allog_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, ValidateFixtures) {
    auto r = run({"validate", data("mini.onto"), data("mini.dlp")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("ok: ", 0), 0u);
    EXPECT_EQ(run({"validate", data("cia.onto"), data("cia.dlp")}).code, 0);
}

TEST(Cli, ValidateReportsViolations) {
    auto prog = scratch("bad.dlp");
    std::ofstream(prog) << fixtures::read("mini.dlp") << "language('YE','Arabic',100).\n";
    auto r = run({"--format", "records", "validate", data("mini.onto"), prog.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("\tunknown-constant\tYE\t"), std::string::npos) << r.out;
}

TEST(Cli, ParseErrorsAreLocated) {
    auto onto = scratch("bad.onto");
    std::ofstream(onto) << "concept A.\nA <= B.\n";
    auto r = run({"check", onto.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err, onto.string() + ":2:6: undeclared concept B\n");
    EXPECT_EQ(run({"check", scratch("missing.onto").string()}).code, 1);
}

TEST(Cli, Check) {
    auto r = run({"check", data("cia.onto")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "consistent\n");
}

TEST(Cli, QueryAnswers) {
    auto r = run({"query", data("mini.onto"), data("mini.dlp"), "?- speaks('SA','Arabic')."});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "no\n");
    r = run({"query", data("mini.onto"), data("mini.dlp"), "?- speaks('IR','Arabic')."});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("yes", 0), 0u);
    r = run({"query", data("mini.onto"), data("mini.dlp"), "?- speaks(X,Y) & Y:ArabicLanguage."});
    EXPECT_EQ(r.out.rfind("{X/'ARM', Y/'Arabic'}  given ", 0), 0u) << r.out;
    r = run({"query", data("cia.onto"), data("cia.dlp"), "q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:Language."});
    EXPECT_EQ(r.out, "{ARM, IR, SA, YE}\nsupport 4/15 (26.6 %)\n");
}

TEST(Cli, Compare) {
    auto r = run({"compare", data("cia.onto"), data("cia.dlp"), "q(X) :- speaks(X,Y) & X:MiddleEastCountry.",
                  "q(X) :- speaks(X,Y) & X:MiddleEastCountry, Y:ArabicLanguage."});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "more-general\n");
}

TEST(Cli, TaxonomyRecords) {
    auto r = run({"--format", "records", "taxonomy", data("cia.onto"), data("cia.dlp"), data("cia.bias")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 13);
    r = run({"--format", "records", "taxonomy", data("cia.onto"), data("cia.dlp"), data("cia.bias"),
             "--min-granularity", "3"});
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 10);
}

TEST(Cli, ReportsAreByteIdentical) {
    for (const char* cmd : {"discover", "taxonomy"}) {
        std::vector<std::string> args{"--format", "records", cmd, data("cia.onto"), data("cia.dlp"), data("cia.bias")};
        auto a = run(args), b = run(args);
        args.insert(args.begin(), "--seedless");
        auto c = run(args);
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.out, c.out);
    }
}

TEST(Cli, SideOutputs) {
    auto dot = scratch("t.dot"), owl = scratch("t.owl"), report = scratch("t.txt");
    std::filesystem::remove(report);
    auto r = run({"-o", report.string(), "taxonomy", data("cia.onto"), data("cia.dlp"), data("cia.bias"), "--dot",
                  dot.string(), "--owl", owl.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(report).rfind("concept 0 (l=1, k=1)", 0), 0u);
    EXPECT_EQ(slurp(dot).rfind("digraph taxonomy {", 0), 0u);
    auto o = slurp(owl);
    EXPECT_NE(o.find("<owl:Class rdf:ID=\"MiddleEastCountry_11\">"), std::string::npos);
    EXPECT_NE(o.find("<MiddleEastCountry_1 rdf:ID=\"ARM\" />"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"--format", "yaml", "check", data("mini.onto")}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
    auto r = run({"--tableau-cap", "3", "taxonomy", data("cia.onto"), data("cia.dlp"), data("cia.bias")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("resource limit"), std::string::npos);
}
