#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = dualsm::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string neg_count = "p :- #count{1 : not p} < 1.\n";

}  // namespace

TEST(Cli, SolveBoth) {
    const auto r = run({"solve", "--semantics", "both"}, neg_count);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(dualsm::Json::parse(r.out).dump(),
              R"({"schema":"dualsm/1","semantics":"both","flp":[[]],"ft":[[],["p"]],"equal":false})");
}

TEST(Cli, SolveSingleSemantics) {
    const auto r = run({"solve", "--semantics", "ft", "--translation", "tau"}, neg_count);
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = dualsm::Json::parse(r.out);
    EXPECT_EQ(j["semantics"], "ft");
    EXPECT_EQ(j["translation"], "tau");
    EXPECT_EQ(j["models"].dump(), R"([[],["p"]])");
}

TEST(Cli, Parse) {
    const auto r = run({"parse"}, "p(X) :- q(X), not r(X).\nq(1..2).\n");
    EXPECT_EQ(r.code, 2);  // intervals are not part of the language
    const auto ok = run({"parse"}, "p(X)   :- q(X),not r(X).");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "p(X) :- q(X), not r(X).\n");
}

TEST(Cli, ParseErrorLocation) {
    const auto r = run({"parse"}, "p :- q(.\n");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("<stdin>:1:"), std::string::npos) << r.err;
}

TEST(Cli, GroundShowsTauForm) {
    const auto r = run({"ground", "--translation", "tau"}, neg_count);
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = dualsm::Json::parse(r.out);
    ASSERT_EQ(j["formulas"].size(), 1u);
    const auto f = dualsm::formula_from_json(j["formulas"][0]);
    EXPECT_EQ(dualsm::to_string(f), "(~~p -> p)");
}

TEST(Cli, AnalyzeText) {
    const auto r = run({"analyze"}, neg_count);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
              "condition FAILS (1 of 1 recursive aggregate not positive)\n"
              "  rule 1, aggregate 1: #count{1 : not p} < 1  via p/0 -> p/0\n");
    EXPECT_EQ(run({"analyze", "--strict"}, neg_count).code, 1);
    EXPECT_EQ(run({"analyze", "--strict"}, "p :- #count{1 : p} > 0.").code, 0);
}

TEST(Cli, AnalyzeJsonAndDot) {
    const auto j = dualsm::Json::parse(run({"analyze", "--json"}, neg_count).out);
    EXPECT_FALSE(j["condition_holds"].get<bool>());
    EXPECT_EQ(j["violations"][0]["path"].dump(), R"(["p/0","p/0"])");
    EXPECT_EQ(run({"analyze", "--emit-dot"}, neg_count).out, "digraph predicates {\n  \"p/0\";\n  \"p/0\" -> \"p/0\";\n}\n");
    EXPECT_EQ(run({"analyze", "--emit-dot", "--emit-dot-simple"}, neg_count).code, 2);
    EXPECT_EQ(run({"analyze", "--emit-dot-simple"}, neg_count).code, 0);
}

TEST(Cli, Diff) {
    const auto r = run({"diff"}, neg_count);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("differ (counterexample-candidate)"), std::string::npos) << r.out;
    const auto j = dualsm::Json::parse(run({"diff", "--json"}, "p :- #count{1 : p} > 0.").out);
    EXPECT_TRUE(j["agree"].get<bool>());
    EXPECT_EQ(j["classification"], "theorem-instance");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"solve", "--semantics", "xx"}, neg_count).code, 2);
    EXPECT_EQ(run({"solve"}, "p :- #avg{1 : q} > 0.").code, 2);
    // 14 integers and two constants make the condition domain too large.
    EXPECT_EQ(run({"solve", "--ints", "0..13"}, "p :- #count{X : q(X)} > 0. q(1).").code, 3);
    EXPECT_EQ(run({"solve", "--ints", "0..1", "--no-inf-sup"}, "p :- #count{X : q(X)} > 0. q(1).").code, 0);
    EXPECT_EQ(run({"solve", "missing-file.lp"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, FuzzSmall) {
    const auto r = run({"fuzz", "--seeds", "20", "--mode", "both"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("programs"), std::string::npos) << r.out;
}
