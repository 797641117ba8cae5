#include <gtest/gtest.h>

#include "util.hpp"

using namespace dualsm;

TEST(Syntax, ParsesRulesAndAggregates) {
    const auto p = parse_program(
        "% comment\n"
        "p(1). q(X) | r(X) :- p(X), not s(X), X != 2.\n"
        ":- #sum{W,X : w(X,W)} >= 3.\n"
        "t :- not #min{X : p(X)} < #inf.\n");
    ASSERT_EQ(p.rules.size(), 4u);
    EXPECT_TRUE(p.rules[0].body.empty());
    EXPECT_EQ(p.rules[1].head.size(), 2u);
    EXPECT_EQ(p.rules[1].body.size(), 3u);
    EXPECT_TRUE(p.rules[2].head.empty());
    const auto& agg = std::get<AggregateLiteral>(p.rules[2].body[0]);
    EXPECT_EQ(agg.atom.function, AggregateFunction::Sum);
    EXPECT_EQ(agg.atom.tuple.size(), 2u);
    EXPECT_EQ(agg.atom.rel, Relation::Ge);
    const auto& neg = std::get<AggregateLiteral>(p.rules[3].body[0]);
    EXPECT_EQ(neg.polarity, Polarity::Not);
    EXPECT_EQ(neg.atom.bound.kind, Term::Kind::Inf);
}

TEST(Syntax, PrintsCanonically) {
    const auto p = parse_program("p(X/2+1) :- q(X),not r, #count{ 1 : not p(X) } < 1.");
    EXPECT_EQ(pretty_print(p), "p(X/2+1) :- q(X), not r, #count{1 : not p(X)} < 1.\n");
}

TEST(Syntax, ReportsLineAndColumn) {
    try {
        parse_program("p.\nq :- .");
        FAIL() << "accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 6u);
    }
    EXPECT_THROW(parse_program("p :- #count{X : q(X)} < 1"), ParseError);
    EXPECT_THROW(parse_program("p :- #avg{X : q(X)} < 1."), ParseError);
}

TEST(Syntax, VariableClassification) {
    const auto p = parse_program("h(X) :- q(X), #count{Y : r(X,Y)} > 0.");
    const auto c = classify_variables(p.rules[0]);
    EXPECT_EQ(c.global, (std::set<std::string>{"X"}));
    ASSERT_EQ(c.local.count(1), 1u);
    EXPECT_EQ(c.local.at(1), (std::set<std::string>{"Y"}));
}

// Printing and parsing again gives the same program.
TEST(Syntax, RoundTripOnGeneratedPrograms) {
    GenProfile prof;
    prof.int_lo = -2;
    prof.int_hi = 2;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto p = gen_program(with_seed(prof, seed));
        const auto text = pretty_print(p);
        EXPECT_EQ(parse_program(text), p) << text;
        EXPECT_EQ(pretty_print(parse_program(text)), text);
    }
}

TEST(Syntax, RoundTripOfOperators) {
    for (const char* text : {"p(1-(2-3)).\n", "p((1+2)*3).\n", "p(-3,#sup,f(a,g(#inf))).\n",
                             "q :- X = 1, X <= 2, X >= 0, X > -1, X < 4, X != 3, p(X).\n"}) {
        EXPECT_EQ(pretty_print(parse_program(text)), text);
    }
}
