#include <gtest/gtest.h>

#include <limits>

#include "util.hpp"

using namespace dualsm;

namespace {

Value eval(const std::string& text) {
    // Evaluate the single argument of a fact p(text).
    const auto p = parse_program("p(" + text + ").");
    auto v = eval_term(p.rules[0].head[0].args[0]);
    if (!v) throw std::runtime_error("ill-formed: " + text);
    return *v;
}

bool well_formed(const std::string& text) {
    const auto p = parse_program("p(" + text + ").");
    return eval_term(p.rules[0].head[0].args[0]).has_value();
}

}  // namespace

TEST(Terms, OrderBetweenClasses) {
    const std::vector<Value> ascending{
        Value::inf(),          Value::num(-5),         Value::num(0),
        Value::num(7),         Value::sym("a"),        Value::sym("b"),
        Value::comp("f", {Value::num(9)}),             Value::comp("f", {Value::num(1), Value::num(0)}),
        Value::comp("g", {Value::num(0)}),             Value::sup()};
    for (std::size_t i = 0; i + 1 < ascending.size(); ++i) {
        EXPECT_LT(ascending[i], ascending[i + 1]) << to_string(ascending[i]) << " vs " << to_string(ascending[i + 1]);
    }
}

TEST(Terms, CompoundsCompareArgumentsLexicographically) {
    EXPECT_LT(Value::comp("f", {Value::num(1), Value::sym("z")}), Value::comp("f", {Value::num(2), Value::sym("a")}));
    EXPECT_LT(Value::comp("f", {Value::num(1), Value::sym("a")}), Value::comp("f", {Value::num(1), Value::sym("b")}));
}

TEST(Terms, FloorDivision) {
    EXPECT_EQ(eval("7/2"), Value::num(3));
    EXPECT_EQ(eval("-7/2"), Value::num(-4));
    EXPECT_EQ(eval("7/(-2)"), Value::num(-4));
    EXPECT_EQ(eval("-7/(-2)"), Value::num(3));
    EXPECT_EQ(eval("6/3"), Value::num(2));
}

TEST(Terms, IllFormedTerms) {
    EXPECT_FALSE(well_formed("1/0"));
    EXPECT_FALSE(well_formed("a+1"));
    EXPECT_FALSE(well_formed("f(1/0)"));
    EXPECT_FALSE(well_formed("#sup-1"));
    EXPECT_TRUE(well_formed("f(a, 2*3)"));
    EXPECT_EQ(eval("f(a, 2*3)"), Value::comp("f", {Value::sym("a"), Value::num(6)}));
}

TEST(Terms, OverflowRaises) {
    const auto max = std::to_string(std::numeric_limits<std::int64_t>::max());
    try {
        eval(max + "+1");
        FAIL() << "no overflow";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Overflow);
    }
    EXPECT_THROW(eval(max + "*2"), Error);
    EXPECT_EQ(eval(max + "-1"), Value::num(std::numeric_limits<std::int64_t>::max() - 1));
}

TEST(Terms, Relations) {
    EXPECT_TRUE(holds(Relation::Lt, Value::inf(), Value::num(-100)));
    EXPECT_TRUE(holds(Relation::Gt, Value::sup(), Value::comp("f", {})));
    EXPECT_TRUE(holds(Relation::Ne, Value::sym("a"), Value::num(1)));
    EXPECT_TRUE(holds(Relation::Le, Value::num(2), Value::num(2)));
    EXPECT_FALSE(holds(Relation::Ge, Value::num(1), Value::sym("a")));
}

TEST(Terms, CountAndSum) {
    const std::set<TermTuple> ts{{Value::num(2), Value::sym("a")}, {Value::num(2), Value::sym("b")}, {Value::sym("c")}};
    EXPECT_EQ(apply_aggregate(AggregateFunction::Count, ts), Value::num(3));
    // Tuples with a non-numeral first member weigh 0; equal weights count twice
    // when the tuples differ.
    EXPECT_EQ(apply_aggregate(AggregateFunction::Sum, ts), Value::num(4));
    EXPECT_EQ(apply_aggregate(AggregateFunction::Sum, {}), Value::num(0));
    EXPECT_EQ(apply_aggregate(AggregateFunction::Count, {}), Value::num(0));
}

TEST(Terms, MinMax) {
    const std::set<TermTuple> ts{{Value::num(3)}, {Value::sym("a")}, {Value::num(-1), Value::num(9)}};
    EXPECT_EQ(apply_aggregate(AggregateFunction::Min, ts), Value::num(-1));
    EXPECT_EQ(apply_aggregate(AggregateFunction::Max, ts), Value::sym("a"));
    EXPECT_EQ(apply_aggregate(AggregateFunction::Min, {}), Value::sup());
    EXPECT_EQ(apply_aggregate(AggregateFunction::Max, {}), Value::inf());
    EXPECT_THROW(apply_aggregate(AggregateFunction::Min, {TermTuple{}}), Error);
}

TEST(Terms, SumOverflow) {
    const auto big = std::numeric_limits<std::int64_t>::max();
    const std::set<TermTuple> ts{{Value::num(big)}, {Value::num(1)}};
    EXPECT_THROW(apply_aggregate(AggregateFunction::Sum, ts), Error);
}
