#include <gtest/gtest.h>

#include "util.hpp"

using namespace dualsm;
using namespace dualsm::test;

namespace {

const std::vector<GroundAtom> P{atom("p")};

// (T -> p | ~p) -> p
SimpleProgram simple_middle() {
    return {SimpleRule{{SimpleImplication{{}, {lit("p"), neg("p")}}}, atoms({"p"})}};
}

// (T -> ~~p) -> p
SimpleProgram simple_double() {
    return {SimpleRule{{SimpleImplication{{}, {negneg("p")}}}, atoms({"p"})}};
}

Formula as_conjunction(const SimpleFormula& f) { return as_formula(f); }

// Direct evaluation of simple formulas from their definitions.
bool eval_literal(const Interpretation& I, const ExtendedLiteral& l) {
    const bool in = I.contains(l.atom);
    switch (l.mode) {
    case ExtendedLiteral::Mode::Plain: return in;
    case ExtendedLiteral::Mode::Neg: return !in;
    case ExtendedLiteral::Mode::NegNeg: return in;
    }
    return false;
}

bool eval_simple(const Interpretation& I, const SimpleFormula& f) {
    for (const auto& imp : f) {
        bool ante = true;
        for (const auto& a : imp.antecedent) ante = ante && I.contains(a);
        bool cons = false;
        for (const auto& l : imp.consequent) cons = cons || eval_literal(I, l);
        if (ante && !cons) return false;
    }
    return true;
}

}  // namespace

TEST(Simple, Printing) {
    EXPECT_EQ(to_string(SimpleImplication{atoms({"a", "b"}), {lit("p"), neg("q"), negneg("r")}}),
              "(a & b -> p | ~q | ~~r)");
    EXPECT_EQ(to_string(SimpleImplication{{}, {}}), "(#true -> #false)");
    EXPECT_EQ(to_string(simple_double()), "{(#true -> ~~p)} -> p\n");
}

TEST(Simple, EmbeddingOfDoubleNegation) {
    const auto r = *simple_double().begin();
    const auto p = at("p");
    EXPECT_EQ(as_raw_formula(r),
              Formula::implies(Formula::make_and({Formula::implies(Formula::top(),
                                                                   Formula::make_or({Formula::negation(Formula::negation(p))}))}),
                               Formula::make_or({p})));
    EXPECT_EQ(as_formula(SimpleFormula{}), Formula::top());
}

TEST(Simple, EmbeddingAgreesWithDirectEvaluation) {
    GenProfile prof;
    Rng rng(17);
    const auto alphabet = propositional_atoms(prof.simple_atoms);
    for (int i = 0; i < 2000; ++i) {
        const auto f = gen_simple_formula(rng, prof, alphabet);
        const auto I = gen_interpretation(rng, alphabet);
        EXPECT_EQ(satisfies(I, as_conjunction(f)), eval_simple(I, f)) << to_string(f);
        EXPECT_EQ(satisfies(I, as_raw_formula(f)), eval_simple(I, f));
    }
}

TEST(Simple, GraphsOfMiddleAndDoubleNegation) {
    const auto g3 = dep_graph(simple_middle());
    ASSERT_EQ(g3.edges.size(), 1u);
    EXPECT_TRUE(g3.edges[0].ft_critical);
    EXPECT_FALSE(g3.edges[0].flp_critical);
    EXPECT_FALSE(is_ft_tight(simple_middle()));
    EXPECT_TRUE(is_flp_tight(simple_middle()));

    const auto g4 = dep_graph(simple_double());
    ASSERT_EQ(g4.edges.size(), 1u);
    EXPECT_FALSE(g4.edges[0].ft_critical);
    EXPECT_TRUE(g4.edges[0].flp_critical);
    EXPECT_TRUE(is_ft_tight(simple_double()));
    EXPECT_FALSE(is_flp_tight(simple_double()));

    EXPECT_EQ(stable_models(simple_middle(), Semantics::FLP, P), models({{"p"}}));
    EXPECT_TRUE(stable_models(simple_middle(), Semantics::FT, P).empty());
    EXPECT_EQ(stable_models(simple_double(), Semantics::FLP, P), models({{}}));
    EXPECT_EQ(stable_models(simple_double(), Semantics::FT, P), models({{}, {"p"}}));
}

TEST(Simple, AntecedentOccurrencesMakeNoEdge) {
    const SimpleProgram h{SimpleRule{{SimpleImplication{atoms({"q"}), {lit("r")}}}, atoms({"p"})}};
    const auto g = dep_graph(h);
    EXPECT_NE(g.find(atom("p"), atom("r")), nullptr);
    EXPECT_EQ(g.find(atom("p"), atom("q")), nullptr);
}

TEST(Simple, AcyclicProgramsAreTight) {
    const SimpleProgram h{SimpleRule{{SimpleImplication{{}, {negneg("q"), lit("q"), neg("r")}}}, atoms({"p"})}};
    EXPECT_TRUE(is_ft_tight(h));
    EXPECT_TRUE(is_flp_tight(h));
}

TEST(Simple, ProgramsWithoutDoubleNegationAreFlpTight) {
    GenProfile prof;
    prof.allow_double_negation = false;
    Rng rng(4);
    for (int i = 0; i < 500; ++i) EXPECT_TRUE(is_flp_tight(gen_simple_program(rng, prof)));
}

TEST(Simple, SubstitutionAndPlus) {
    const auto X = atoms({"p"});
    EXPECT_EQ(subst_bot(SimpleDisjunction{lit("p"), neg("q")}, X), (SimpleDisjunction{neg("q")}));
    const SimpleImplication guarded{atoms({"p"}), {lit("q")}};
    EXPECT_EQ(subst_bot(guarded, atoms({"p", "q"})), guarded);
    const SimpleImplication open{atoms({"r"}), {lit("p"), negneg("p")}};
    EXPECT_EQ(subst_bot(open, X), (SimpleImplication{atoms({"r"}), {negneg("p")}}));
    EXPECT_EQ(subst_bot(simple_middle(), AtomSet{}), simple_middle());
    EXPECT_EQ(plus_transform(SimpleDisjunction{negneg("p"), neg("q")}), (SimpleDisjunction{lit("p"), neg("q")}));
    EXPECT_EQ(plus_transform(plus_transform(simple_double())), plus_transform(simple_double()));
}

TEST(Simple, SubstitutionEntailsOriginal) {
    GenProfile prof;
    Rng rng(8);
    const auto alphabet = propositional_atoms(prof.simple_atoms);
    const AtomSet all(alphabet.begin(), alphabet.end());
    for (int i = 0; i < 1000; ++i) {
        const auto f = gen_simple_formula(rng, prof, alphabet);
        AtomSet X;
        for (const auto& a : all) {
            if (rng.chance(50)) X.insert(a);
        }
        const auto fx = as_formula(subst_bot(f, X));
        const auto ff = as_formula(f);
        for (std::uint64_t m = 0; m < (1U << alphabet.size()); ++m) {
            const auto I = detail::decode(m, alphabet);
            if (satisfies(I, fx)) {
                EXPECT_TRUE(satisfies(I, ff));
            }
        }
    }
}

// A1 = {q}, A2 = {}, C = {{p1, p2}}: one implication per choice function.
TEST(Simple, ConvertImplication) {
    const std::vector<ExtendedLiteral> c{lit("p1"), lit("p2")};
    detail::SplitImplication s{atoms({"q"}), {}, {&c}};
    SimpleFormula out;
    detail::convert_implication(s, out, "test");
    const SimpleFormula expected{SimpleImplication{atoms({"q"}), {lit("p1")}},
                                 SimpleImplication{atoms({"q"}), {lit("p2")}}};
    EXPECT_EQ(out, expected);
    // q -> p1 & p2
    const auto source = Formula::implies(at("q"), Formula::make_and({at("p1"), at("p2")}));
    EXPECT_TRUE(classically_equivalent(as_formula(out), source));
}

// A1 = {q}, A2 = {r}, C = {{p}}. The positive atom q appears as ~~q: with a
// plain q the conversion would not keep the FT-stable models (see the next
// test).
TEST(Simple, ConvertNegatedImplication) {
    const std::vector<ExtendedLiteral> c{lit("p")};
    detail::SplitImplication s{atoms({"q"}), atoms({"r"}), {&c}};
    SimpleFormula out;
    detail::convert_negated_implication(s, out);
    const SimpleFormula expected{SimpleImplication{{}, {negneg("q")}}, SimpleImplication{{}, {neg("r")}},
                                 SimpleImplication{{}, {neg("p")}}};
    EXPECT_EQ(out, expected);
    // ~(q & ~r -> p)
    const auto source = Formula::negation(
        Formula::implies(Formula::make_and({at("q"), Formula::negation(at("r"))}), at("p")));
    EXPECT_TRUE(classically_equivalent(as_formula(out), source));
}

TEST(Simple, PlainPositiveAtomsWouldBreakFtModels) {
    const auto prog = parse_program("p :- q. q :- not #count{1 : p} < 1.");
    const auto gp = ground_program(prog, Translation::Tau, GroundingConfig{});
    const auto alphabet = gp.head_atoms();
    const auto converted = to_simple_program(gp);
    EXPECT_EQ(solve(gp, Semantics::FT, false, 18), models({{}, {"p", "q"}}));
    EXPECT_EQ(stable_models(converted, Semantics::FT, alphabet), models({{}, {"p", "q"}}));

    // The same conversion with T -> p in place of T -> ~~p.
    const SimpleProgram literal{SimpleRule{{SimpleImplication{{}, {lit("q")}}}, atoms({"p"})},
                                SimpleRule{{SimpleImplication{{}, {lit("p")}}}, atoms({"q"})}};
    EXPECT_EQ(stable_models(literal, Semantics::FT, alphabet), models({{}}));
    EXPECT_EQ(stable_models(literal, Semantics::FLP, alphabet), models({{}}));
}

TEST(Simple, LiteralConjuncts) {
    const auto gp = ground_program(parse_program("h :- not p(a), q."), Translation::Tau, GroundingConfig{});
    const auto sp = to_simple_program(gp);
    ASSERT_EQ(sp.size(), 1u);
    const SimpleFormula expected{SimpleImplication{{}, {neg("p(a)")}}, SimpleImplication{{}, {lit("q")}}};
    EXPECT_EQ(sp.begin()->body, expected);
}

TEST(Simple, NeedsTau) {
    const auto gp = ground_program(parse_program("p."), Translation::Tau1, GroundingConfig{});
    EXPECT_THROW(to_simple_program(gp), Error);
}

TEST(Simple, ConversionPreservesStableModels) {
    GenProfile prof;
    const auto cfg = prof.grounding();
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto p = gen_program(with_seed(prof, seed));
        for (auto s : {Semantics::FLP, Semantics::FT}) {
            EXPECT_TRUE(conversion_preserves(p, cfg, s)) << pretty_print(p) << to_string(s);
        }
    }
}

// Negated aggregates with several failing subsets.
TEST(Simple, NegatedAggregatesWithManyFailingSubsets) {
    const auto cfg = small_config(0, 2);
    for (const char* text : {"q(0). q(1). r :- not #count{X : q(X)} = 1.",
                             "q(0). r :- not #sum{X : q(X), not p(X)} > 0. p(X) :- r, q(X).",
                             "q(1) | q(2). r :- not #max{X : q(X)} >= 2.",
                             "p(0) | p(1). r :- not #count{X : p(X), not r} != 1."}) {
        const auto p = parse_program(text);
        for (auto s : {Semantics::FLP, Semantics::FT}) EXPECT_TRUE(conversion_preserves(p, cfg, s)) << text;
    }
}

TEST(Simple, CriticalFreeSubset) {
    GenProfile prof;
    Rng rng(21);
    const auto alphabet = propositional_atoms(prof.simple_atoms);
    for (int i = 0; i < 500; ++i) {
        const auto h = gen_simple_program(rng, prof);
        const auto g = dep_graph(h);
        AtomSet X;
        for (const auto& a : alphabet) {
            if (rng.chance(60)) X.insert(a);
        }
        if (X.empty()) continue;
        for (auto kind : {Semantics::FT, Semantics::FLP}) {
            const auto K = find_critical_free_subset(g, X, kind);
            if (!is_tight(g, kind)) continue;
            ASSERT_TRUE(K.has_value());
            EXPECT_FALSE(K->empty());
        }
    }
}

TEST(Simple, DotStyles) {
    const auto dot = to_dot(dep_graph(simple_double()));
    EXPECT_NE(dot.find("color=blue, style=dashed"), std::string::npos) << dot;
    const SimpleProgram both{SimpleRule{{SimpleImplication{{}, {negneg("p"), lit("p"), neg("q")}}}, atoms({"p"})}};
    EXPECT_NE(to_dot(dep_graph(both)).find("purple"), std::string::npos);
    EXPECT_NE(to_dot(dep_graph(simple_middle())).find("color=red"), std::string::npos);
}
