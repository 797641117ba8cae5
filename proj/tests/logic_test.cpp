#include <gtest/gtest.h>

#include "util.hpp"

using namespace dualsm;
using namespace dualsm::test;

namespace {

// Reference FT reduct, written out from its definition.
Formula reference_ft(const Formula& f, const Interpretation& I) {
    if (!satisfies(I, f)) return Formula::bottom();
    switch (f.kind()) {
    case Formula::Kind::Atom: return f;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> cs;
        for (const auto& c : f.children()) cs.push_back(reference_ft(c, I));
        return f.kind() == Formula::Kind::And ? Formula::make_and(cs) : Formula::make_or(cs);
    }
    case Formula::Kind::Implies:
        return Formula::implies(reference_ft(f.antecedent(), I), reference_ft(f.consequent(), I));
    }
    return f;
}

// Stable models by explicit reducts and subset enumeration, without the
// bitmask evaluator.
std::vector<Interpretation> reference_stable(const std::vector<Formula>& fs, Semantics s,
                                             const std::vector<GroundAtom>& alphabet) {
    std::vector<Interpretation> out;
    const std::size_t n = alphabet.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        Interpretation I;
        for (std::size_t i = 0; i < n; ++i) {
            if ((m >> i) & 1U) I.insert(alphabet[i]);
        }
        std::vector<Formula> reduct;
        if (s == Semantics::FLP) {
            reduct = flp_reduct(fs, I);
        } else {
            for (const auto& f : fs) reduct.push_back(reference_ft(f, I));
        }
        if (!satisfies(I, std::span<const Formula>(reduct))) continue;
        bool minimal = true;
        for (std::uint64_t sub = (m - 1) & m; minimal; sub = (sub - 1) & m) {
            Interpretation J;
            for (std::size_t i = 0; i < n; ++i) {
                if ((sub >> i) & 1U) J.insert(alphabet[i]);
            }
            if (J != I && satisfies(J, std::span<const Formula>(reduct))) minimal = false;
            if (sub == 0) break;
        }
        if (minimal) out.push_back(I);
    }
    sort_canonical(out);
    return out;
}

const Formula p = at("p");
const Formula q = at("q");

}  // namespace

TEST(Logic, SatisfactionClauses) {
    EXPECT_TRUE(satisfies(interp({"p"}), p));
    EXPECT_FALSE(satisfies(interp({}), p));
    EXPECT_TRUE(satisfies(interp({}), Formula::top()));
    EXPECT_FALSE(satisfies(interp({"p"}), Formula::bottom()));
    // p | ~p -> p
    const auto f = Formula::implies(Formula::make_or({p, Formula::negation(p)}), p);
    EXPECT_TRUE(satisfies(interp({"p"}), f));
    EXPECT_FALSE(satisfies(interp({}), f));
}

TEST(Logic, SetsAreCanonical) {
    EXPECT_EQ(Formula::make_and({p, q, p}), Formula::make_and({q, p}));
    EXPECT_EQ(to_string(Formula::make_or({q, p})), "(p | q)");
    EXPECT_EQ(conjoin({p}), p);
    EXPECT_EQ(to_string(Formula::negation(p)), "~p");
    EXPECT_EQ(to_string(Formula::implies(p, q)), "(p -> q)");
}

TEST(Logic, FlpReductKeepsSatisfiedAntecedents) {
    const std::vector<Formula> fs{Formula::implies(p, q), Formula::implies(Formula::negation(p), p)};
    const auto r = flp_reduct(fs, interp({"p"}));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0], fs[0]);
    EXPECT_THROW(flp_reduct(std::vector<Formula>{Formula::implies(p, Formula::negation(q))}, interp({})), Error);
}

TEST(Logic, FtReductMatchesDefinition) {
    Rng rng(11);
    const auto alphabet = propositional_atoms(3);
    for (int i = 0; i < 2000; ++i) {
        const auto f = gen_formula(rng, alphabet);
        const auto I = gen_interpretation(rng, alphabet);
        EXPECT_EQ(ft_reduct(f, I), reference_ft(f, I)) << to_string(f);
    }
}

// p <- p | ~p and p <- ~~p separate the two semantics.
TEST(Logic, SemanticsSeparatingFormulas) {
    const std::vector<GroundAtom> alphabet{atom("p")};
    const std::vector<Formula> middle{Formula::implies(Formula::make_or({p, Formula::negation(p)}), p)};
    const std::vector<Formula> double_neg{Formula::implies(Formula::negation(Formula::negation(p)), p)};
    EXPECT_EQ(stable_models(middle, Semantics::FLP, alphabet), models({{"p"}}));
    EXPECT_TRUE(stable_models(middle, Semantics::FT, alphabet).empty());
    EXPECT_EQ(stable_models(double_neg, Semantics::FT, alphabet), models({{}, {"p"}}));
    EXPECT_EQ(stable_models(double_neg, Semantics::FLP, alphabet), models({{}}));
}

TEST(Logic, StableModelsAgreeWithReference) {
    Rng rng(5);
    const auto alphabet = propositional_atoms(4);
    for (int i = 0; i < 400; ++i) {
        const auto fs = gen_flp_shaped(rng, alphabet);
        for (auto s : {Semantics::FLP, Semantics::FT}) {
            EXPECT_EQ(stable_models(fs, s, alphabet), reference_stable(fs, s, alphabet));
        }
    }
}

TEST(Logic, ModelsAreSortedBySizeThenAtoms) {
    const std::vector<Formula> fs{Formula::implies(Formula::top(), Formula::make_or({p, q}))};
    const std::vector<GroundAtom> alphabet{atom("q"), atom("p")};
    EXPECT_EQ(stable_models(fs, Semantics::FLP, alphabet), models({{"p"}, {"q"}}));
}

TEST(Logic, AlphabetCap) {
    const std::vector<Formula> fs{p};
    const auto alphabet = propositional_atoms(6);
    EXPECT_THROW(stable_models(fs, Semantics::FT, alphabet, 5), Error);
}

TEST(Logic, ClassicalEquivalence) {
    EXPECT_TRUE(classically_equivalent(Formula::negation(Formula::negation(p)), p));
    EXPECT_FALSE(classically_equivalent(Formula::implies(p, q), Formula::implies(q, p)));
    EXPECT_TRUE(classically_equivalent(Formula::implies(p, q), Formula::make_or({Formula::negation(p), q})));
}

TEST(Logic, ReductIdentities) {
    Rng rng(3);
    const auto alphabet = propositional_atoms(3);
    for (int i = 0; i < 2000; ++i) {
        const auto f = gen_formula(rng, alphabet);
        const auto I = gen_interpretation(rng, alphabet);
        const auto r = ft_reduct(f, I);
        EXPECT_EQ(satisfies(I, r), satisfies(I, f));
        if (!satisfies(I, f)) {
            EXPECT_TRUE(classically_equivalent(r, Formula::bottom(), alphabet));
        }
        const auto h = gen_flp_shaped(rng, alphabet);
        const auto hr = flp_reduct(h, I);
        EXPECT_EQ(satisfies(I, std::span<const Formula>(hr)), satisfies(I, std::span<const Formula>(h)));
    }
}
