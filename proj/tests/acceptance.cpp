// Acceptance gates. One PASS/FAIL line per criterion; exit status 1 when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dualsm/dualsm.hpp"

using namespace dualsm;

namespace {

using Clock = std::chrono::steady_clock;

struct Gate {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        if (ok) detail = what;
        ok = false;
    }
};

Interpretation interp(std::initializer_list<const char*> names) {
    Interpretation I;
    for (const char* n : names) I.insert(parse_ground_atom(n));
    return I;
}

std::vector<Interpretation> models(std::initializer_list<std::initializer_list<const char*>> ms) {
    std::vector<Interpretation> out;
    for (const auto& m : ms) out.push_back(interp(m));
    sort_canonical(out);
    return out;
}

GroundingConfig small_config(std::int64_t lo, std::int64_t hi) {
    GroundingConfig cfg;
    cfg.int_lo = lo;
    cfg.int_hi = hi;
    cfg.include_inf_sup = false;
    return cfg;
}

AggregateAtom first_aggregate(const Program& p) {
    for (const auto& b : p.rules.at(0).body) {
        if (const auto* a = std::get_if<AggregateLiteral>(&b)) return a->atom;
    }
    throw Error(ErrorKind::Invariant, "no aggregate");
}

Gate goldens() {
    Gate g;
    const auto p = Formula::atom(parse_ground_atom("p"));
    const std::vector<GroundAtom> alphabet{parse_ground_atom("p")};

    SolveOptions so;
    const auto neg = parse_program("p :- #count{1 : not p} < 1.");
    g.require(solve(neg, Semantics::FLP, Translation::Tau1, so) == models({{}}), "neg count FLP");
    g.require(solve(neg, Semantics::FT, Translation::Tau, so) == models({{}, {"p"}}), "neg count FT");

    const std::vector<Formula> middle{Formula::implies(Formula::make_or({p, Formula::negation(p)}), p)};
    const std::vector<Formula> double_neg{Formula::implies(Formula::negation(Formula::negation(p)), p)};
    g.require(stable_models(middle, Semantics::FLP, alphabet) == models({{"p"}}), "excluded middle FLP");
    g.require(stable_models(middle, Semantics::FT, alphabet).empty(), "excluded middle FT");
    g.require(stable_models(double_neg, Semantics::FT, alphabet) == models({{}, {"p"}}), "double negation FT");
    g.require(stable_models(double_neg, Semantics::FLP, alphabet) == models({{}}), "double negation FLP");

    const auto pos = parse_program("p :- #count{1 : p} > 0.");
    for (auto s : {Semantics::FLP, Semantics::FT}) {
        for (auto t : {Translation::Tau, Translation::Tau1}) {
            g.require(solve(pos, s, t, so) == models({{}}), "positive count");
        }
    }

    const GroundingConfig cfg;
    for (auto t : {Translation::Tau, Translation::Tau1}) {
        const auto gp = ground_program(parse_program("q(X/Y) :- p(X,Y), X > Y."), t, cfg);
        std::set<Formula> expected;
        for (auto m = cfg.int_lo; m <= cfg.int_hi; ++m) {
            for (auto n = cfg.int_lo; n <= cfg.int_hi; ++n) {
                if (m <= n || n == 0) continue;
                expected.insert(Formula::implies(Formula::atom({"p", {Value::num(m), Value::num(n)}}),
                                                 Formula::atom({"q", {Value::num(detail::floor_div(m, n))}})));
            }
        }
        const auto fs = gp.formulas();
        g.require(std::set<Formula>(fs.begin(), fs.end()) == expected, "division grounding");
    }

    const auto zero = parse_program("h :- #count{X : p(X)} = 0.");
    const auto zcfg = small_config(-1, 2);
    const auto domain = substitution_domain(zero, zcfg);
    const auto inst = instantiate_aggregate(first_aggregate(zero), domain, zcfg);
    std::vector<Formula> negations;
    for (const auto& v : domain) negations.push_back(Formula::negation(Formula::atom({"p", {v}})));
    g.require(tau1_aggregate(inst) == Formula::make_and(negations), "tau1 of count = 0");
    return g;
}

Gate translation_equivalence() {
    Gate g;
    GenProfile prof;
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const auto inst = gen_aggregate_instance(rng, prof);
        g.require(classically_equivalent(tau_aggregate(inst), tau1_aggregate(inst)),
                  "instance " + std::to_string(i));
    }
    const auto cfg = prof.grounding();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto p = gen_program(with_seed(prof, seed));
        g.require(translations_agree_on_flp(p, cfg), "program seed " + std::to_string(seed));
    }
    return g;
}

Gate theorem_gate() {
    Gate g;
    FuzzOptions o;
    o.seeds = 10000;
    o.mode = FuzzMode::Diff;
    const auto r = run_fuzz(o);
    const auto it = r.classes.find(DiffClass::TheoremInstance);
    const std::size_t instances = it == r.classes.end() ? 0 : it->second;
    const auto agree = r.agreeing.find(DiffClass::TheoremInstance);
    g.require(r.programs == 10000, "programs run");
    g.require(r.cap_errors == 0, std::to_string(r.cap_errors) + " programs over caps");
    g.require(instances > 0, "no theorem instances");
    g.require(agree != r.agreeing.end() && agree->second == instances, "theorem instance disagrees");
    g.require(r.diff_failures.empty(), std::to_string(r.diff_failures.size()) + " failures");
    if (g.ok) g.detail = std::to_string(instances) + " theorem instances";
    return g;
}

// Runs seeds until every lemma has `target` instances with preconditions met.
Gate lemma_gate(std::span<const LemmaId> ids, std::size_t target) {
    Gate g;
    GenProfile prof;
    LemmaReport total;
    for (LemmaId id : ids) {
        const std::array<LemmaId, 1> one{id};
        std::uint64_t seed = 0;
        while (total.stats[id].checked < target && seed < 4 * target) {
            const std::size_t batch = target - total.stats[id].checked;
            total.merge(lemma_suite(prof, seed, batch, one));
            seed += batch;
        }
        const auto& st = total.stats[id];
        g.require(st.checked >= target, std::string(to_string(id)) + ": too few instances");
        g.require(st.failures == 0, std::string(to_string(id)) + ": " + std::to_string(st.failures) + " failures");
    }
    if (g.ok) {
        std::size_t nontrivial = total.stats.empty() ? 0 : total.stats.begin()->second.nontrivial;
        for (const auto& [id, st] : total.stats) nontrivial = std::min(nontrivial, st.nontrivial);
        g.detail = "min nontrivial " + std::to_string(nontrivial);
    }
    return g;
}

Gate reduct_identities() {
    Gate g;
    Rng rng(5);
    const auto alphabet = propositional_atoms(4);
    for (int i = 0; i < 10000; ++i) {
        const auto f = gen_formula(rng, alphabet);
        const auto I = gen_interpretation(rng, alphabet);
        const auto r = ft_reduct(f, I);
        g.require(satisfies(I, r) == satisfies(I, f), "I |= FT(F,I) iff I |= F");
        if (!satisfies(I, f)) {
            g.require(classically_equivalent(r, Formula::bottom(), alphabet), "FT(F,I) equivalent to bottom");
        }
        const auto h = gen_flp_shaped(rng, alphabet);
        const auto hr = flp_reduct(h, I);
        g.require(satisfies(I, std::span<const Formula>(hr)) == satisfies(I, std::span<const Formula>(h)),
                  "I |= FLP(H,I) iff I |= H");
    }
    return g;
}

Gate conversion_gate() {
    Gate g;
    GenProfile prof;
    const auto cfg = prof.grounding();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto p = gen_program(with_seed(prof, seed));
        for (auto s : {Semantics::FLP, Semantics::FT}) {
            g.require(conversion_preserves(p, cfg, s),
                      std::string(to_string(s)) + " seed " + std::to_string(seed));
        }
    }
    return g;
}

Gate tightness_examples() {
    Gate g;
    const auto p = parse_ground_atom("p");
    const AtomSet head{p};
    // p <- p | ~p and p <- ~~p.
    const SimpleProgram middle{SimpleRule{
        {SimpleImplication{{}, {ExtendedLiteral::plain(p), ExtendedLiteral::neg(p)}}}, head}};
    const SimpleProgram double_neg{SimpleRule{{SimpleImplication{{}, {ExtendedLiteral::negneg(p)}}}, head}};
    const auto g3 = dep_graph(middle);
    const auto g4 = dep_graph(double_neg);
    g.require(g3.edges.size() == 1 && g3.edges[0].ft_critical && !g3.edges[0].flp_critical, "excluded middle edge");
    g.require(g4.edges.size() == 1 && !g4.edges[0].ft_critical && g4.edges[0].flp_critical, "double negation edge");
    g.require(!is_ft_tight(middle) && is_flp_tight(middle), "excluded middle tightness");
    g.require(is_ft_tight(double_neg) && !is_flp_tight(double_neg), "double negation tightness");
    return g;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Gate()> run;
    };
    const std::array<LemmaId, 2> main_lemma{LemmaId::MainLemmaFtTight, LemmaId::MainLemmaFlpTight};
    const std::array<LemmaId, 5> listed{LemmaId::ClosedSubsetSubstitution,
                                        LemmaId::SubstitutionCommutesWithFtReduct,
                                        LemmaId::FtReductDisjunctionTransfer,
                                        LemmaId::FtReductFormulaTransfer, LemmaId::PlusSubstitutionTransfer};
    const std::vector<Criterion> criteria{
        {"1 golden examples", 1.0, goldens},
        {"2 tau/tau1 equivalence", 60.0, translation_equivalence},
        {"3 theorem gate", 600.0, theorem_gate},
        {"4 main lemma and lemma instances", 600.0,
         [&] {
             auto g = lemma_gate(main_lemma, 10000);
             auto h = lemma_gate(listed, 10000);
             if (!h.ok) return h;
             if (g.ok) g.detail += "; " + h.detail;
             return g;
         }},
        {"5 reduct identities", 600.0, reduct_identities},
        {"6 conversion preserves models", 600.0, conversion_gate},
        {"7 tightness of the separating examples", 1.0, tightness_examples},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Gate g;
        try {
            g = c.run();
        } catch (const std::exception& e) {
            g.ok = false;
            g.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (secs > c.budget_seconds) g.require(false, "over budget");
        all = all && g.ok;
        std::printf("%s criterion %s (%.2fs%s%s)\n", g.ok ? "PASS" : "FAIL", c.name, secs,
                    g.detail.empty() ? "" : ", ", g.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
