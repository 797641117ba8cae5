#pragma once

// Seeded random generation of programs, aggregate instances, formulas and
// simple programs; the differential FLP/FT check; instance checks of the
// lemmas behind the tightness results; shrinking; and the fuzz driver.

#include <algorithm>
#include <array>
#include <exception>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "dualsm/analyze.hpp"
#include "dualsm/ast.hpp"
#include "dualsm/logic.hpp"
#include "dualsm/simple.hpp"
#include "dualsm/syntax.hpp"
#include "dualsm/terms.hpp"
#include "dualsm/translate.hpp"

namespace dualsm {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform enough for the tiny ranges used here.
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
    bool chance(unsigned percent) { return below(100) < percent; }
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::size_t>(hi - lo + 1)));
    }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 engine_;
};

struct PredicateSpec {
    std::string name;
    std::size_t arity = 0;

    bool operator==(const PredicateSpec&) const = default;
};

struct GenProfile {
    std::uint64_t seed = 0;

    // programs
    std::size_t max_rules = 4;
    std::size_t max_body = 3;
    std::size_t max_head = 2;
    std::size_t max_aggregates = 2;
    std::vector<PredicateSpec> predicates{{"p", 0}, {"q", 0}, {"r", 1}, {"s", 1}};
    std::vector<std::string> constants{"a"};
    std::int64_t int_lo = 0;
    std::int64_t int_hi = 1;
    bool allow_negation_in_conditions = true;
    bool force_positive_aggregates = false;
    unsigned aggregate_percent = 25;  // chance that a body literal is an aggregate

    // simple programs
    std::size_t simple_atoms = 4;
    std::size_t max_simple_rules = 4;
    std::size_t max_implications = 3;
    std::size_t max_antecedent = 2;
    std::size_t max_consequent = 3;
    bool allow_double_negation = true;

    // Grounding settings for generated programs: the configured integers plus
    // the constant pool, without #inf and #sup.
    GroundingConfig grounding() const {
        GroundingConfig cfg;
        cfg.int_lo = int_lo;
        cfg.int_hi = int_hi;
        cfg.include_inf_sup = false;
        cfg.max_aggregate_domain = 8;
        cfg.max_candidate_atoms = default_max_candidate_atoms;
        return cfg;
    }

    void validate() const {
        if (predicates.empty()) throw Error(ErrorKind::Unsupported, "profile has no predicates");
        if (int_lo > int_hi) throw Error(ErrorKind::Unsupported, "profile integer range is empty");
        if (max_rules == 0 || max_simple_rules == 0 || simple_atoms == 0) {
            throw Error(ErrorKind::Unsupported, "profile bounds must be positive");
        }
        if (simple_atoms > 12) throw Error(ErrorKind::Unsupported, "simple_atoms is at most 12");
        for (const auto& p : predicates) {
            if (p.arity > 2) throw Error(ErrorKind::Unsupported, "generated predicates have arity <= 2");
        }
        // Head atoms of generated programs are the candidate alphabet.
        const std::size_t domain =
            static_cast<std::size_t>(int_hi - int_lo + 1) + constants.size();
        std::size_t atoms = 0;
        for (const auto& p : predicates) {
            std::size_t n = 1;
            for (std::size_t i = 0; i < p.arity; ++i) n *= domain;
            atoms += n;
        }
        if (atoms > default_max_candidate_atoms) {
            throw Error(ErrorKind::Unsupported, "profile allows " + std::to_string(atoms) +
                                                    " ground atoms, more than " +
                                                    std::to_string(default_max_candidate_atoms));
        }
    }
};

inline GenProfile with_seed(GenProfile p, std::uint64_t seed) {
    p.seed = seed;
    return p;
}

// ---------------------------------------------------------------------------
// programs

namespace detail {

inline Term gen_ground_term(Rng& rng, const GenProfile& prof) {
    const std::size_t n_ints = static_cast<std::size_t>(prof.int_hi - prof.int_lo + 1);
    const std::size_t k = rng.below(n_ints + prof.constants.size());
    if (k < n_ints) return Term::numeral(prof.int_lo + static_cast<std::int64_t>(k));
    return Term::symbol(prof.constants[k - n_ints]);
}

inline Term gen_term(Rng& rng, const GenProfile& prof, const std::vector<std::string>& vars) {
    if (!vars.empty() && rng.chance(50)) return Term::variable(rng.pick(vars));
    return gen_ground_term(rng, prof);
}

inline Atom gen_atom(Rng& rng, const GenProfile& prof, const std::vector<std::string>& vars) {
    const auto& spec = rng.pick(prof.predicates);
    Atom a{spec.name, {}};
    for (std::size_t i = 0; i < spec.arity; ++i) a.args.push_back(gen_term(rng, prof, vars));
    return a;
}

inline Relation gen_relation(Rng& rng) {
    static const std::vector<Relation> all{Relation::Eq, Relation::Ne, Relation::Lt,
                                           Relation::Gt, Relation::Le, Relation::Ge};
    return rng.pick(all);
}

inline ArithLiteral gen_arith(Rng& rng, const GenProfile& prof, const std::vector<std::string>& vars) {
    ArithLiteral a;
    a.rel = gen_relation(rng);
    a.lhs = vars.empty() ? gen_ground_term(rng, prof) : Term::variable(rng.pick(vars));
    a.rhs = gen_term(rng, prof, vars);
    return a;
}

inline AggregateLiteral gen_aggregate(Rng& rng, const GenProfile& prof,
                                      const std::vector<std::string>& globals) {
    static const std::vector<AggregateFunction> fns{AggregateFunction::Count, AggregateFunction::Sum,
                                                    AggregateFunction::Min, AggregateFunction::Max};
    const bool negation_ok = prof.allow_negation_in_conditions && !prof.force_positive_aggregates;
    AggregateLiteral lit;
    auto& agg = lit.atom;
    agg.function = rng.pick(fns);

    std::vector<const PredicateSpec*> unary;
    for (const auto& p : prof.predicates) {
        if (p.arity == 1) unary.push_back(&p);
    }
    // At most one local variable, so |A| stays within the domain size.
    const bool local = !unary.empty() && rng.chance(70);
    const bool order_fn = agg.function == AggregateFunction::Min || agg.function == AggregateFunction::Max;
    if (local && rng.chance(70)) {
        agg.tuple.push_back(Term::variable("Z"));
    } else if (order_fn || rng.chance(50)) {
        agg.tuple.push_back(Term::numeral(rng.between(0, 2)));
    }

    std::vector<std::string> scope = globals;
    if (local) {
        scope.push_back("Z");
        agg.conditions.push_back(SymbolicLiteral{
            negation_ok && rng.chance(25) ? Polarity::Not : Polarity::Pos,
            Atom{unary[rng.below(unary.size())]->name, {Term::variable("Z")}}});
    }
    const std::size_t extra = local ? rng.below(2) : 1 + rng.below(2);
    for (std::size_t i = 0; i < extra; ++i) {
        if (local && rng.chance(15)) {
            ArithLiteral a;
            a.rel = gen_relation(rng);
            a.lhs = Term::variable("Z");
            a.rhs = gen_ground_term(rng, prof);
            agg.conditions.push_back(a);
            continue;
        }
        agg.conditions.push_back(SymbolicLiteral{
            negation_ok && rng.chance(25) ? Polarity::Not : Polarity::Pos, gen_atom(rng, prof, scope)});
    }
    agg.rel = gen_relation(rng);
    agg.bound = Term::numeral(rng.between(-1, 2));
    lit.polarity = !prof.force_positive_aggregates && rng.chance(20) ? Polarity::Not : Polarity::Pos;
    return lit;
}

}  // namespace detail

// Deterministic in the profile (including its seed). Generated programs use
// only the profile's predicates, constants and integers, so they ground
// within the profile's caps.
inline Program gen_program(const GenProfile& prof) {
    Rng rng(prof.seed);
    Program p;
    const std::size_t n_rules = 1 + rng.below(prof.max_rules);
    std::size_t aggregates_left = prof.max_aggregates;
    static const std::vector<std::string> pool{"X", "Y"};
    for (std::size_t i = 0; i < n_rules; ++i) {
        Rule r;
        std::vector<std::string> vars;
        for (const auto& v : pool) {
            if (rng.chance(40)) vars.push_back(v);
        }
        const std::size_t roll = rng.below(100);
        const std::size_t n_head = std::min<std::size_t>(prof.max_head, roll < 10 ? 0 : roll < 75 ? 1 : 2);
        // Variables already used outside aggregates. Only these may occur in
        // an aggregate: any other variable there would be local to it and
        // enlarge its domain.
        std::vector<std::string> seen;
        auto note = [&](const auto& x) {
            collect_variables(x, seen);
            std::sort(seen.begin(), seen.end());
            seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        };
        for (std::size_t h = 0; h < n_head; ++h) {
            r.head.push_back(detail::gen_atom(rng, prof, vars));
            note(r.head.back());
        }
        // A constraint needs a body; an empty rule is not in the language.
        const std::size_t n_body = n_head == 0 ? 1 + rng.below(prof.max_body) : rng.below(prof.max_body + 1);
        for (std::size_t b = 0; b < n_body; ++b) {
            const std::size_t kind = rng.below(100);
            if (aggregates_left > 0 && kind < prof.aggregate_percent) {
                --aggregates_left;
                r.body.push_back(detail::gen_aggregate(rng, prof, seen));
            } else if (kind < prof.aggregate_percent + 15 && !vars.empty()) {
                auto a = detail::gen_arith(rng, prof, vars);
                note(Literal{a});
                r.body.push_back(std::move(a));
            } else {
                SymbolicLiteral l{rng.chance(20) ? Polarity::Not : Polarity::Pos, detail::gen_atom(rng, prof, vars)};
                note(l.atom);
                r.body.push_back(std::move(l));
            }
        }
        p.rules.push_back(std::move(r));
    }
    return p;
}

// A closed aggregate atom over the profile's terms, instantiated over a
// domain of at most four terms, so |A| <= 4.
inline AggregateInstance gen_aggregate_instance(Rng& rng, const GenProfile& prof) {
    auto lit = detail::gen_aggregate(rng, prof, {});
    std::vector<Value> domain;
    for (std::int64_t n = prof.int_lo; n <= prof.int_hi && domain.size() < 3; ++n) {
        domain.push_back(Value::num(n));
    }
    for (const auto& c : prof.constants) {
        if (domain.size() < 4) domain.push_back(Value::sym(c));
    }
    GroundingConfig cfg = prof.grounding();
    cfg.max_aggregate_domain = 4;
    return instantiate_aggregate(lit.atom, domain, cfg);
}

// ---------------------------------------------------------------------------
// formulas

inline std::vector<GroundAtom> propositional_atoms(std::size_t n) {
    static const char* names[] = {"p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z", "o"};
    std::vector<GroundAtom> out;
    for (std::size_t i = 0; i < n && i < std::size(names); ++i) out.push_back({names[i], {}});
    return out;
}

inline Formula gen_formula(Rng& rng, const std::vector<GroundAtom>& atoms, std::size_t depth = 3) {
    const std::size_t roll = rng.below(depth == 0 ? 1 : 5);
    switch (roll) {
    case 0: return Formula::atom(rng.pick(atoms));
    case 1:
    case 2: {
        std::vector<Formula> cs;
        const std::size_t n = rng.below(4);
        for (std::size_t i = 0; i < n; ++i) cs.push_back(gen_formula(rng, atoms, depth - 1));
        return roll == 1 ? Formula::make_and(std::move(cs)) : Formula::make_or(std::move(cs));
    }
    default:
        return Formula::implies(gen_formula(rng, atoms, depth - 1), gen_formula(rng, atoms, depth - 1));
    }
}

// A set of implications with disjunctions of atoms as consequents.
inline std::vector<Formula> gen_flp_shaped(Rng& rng, const std::vector<GroundAtom>& atoms) {
    std::set<Formula> out;
    const std::size_t n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Formula> head;
        const std::size_t k = rng.below(3);
        for (std::size_t j = 0; j < k; ++j) head.push_back(Formula::atom(rng.pick(atoms)));
        out.insert(Formula::implies(gen_formula(rng, atoms, 2), disjoin(std::move(head))));
    }
    return {out.begin(), out.end()};
}

inline Interpretation gen_interpretation(Rng& rng, const std::vector<GroundAtom>& atoms) {
    Interpretation I;
    for (const auto& a : atoms) {
        if (rng.chance(50)) I.insert(a);
    }
    return I;
}

// ---------------------------------------------------------------------------
// simple programs

inline SimpleDisjunction gen_simple_disjunction(Rng& rng, const GenProfile& prof,
                                                const std::vector<GroundAtom>& atoms) {
    SimpleDisjunction d;
    const std::size_t n = rng.below(prof.max_consequent + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = rng.below(prof.allow_double_negation ? 3 : 2);
        d.insert({rng.pick(atoms), static_cast<ExtendedLiteral::Mode>(m)});
    }
    return d;
}

inline SimpleImplication gen_simple_implication(Rng& rng, const GenProfile& prof,
                                                const std::vector<GroundAtom>& atoms) {
    SimpleImplication imp;
    const std::size_t n = rng.below(prof.max_antecedent + 1);
    for (std::size_t i = 0; i < n; ++i) imp.antecedent.insert(rng.pick(atoms));
    imp.consequent = gen_simple_disjunction(rng, prof, atoms);
    return imp;
}

inline SimpleFormula gen_simple_formula(Rng& rng, const GenProfile& prof,
                                        const std::vector<GroundAtom>& atoms) {
    SimpleFormula f;
    const std::size_t n = rng.below(prof.max_implications + 1);
    for (std::size_t i = 0; i < n; ++i) f.insert(gen_simple_implication(rng, prof, atoms));
    return f;
}

inline SimpleProgram gen_simple_program(Rng& rng, const GenProfile& prof) {
    const auto atoms = propositional_atoms(prof.simple_atoms);
    SimpleProgram p;
    const std::size_t n = 1 + rng.below(prof.max_simple_rules);
    for (std::size_t i = 0; i < n; ++i) {
        SimpleRule r;
        r.body = gen_simple_formula(rng, prof, atoms);
        const std::size_t roll = rng.below(100);
        const std::size_t k = std::min<std::size_t>(prof.max_head, roll < 10 ? 0 : roll < 80 ? 1 : 2);
        for (std::size_t j = 0; j < k; ++j) r.head.insert(rng.pick(atoms));
        p.insert(std::move(r));
    }
    return p;
}

inline SimpleProgram gen_simple_program(const GenProfile& prof) {
    Rng rng(prof.seed);
    return gen_simple_program(rng, prof);
}

// ---------------------------------------------------------------------------
// differential check

enum class DiffClass { TheoremInstance, CounterexampleCandidate, VacuousAgreement };

inline const char* to_string(DiffClass c) {
    switch (c) {
    case DiffClass::TheoremInstance: return "theorem-instance";
    case DiffClass::CounterexampleCandidate: return "counterexample-candidate";
    case DiffClass::VacuousAgreement: return "vacuous-agreement";
    }
    return "";
}

struct DiffReport {
    std::string program;
    TheoremVerdict verdict;
    std::vector<Interpretation> flp;
    std::vector<Interpretation> ft;
    bool agree = false;
    DiffClass classification = DiffClass::VacuousAgreement;

    // The condition holds but the two semantics disagree.
    bool failure() const { return verdict.condition_holds && !agree; }
};

// Both model sets are computed from the tau translation. theorem-instance: the
// condition holds and the program has an aggregate; vacuous-agreement: the
// condition holds without aggregates; counterexample-candidate: the condition
// fails (the sets may still agree).
inline DiffReport differential_check(const Program& p, const GroundingConfig& cfg,
                                     bool full_alphabet = false) {
    DiffReport r;
    r.program = pretty_print(p);
    r.verdict = check_theorem_condition(p);
    const auto gp = ground_program(p, Translation::Tau, cfg);
    r.flp = solve(gp, Semantics::FLP, full_alphabet, cfg.max_candidate_atoms);
    r.ft = solve(gp, Semantics::FT, full_alphabet, cfg.max_candidate_atoms);
    r.agree = r.flp == r.ft;
    if (!r.verdict.condition_holds) {
        r.classification = DiffClass::CounterexampleCandidate;
    } else if (r.verdict.aggregate_count > 0) {
        r.classification = DiffClass::TheoremInstance;
    } else {
        r.classification = DiffClass::VacuousAgreement;
    }
    return r;
}

// tau and tau1 give the same FLP-stable models.
inline bool translations_agree_on_flp(const Program& p, const GroundingConfig& cfg) {
    const auto a = solve(ground_program(p, Translation::Tau, cfg), Semantics::FLP, false,
                         cfg.max_candidate_atoms);
    const auto b = solve(ground_program(p, Translation::Tau1, cfg), Semantics::FLP, false,
                         cfg.max_candidate_atoms);
    return a == b;
}

// The simple program built from tau(p) has the same stable models as tau(p)
// under `semantics`.
inline bool conversion_preserves(const Program& p, const GroundingConfig& cfg, Semantics semantics) {
    const auto gp = ground_program(p, Translation::Tau, cfg);
    const auto alphabet = gp.head_atoms();
    const auto sp = to_simple_program(gp);
    return solve(gp, semantics, false, cfg.max_candidate_atoms) ==
           stable_models(sp, semantics, alphabet, cfg.max_candidate_atoms);
}

// ---------------------------------------------------------------------------
// shrinking

namespace detail {

inline void collect_constants(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::Symbol) out.insert(t.name);
    for (const auto& a : t.args) collect_constants(a, out);
}

inline void rename_constant(Term& t, const std::string& from, const Term& to) {
    if (t.kind == Term::Kind::Symbol && t.name == from) {
        t = to;
        return;
    }
    for (auto& a : t.args) rename_constant(a, from, to);
}

template <class F>
void for_each_term(Program& p, F&& f) {
    auto lit = [&](Literal& l) {
        if (auto* s = std::get_if<SymbolicLiteral>(&l)) {
            for (auto& t : s->atom.args) f(t);
        } else {
            auto& a = std::get<ArithLiteral>(l);
            f(a.lhs);
            f(a.rhs);
        }
    };
    for (auto& r : p.rules) {
        for (auto& h : r.head) {
            for (auto& t : h.args) f(t);
        }
        for (auto& b : r.body) {
            if (auto* s = std::get_if<SymbolicLiteral>(&b)) {
                Literal l = *s;
                lit(l);
                b = std::get<SymbolicLiteral>(l);
            } else if (auto* a = std::get_if<ArithLiteral>(&b)) {
                f(a->lhs);
                f(a->rhs);
            } else {
                auto& agg = std::get<AggregateLiteral>(b).atom;
                for (auto& t : agg.tuple) f(t);
                for (auto& l : agg.conditions) lit(l);
                f(agg.bound);
            }
        }
    }
}

inline std::vector<Program> shrink_candidates(const Program& p) {
    std::vector<Program> out;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        Program q = p;
        q.rules.erase(q.rules.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(std::move(q));
    }
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        for (std::size_t j = 0; j < p.rules[i].body.size(); ++j) {
            Program q = p;
            auto& body = q.rules[i].body;
            body.erase(body.begin() + static_cast<std::ptrdiff_t>(j));
            out.push_back(std::move(q));
        }
        for (std::size_t j = 0; j < p.rules[i].head.size(); ++j) {
            Program q = p;
            auto& head = q.rules[i].head;
            head.erase(head.begin() + static_cast<std::ptrdiff_t>(j));
            out.push_back(std::move(q));
        }
    }
    // Merge each symbolic constant into another constant or into 0.
    std::set<std::string> constants;
    Program copy = p;
    for_each_term(copy, [&](Term& t) { collect_constants(t, constants); });
    for (const auto& c : constants) {
        std::vector<Term> targets{Term::numeral(0)};
        for (const auto& d : constants) {
            if (d < c) targets.push_back(Term::symbol(d));
        }
        for (const auto& to : targets) {
            Program q = p;
            for_each_term(q, [&](Term& t) { rename_constant(t, c, to); });
            out.push_back(std::move(q));
        }
    }
    return out;
}

}  // namespace detail

// Greedy shrinking: repeatedly takes the first smaller candidate (rule,
// literal or head atom deleted, constant merged) that still fails.
inline Program shrink_program(Program p, const std::function<bool(const Program&)>& still_fails) {
    for (bool progress = true; progress;) {
        progress = false;
        for (auto& q : detail::shrink_candidates(p)) {
            if (q == p) continue;
            bool fails = false;
            try {
                fails = still_fails(q);
            } catch (const Error&) {
                fails = false;
            }
            if (fails) {
                p = std::move(q);
                progress = true;
                break;
            }
        }
    }
    return p;
}

namespace detail {

inline std::vector<SimpleProgram> shrink_candidates(const SimpleProgram& p) {
    std::vector<SimpleProgram> out;
    const std::vector<SimpleRule> rules(p.begin(), p.end());
    for (std::size_t i = 0; i < rules.size(); ++i) {
        auto without = [&](SimpleRule replacement, bool drop) {
            SimpleProgram q;
            for (std::size_t j = 0; j < rules.size(); ++j) {
                if (j != i) q.insert(rules[j]);
            }
            if (!drop) q.insert(std::move(replacement));
            out.push_back(std::move(q));
        };
        without({}, true);
        const auto& r = rules[i];
        for (const auto& h : r.head) {
            SimpleRule s = r;
            s.head.erase(h);
            without(std::move(s), false);
        }
        for (const auto& imp : r.body) {
            SimpleRule s = r;
            s.body.erase(imp);
            without(s, false);
            for (const auto& a : imp.antecedent) {
                SimpleRule t = s;
                auto smaller = imp;
                smaller.antecedent.erase(a);
                t.body.insert(std::move(smaller));
                without(std::move(t), false);
            }
            for (const auto& l : imp.consequent) {
                SimpleRule t = s;
                auto smaller = imp;
                smaller.consequent.erase(l);
                t.body.insert(std::move(smaller));
                without(std::move(t), false);
            }
        }
    }
    return out;
}

}  // namespace detail

inline SimpleProgram shrink_simple_program(SimpleProgram p,
                                           const std::function<bool(const SimpleProgram&)>& still_fails) {
    for (bool progress = true; progress;) {
        progress = false;
        for (auto& q : detail::shrink_candidates(p)) {
            if (q == p) continue;
            if (still_fails(q)) {
                p = std::move(q);
                progress = true;
                break;
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// lemma instances

enum class LemmaId {
    ClosedSubsetSubstitution,
    FtCriticalFreeRemoval,
    FtIndependentSubsetExists,
    FlpStableResistsSubstitution,
    SubstitutionCommutesWithFtReduct,
    FtReductDisjunctionTransfer,
    FtReductFormulaTransfer,
    FlpCriticalFreeRemoval,
    FlpIndependentSubsetExists,
    FtStableResistsPlusSubstitution,
    PlusSubstitutionTransfer,
    MainLemmaFtTight,
    MainLemmaFlpTight,
};

inline constexpr std::array<LemmaId, 13> all_lemmas{
    LemmaId::ClosedSubsetSubstitution,     LemmaId::FtCriticalFreeRemoval,
    LemmaId::FtIndependentSubsetExists,    LemmaId::FlpStableResistsSubstitution,
    LemmaId::SubstitutionCommutesWithFtReduct, LemmaId::FtReductDisjunctionTransfer,
    LemmaId::FtReductFormulaTransfer,      LemmaId::FlpCriticalFreeRemoval,
    LemmaId::FlpIndependentSubsetExists,   LemmaId::FtStableResistsPlusSubstitution,
    LemmaId::PlusSubstitutionTransfer,     LemmaId::MainLemmaFtTight,
    LemmaId::MainLemmaFlpTight,
};

inline const char* to_string(LemmaId id) {
    switch (id) {
    case LemmaId::ClosedSubsetSubstitution: return "closed_subset_substitution";
    case LemmaId::FtCriticalFreeRemoval: return "ft_critical_free_removal";
    case LemmaId::FtIndependentSubsetExists: return "ft_independent_subset_exists";
    case LemmaId::FlpStableResistsSubstitution: return "flp_stable_resists_substitution";
    case LemmaId::SubstitutionCommutesWithFtReduct: return "substitution_commutes_with_ft_reduct";
    case LemmaId::FtReductDisjunctionTransfer: return "ft_reduct_disjunction_transfer";
    case LemmaId::FtReductFormulaTransfer: return "ft_reduct_formula_transfer";
    case LemmaId::FlpCriticalFreeRemoval: return "flp_critical_free_removal";
    case LemmaId::FlpIndependentSubsetExists: return "flp_independent_subset_exists";
    case LemmaId::FtStableResistsPlusSubstitution: return "ft_stable_resists_plus_substitution";
    case LemmaId::PlusSubstitutionTransfer: return "plus_substitution_transfer";
    case LemmaId::MainLemmaFtTight: return "main_lemma_ft_tight";
    case LemmaId::MainLemmaFlpTight: return "main_lemma_flp_tight";
    }
    return "";
}

// Skipped: preconditions do not hold. Vacuous: preconditions hold but the
// hypothesis of the implication does not.
enum class Outcome { Skipped, Vacuous, Holds, Violated };

// One instance. Which fields matter depends on the lemma; `G` is a simple
// formula, or a simple disjunction when `use_disjunction` is set.
struct LemmaInstance {
    SimpleProgram program;
    SimpleFormula formula;
    SimpleDisjunction disjunction;
    bool use_disjunction = false;
    AtomSet I, J, X, K;
};

inline std::string to_string(const AtomSet& s) {
    std::string out = "{";
    for (const auto& a : s) {
        if (out.size() > 1) out += ", ";
        out += to_string(a);
    }
    return out + "}";
}

inline std::string describe(LemmaId id, const LemmaInstance& inst) {
    std::string s = std::string(to_string(id)) + "\n";
    if (!inst.program.empty()) s += "H:\n" + to_string(inst.program);
    if (inst.use_disjunction) {
        s += "G: " + to_string(inst.disjunction) + "\n";
    } else if (!inst.formula.empty()) {
        s += "G: " + to_string(inst.formula) + "\n";
    }
    s += "I = " + to_string(inst.I) + "  J = " + to_string(inst.J) + "  X = " + to_string(inst.X) +
         "  K = " + to_string(inst.K) + "\n";
    return s;
}

namespace detail {

inline bool models(const Interpretation& I, const SimpleProgram& p) {
    for (const auto& r : p) {
        if (!satisfies(I, as_formula(r))) return false;
    }
    return true;
}

inline bool subset(const AtomSet& a, const AtomSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline AtomSet minus(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline Outcome outcome(bool hypothesis, bool conclusion) {
    return !hypothesis ? Outcome::Vacuous : conclusion ? Outcome::Holds : Outcome::Violated;
}

// Some edge of the given kind (any edge when kind is empty) with its source
// in `from` and its target in `to`.
inline bool has_edge(const DependencyGraph& g, const AtomSet& from, const AtomSet& to,
                     std::optional<Semantics> kind) {
    for (const auto& e : g.edges) {
        if (kind && !critical(e, *kind)) continue;
        if (from.contains(g.vertices[e.from]) && to.contains(g.vertices[e.to])) return true;
    }
    return false;
}

inline std::vector<GroundAtom> alphabet(const SimpleProgram& p) {
    const auto atoms = atoms_of(p);
    return {atoms.begin(), atoms.end()};
}

inline bool all_nonempty_subsets(const AtomSet& I, const std::function<bool(const AtomSet&)>& ok) {
    const std::vector<GroundAtom> v(I.begin(), I.end());
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << v.size()); ++m) {
        AtomSet X;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (((m >> i) & 1U) != 0) X.insert(v[i]);
        }
        if (!ok(X)) return false;
    }
    return true;
}

inline bool contains_model(const std::vector<Interpretation>& ms, const Interpretation& I) {
    return std::find(ms.begin(), ms.end(), I) != ms.end();
}

}  // namespace detail

// Each check returns Skipped when the instance does not meet the lemma's
// preconditions.

inline Outcome check_closed_subset_substitution(const LemmaInstance& in) {
    const auto g = dep_graph(in.program);
    if (!detail::models(in.I, in.program) || !detail::subset(in.K, in.X) ||
        detail::has_edge(g, in.K, detail::minus(in.X, in.K), std::nullopt)) {
        return Outcome::Skipped;
    }
    return detail::outcome(detail::models(in.I, subst_bot(in.program, in.X)),
                           detail::models(in.I, subst_bot(in.program, in.K)));
}

inline Outcome check_critical_free_removal(const LemmaInstance& in, Semantics kind) {
    const auto g = dep_graph(in.program);
    if (!detail::models(in.I, in.program) || detail::has_edge(g, in.K, in.K, kind)) {
        return Outcome::Skipped;
    }
    const auto rest = detail::minus(in.I, in.K);
    if (kind == Semantics::FT) {
        if (!detail::subset(in.K, in.I)) return Outcome::Skipped;
        const auto fs = as_formulas(in.program);
        const auto reduct = flp_reduct(fs, in.I);
        return detail::outcome(detail::models(in.I, subst_bot(in.program, in.K)),
                               satisfies(rest, std::span<const Formula>(reduct)));
    }
    bool conclusion = true;
    for (const auto& r : in.program) {
        if (!satisfies(rest, ft_reduct(as_formula(r), in.I))) conclusion = false;
    }
    return detail::outcome(detail::models(in.I, subst_bot(plus_transform(in.program), in.K)),
                           conclusion);
}

inline Outcome check_independent_subset_exists(const LemmaInstance& in, Semantics kind) {
    const auto g = dep_graph(in.program);
    if (in.X.empty() || !is_tight(g, kind)) return Outcome::Skipped;
    const auto K = find_critical_free_subset(g, in.X, kind);
    if (!K || K->empty() || !detail::subset(*K, in.X)) return Outcome::Violated;
    // (i) no edge from K to X \ K; (ii) no critical edge from K inside X.
    if (detail::has_edge(g, *K, detail::minus(in.X, *K), std::nullopt)) return Outcome::Violated;
    if (detail::has_edge(g, *K, in.X, kind)) return Outcome::Violated;
    return Outcome::Holds;
}

// FT-tight program and FLP-stable I (kind = FT): I does not satisfy H^X for
// any nonempty X within I. FLP-tight program and FT-stable I (kind = FLP):
// the same for (H+)^X.
inline Outcome check_stable_resists(const LemmaInstance& in, Semantics kind) {
    if (!is_tight(dep_graph(in.program), kind)) return Outcome::Skipped;
    const auto alphabet = detail::alphabet(in.program);
    const auto stable = stable_models(in.program, kind == Semantics::FT ? Semantics::FLP : Semantics::FT,
                                      alphabet, 20);
    if (!detail::contains_model(stable, in.I)) return Outcome::Skipped;
    const auto base = kind == Semantics::FT ? in.program : plus_transform(in.program);
    const bool ok = detail::all_nonempty_subsets(
        in.I, [&](const AtomSet& X) { return !detail::models(in.I, subst_bot(base, X)); });
    return ok ? Outcome::Holds : Outcome::Violated;
}

inline Outcome check_substitution_commutes_with_ft_reduct(const LemmaInstance& in) {
    if (in.use_disjunction) {
        const auto lhs = satisfies(in.I, as_raw_formula(subst_bot(in.disjunction, in.X)));
        const auto reduct = ft_reduct(as_raw_formula(in.disjunction), in.I);
        const auto rhs = satisfies(in.I, subst_bot(reduct, in.X, SimpleLevel::Disjunction));
        return lhs == rhs ? Outcome::Holds : Outcome::Violated;
    }
    const auto lhs = satisfies(in.I, as_raw_formula(subst_bot(in.formula, in.X)));
    const auto reduct = ft_reduct(as_raw_formula(in.formula), in.I);
    const auto rhs = satisfies(in.I, subst_bot(reduct, in.X, SimpleLevel::Formula));
    return lhs == rhs ? Outcome::Holds : Outcome::Violated;
}

inline Outcome check_ft_reduct_disjunction_transfer(const LemmaInstance& in) {
    const auto reduct = ft_reduct(as_raw_formula(in.disjunction), in.I);
    const bool lhs = satisfies(in.J, reduct);
    const bool rhs = satisfies(in.I, subst_bot(reduct, detail::minus(in.I, in.J), SimpleLevel::Disjunction));
    return lhs == rhs ? Outcome::Holds : Outcome::Violated;
}

inline Outcome check_ft_reduct_formula_transfer(const LemmaInstance& in) {
    const auto reduct = ft_reduct(as_raw_formula(in.formula), in.I);
    return detail::outcome(
        satisfies(in.I, subst_bot(reduct, detail::minus(in.I, in.J), SimpleLevel::Formula)),
        satisfies(in.J, reduct));
}

inline Outcome check_plus_substitution_transfer(const LemmaInstance& in) {
    if (!detail::subset(in.J, in.I)) return Outcome::Skipped;
    const auto X = detail::minus(in.I, in.J);
    if (in.use_disjunction) {
        return detail::outcome(satisfies(in.I, as_raw_formula(subst_bot(plus_transform(in.disjunction), X))),
                               satisfies(in.J, as_raw_formula(in.disjunction)));
    }
    return detail::outcome(satisfies(in.I, as_raw_formula(subst_bot(plus_transform(in.formula), X))),
                           satisfies(in.J, as_raw_formula(in.formula)));
}

// (a) FT-tight: FLP-stable models are FT-stable. (b) FLP-tight: FT-stable
// models are FLP-stable.
inline Outcome check_main_lemma(const SimpleProgram& p, Semantics tightness) {
    if (!is_tight(dep_graph(p), tightness)) return Outcome::Skipped;
    const auto alphabet = detail::alphabet(p);
    const auto flp = stable_models(p, Semantics::FLP, alphabet, 20);
    const auto ft = stable_models(p, Semantics::FT, alphabet, 20);
    const auto& from = tightness == Semantics::FT ? flp : ft;
    const auto& to = tightness == Semantics::FT ? ft : flp;
    if (from.empty()) return Outcome::Vacuous;
    for (const auto& m : from) {
        if (!detail::contains_model(to, m)) return Outcome::Violated;
    }
    return Outcome::Holds;
}

inline Outcome check_lemma(LemmaId id, const LemmaInstance& in) {
    switch (id) {
    case LemmaId::ClosedSubsetSubstitution: return check_closed_subset_substitution(in);
    case LemmaId::FtCriticalFreeRemoval: return check_critical_free_removal(in, Semantics::FT);
    case LemmaId::FtIndependentSubsetExists: return check_independent_subset_exists(in, Semantics::FT);
    case LemmaId::FlpStableResistsSubstitution: return check_stable_resists(in, Semantics::FT);
    case LemmaId::SubstitutionCommutesWithFtReduct: return check_substitution_commutes_with_ft_reduct(in);
    case LemmaId::FtReductDisjunctionTransfer: return check_ft_reduct_disjunction_transfer(in);
    case LemmaId::FtReductFormulaTransfer: return check_ft_reduct_formula_transfer(in);
    case LemmaId::FlpCriticalFreeRemoval: return check_critical_free_removal(in, Semantics::FLP);
    case LemmaId::FlpIndependentSubsetExists: return check_independent_subset_exists(in, Semantics::FLP);
    case LemmaId::FtStableResistsPlusSubstitution: return check_stable_resists(in, Semantics::FLP);
    case LemmaId::PlusSubstitutionTransfer: return check_plus_substitution_transfer(in);
    case LemmaId::MainLemmaFtTight: return check_main_lemma(in.program, Semantics::FT);
    case LemmaId::MainLemmaFlpTight: return check_main_lemma(in.program, Semantics::FLP);
    }
    return Outcome::Skipped;
}

// ---------------------------------------------------------------------------
// lemma instance generation

namespace detail {

inline AtomSet random_subset(Rng& rng, const AtomSet& s, unsigned percent = 50) {
    AtomSet out;
    for (const auto& a : s) {
        if (rng.chance(percent)) out.insert(a);
    }
    return out;
}

inline std::vector<Interpretation> all_models(const SimpleProgram& p) {
    const auto alpha = alphabet(p);
    std::vector<Interpretation> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << alpha.size()); ++m) {
        auto I = decode(m, alpha);
        if (models(I, p)) out.push_back(std::move(I));
    }
    return out;
}

// Removes endpoints of critical edges inside K until none is left.
inline AtomSet drop_critical(Rng& rng, const DependencyGraph& g, AtomSet K, Semantics kind) {
    for (;;) {
        std::vector<const DependencyEdge*> inside;
        for (const auto& e : g.edges) {
            if (critical(e, kind) && K.contains(g.vertices[e.from]) && K.contains(g.vertices[e.to])) {
                inside.push_back(&e);
            }
        }
        if (inside.empty()) return K;
        const auto* e = inside[rng.below(inside.size())];
        K.erase(g.vertices[rng.chance(50) ? e->from : e->to]);
    }
}

// The atoms of X reachable from `seed` by edges that stay inside X.
inline AtomSet close_within(const DependencyGraph& g, const AtomSet& X, AtomSet K) {
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& e : g.edges) {
            const auto& from = g.vertices[e.from];
            const auto& to = g.vertices[e.to];
            if (K.contains(from) && X.contains(to) && !K.contains(to)) {
                K.insert(to);
                changed = true;
            }
        }
    }
    return K;
}

}  // namespace detail

// A random instance meeting the preconditions of `id`, or nullopt after
// `attempts` unsuccessful tries.
inline std::optional<LemmaInstance> gen_lemma_instance(Rng& rng, const GenProfile& prof, LemmaId id,
                                                       std::size_t attempts = 64) {
    const auto atoms = propositional_atoms(prof.simple_atoms);
    const AtomSet all(atoms.begin(), atoms.end());
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        LemmaInstance in;
        switch (id) {
        case LemmaId::ClosedSubsetSubstitution:
        case LemmaId::FtCriticalFreeRemoval:
        case LemmaId::FlpCriticalFreeRemoval: {
            in.program = gen_simple_program(rng, prof);
            const auto ms = detail::all_models(in.program);
            if (ms.empty()) continue;
            in.I = ms[rng.below(ms.size())];
            const auto g = dep_graph(in.program);
            if (id == LemmaId::ClosedSubsetSubstitution) {
                in.X = detail::random_subset(rng, all);
                in.K = detail::close_within(g, in.X, detail::random_subset(rng, in.X));
            } else {
                const auto kind = id == LemmaId::FtCriticalFreeRemoval ? Semantics::FT : Semantics::FLP;
                const AtomSet& pool = id == LemmaId::FtCriticalFreeRemoval ? in.I : all;
                in.K = detail::drop_critical(rng, g, detail::random_subset(rng, pool), kind);
            }
            break;
        }
        case LemmaId::FtIndependentSubsetExists:
        case LemmaId::FlpIndependentSubsetExists:
            in.program = gen_simple_program(rng, prof);
            in.X = detail::random_subset(rng, all);
            if (in.X.empty()) in.X.insert(rng.pick(atoms));
            break;
        case LemmaId::FlpStableResistsSubstitution:
        case LemmaId::FtStableResistsPlusSubstitution: {
            const auto kind = id == LemmaId::FlpStableResistsSubstitution ? Semantics::FT : Semantics::FLP;
            in.program = gen_simple_program(rng, prof);
            if (!is_tight(dep_graph(in.program), kind)) continue;
            const auto alpha = detail::alphabet(in.program);
            const auto ms = stable_models(in.program, kind == Semantics::FT ? Semantics::FLP : Semantics::FT,
                                          alpha, 20);
            if (ms.empty()) continue;
            in.I = ms[rng.below(ms.size())];
            break;
        }
        case LemmaId::SubstitutionCommutesWithFtReduct:
        case LemmaId::PlusSubstitutionTransfer:
            in.use_disjunction = rng.chance(50);
            if (in.use_disjunction) {
                in.disjunction = gen_simple_disjunction(rng, prof, atoms);
            } else {
                in.formula = gen_simple_formula(rng, prof, atoms);
            }
            in.I = detail::random_subset(rng, all);
            if (id == LemmaId::PlusSubstitutionTransfer) {
                in.J = detail::random_subset(rng, in.I, 60);
            } else {
                in.X = detail::random_subset(rng, all);
            }
            break;
        case LemmaId::FtReductDisjunctionTransfer:
            in.use_disjunction = true;
            in.disjunction = gen_simple_disjunction(rng, prof, atoms);
            in.I = detail::random_subset(rng, all);
            in.J = detail::random_subset(rng, all);
            break;
        case LemmaId::FtReductFormulaTransfer:
            in.formula = gen_simple_formula(rng, prof, atoms);
            in.I = detail::random_subset(rng, all);
            in.J = detail::random_subset(rng, all);
            break;
        case LemmaId::MainLemmaFtTight:
        case LemmaId::MainLemmaFlpTight:
            in.program = gen_simple_program(rng, prof);
            break;
        }
        if (check_lemma(id, in) != Outcome::Skipped) return in;
    }
    return std::nullopt;
}

struct LemmaStats {
    std::size_t checked = 0;     // preconditions met
    std::size_t nontrivial = 0;  // hypothesis met as well
    std::size_t skipped = 0;     // no instance found
    std::size_t failures = 0;
};

struct LemmaFailure {
    LemmaId id = LemmaId::ClosedSubsetSubstitution;
    std::uint64_t seed = 0;
    std::string original;
    std::string minimized;
};

struct LemmaReport {
    std::map<LemmaId, LemmaStats> stats;
    std::vector<LemmaFailure> failures;

    bool ok() const { return failures.empty(); }

    void merge(const LemmaReport& other) {
        for (const auto& [id, s] : other.stats) {
            auto& t = stats[id];
            t.checked += s.checked;
            t.nontrivial += s.nontrivial;
            t.skipped += s.skipped;
            t.failures += s.failures;
        }
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }
};

// Shrinks the program of a failing instance, keeping I, J, X, K fixed.
inline LemmaInstance minimize(LemmaId id, LemmaInstance in) {
    if (in.program.empty()) return in;
    in.program = shrink_simple_program(in.program, [&](const SimpleProgram& p) {
        LemmaInstance copy = in;
        copy.program = p;
        return check_lemma(id, copy) == Outcome::Violated;
    });
    return in;
}

inline std::uint64_t instance_seed(std::uint64_t seed, LemmaId id) {
    return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(id) + 1;
}

// One instance of every lemma in `ids` for each seed in [first, first + count).
inline LemmaReport lemma_suite(const GenProfile& prof, std::uint64_t first, std::size_t count,
                               std::span<const LemmaId> ids = all_lemmas) {
    LemmaReport report;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t seed = first + i;
        for (LemmaId id : ids) {
            Rng rng(instance_seed(seed, id));
            auto& st = report.stats[id];
            const auto in = gen_lemma_instance(rng, prof, id);
            if (!in) {
                ++st.skipped;
                continue;
            }
            ++st.checked;
            const auto out = check_lemma(id, *in);
            if (out != Outcome::Vacuous) ++st.nontrivial;
            if (out == Outcome::Violated) {
                ++st.failures;
                report.failures.push_back({id, seed, describe(id, *in), describe(id, minimize(id, *in))});
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// fuzz driver

enum class FuzzMode { Diff, Lemma, Both };

struct FuzzOptions {
    GenProfile profile;
    std::size_t seeds = 1000;
    FuzzMode mode = FuzzMode::Both;
    std::size_t threads = 1;
};

struct DiffFailure {
    std::uint64_t seed = 0;
    std::string original;
    std::string minimized;
    std::string flp;
    std::string ft;
};

struct FuzzReport {
    std::size_t programs = 0;
    std::map<DiffClass, std::size_t> classes;
    std::map<DiffClass, std::size_t> agreeing;
    std::size_t with_aggregates = 0;
    std::size_t cap_errors = 0;
    std::vector<DiffFailure> diff_failures;
    LemmaReport lemmas;

    bool ok() const { return diff_failures.empty() && lemmas.ok(); }

    void merge(const FuzzReport& o) {
        programs += o.programs;
        for (const auto& [k, v] : o.classes) classes[k] += v;
        for (const auto& [k, v] : o.agreeing) agreeing[k] += v;
        with_aggregates += o.with_aggregates;
        cap_errors += o.cap_errors;
        diff_failures.insert(diff_failures.end(), o.diff_failures.begin(), o.diff_failures.end());
        lemmas.merge(o.lemmas);
    }

    // Keeps the first failure (lowest seed) for each minimized reproducer.
    void dedupe() {
        std::set<std::string> seen;
        std::erase_if(diff_failures, [&](const DiffFailure& f) { return !seen.insert(f.minimized).second; });
        std::set<std::pair<LemmaId, std::string>> seen_lemma;
        std::erase_if(lemmas.failures, [&](const LemmaFailure& f) {
            return !seen_lemma.insert({f.id, f.minimized}).second;
        });
    }
};

inline std::string models_string(const std::vector<Interpretation>& ms) {
    std::string s = "[";
    for (const auto& m : ms) {
        if (s.size() > 1) s += ", ";
        s += to_string(AtomSet(m.begin(), m.end()));
    }
    return s + "]";
}

inline FuzzReport fuzz_range(const FuzzOptions& opt, std::uint64_t first, std::size_t count) {
    FuzzReport report;
    const auto cfg = opt.profile.grounding();
    if (opt.mode != FuzzMode::Lemma) {
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t seed = first + i;
            const auto prog = gen_program(with_seed(opt.profile, seed));
            ++report.programs;
            if (aggregate_count(prog) > 0) ++report.with_aggregates;
            DiffReport d;
            try {
                d = differential_check(prog, cfg);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DomainTooLarge && e.kind() != ErrorKind::AlphabetTooLarge) throw;
                ++report.cap_errors;
                continue;
            }
            ++report.classes[d.classification];
            if (d.agree) ++report.agreeing[d.classification];
            if (d.failure()) {
                const auto small = shrink_program(prog, [&](const Program& q) {
                    return differential_check(q, cfg).failure();
                });
                report.diff_failures.push_back(
                    {seed, d.program, pretty_print(small), models_string(d.flp), models_string(d.ft)});
            }
        }
    }
    if (opt.mode != FuzzMode::Diff) report.lemmas = lemma_suite(opt.profile, first, count);
    return report;
}

// Seeds profile.seed .. profile.seed + seeds - 1, split into contiguous blocks
// across threads and merged in seed order.
inline FuzzReport run_fuzz(const FuzzOptions& opt) {
    opt.profile.validate();
    const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, opt.seeds));
    if (threads == 1) {
        auto out = fuzz_range(opt, opt.profile.seed, opt.seeds);
        out.dedupe();
        return out;
    }
    std::vector<FuzzReport> parts(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    const std::size_t block = (opt.seeds + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = t * block;
        const std::size_t n = begin >= opt.seeds ? 0 : std::min(block, opt.seeds - begin);
        workers.emplace_back([&, t, begin, n] {
            try {
                parts[t] = fuzz_range(opt, opt.profile.seed + begin, n);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    FuzzReport out;
    for (const auto& p : parts) out.merge(p);
    out.dedupe();
    return out;
}

}  // namespace dualsm
