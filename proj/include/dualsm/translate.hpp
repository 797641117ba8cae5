#pragma once

// Grounding over an explicit finite domain and the two translations of rules
// into propositional formulas: tau1 (aggregates as disjunctions of complete
// subset descriptions) and tau (aggregates as conjunctions of implications).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dualsm/ast.hpp"
#include "dualsm/error.hpp"
#include "dualsm/logic.hpp"
#include "dualsm/syntax.hpp"
#include "dualsm/terms.hpp"

namespace dualsm {

struct GroundingConfig {
    std::int64_t int_lo = -3;
    std::int64_t int_hi = 3;
    bool include_inf_sup = true;
    std::size_t max_aggregate_domain = 12;
    std::size_t max_candidate_atoms = default_max_candidate_atoms;
    // Upper bound on substitutions tried for one rule or one aggregate element.
    std::size_t max_substitutions = 1'000'000;

    void validate() const {
        if (int_lo > int_hi) {
            throw Error(ErrorKind::Unsupported, "integer range is empty");
        }
        if (max_aggregate_domain == 0 || max_aggregate_domain > 30) {
            throw Error(ErrorKind::Unsupported, "max_aggregate_domain must be in 1..30");
        }
        if (max_candidate_atoms == 0 || max_candidate_atoms > 62) {
            throw Error(ErrorKind::Unsupported, "max_candidate_atoms must be in 1..62");
        }
        if (static_cast<std::uint64_t>(int_hi) - static_cast<std::uint64_t>(int_lo) > 100'000) {
            throw Error(ErrorKind::DomainTooLarge, "integer range is wider than 100000");
        }
    }
};

enum class Translation { Tau, Tau1 };

inline const char* to_string(Translation t) { return t == Translation::Tau ? "tau" : "tau1"; }

using Substitution = std::map<std::string, Value>;

// ---------------------------------------------------------------------------
// substitution

inline Term substitute(const Term& t, const Substitution& s) {
    if (t.kind == Term::Kind::Variable) {
        auto it = s.find(t.name);
        return it == s.end() ? t : to_term(it->second);
    }
    if (t.args.empty()) return t;
    Term out = t;
    for (auto& a : out.args) a = substitute(a, s);
    return out;
}

inline Atom substitute(const Atom& a, const Substitution& s) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(substitute(t, s));
    return out;
}

inline Literal substitute(const Literal& l, const Substitution& s) {
    if (const auto* sym = std::get_if<SymbolicLiteral>(&l)) {
        return SymbolicLiteral{sym->polarity, substitute(sym->atom, s)};
    }
    const auto& a = std::get<ArithLiteral>(l);
    return ArithLiteral{a.rel, substitute(a.lhs, s), substitute(a.rhs, s)};
}

inline AggregateAtom substitute(const AggregateAtom& agg, const Substitution& s) {
    AggregateAtom out;
    out.function = agg.function;
    out.rel = agg.rel;
    for (const auto& t : agg.tuple) out.tuple.push_back(substitute(t, s));
    for (const auto& l : agg.conditions) out.conditions.push_back(substitute(l, s));
    out.bound = substitute(agg.bound, s);
    return out;
}

// ---------------------------------------------------------------------------
// domain

namespace detail {

inline void domain_terms(const Term& t, std::set<Value>& out) {
    if (t.kind == Term::Kind::Symbol) out.insert(Value::sym(t.name));
    if (t.kind == Term::Kind::Compound && is_ground(t)) {
        if (auto v = eval_term(t)) out.insert(std::move(*v));
    }
    for (const auto& a : t.args) domain_terms(a, out);
}

inline void domain_terms(const Literal& l, std::set<Value>& out) {
    if (const auto* s = std::get_if<SymbolicLiteral>(&l)) {
        for (const auto& t : s->atom.args) domain_terms(t, out);
    } else {
        const auto& a = std::get<ArithLiteral>(l);
        domain_terms(a.lhs, out);
        domain_terms(a.rhs, out);
    }
}

}  // namespace detail

// The finite set of precomputed terms substituted for variables: the
// configured integers, the symbolic constants of the program, the values of
// its ground compound subterms and, optionally, #inf and #sup.
inline std::vector<Value> substitution_domain(const Program& p, const GroundingConfig& cfg) {
    cfg.validate();
    std::set<Value> out;
    for (std::int64_t n = cfg.int_lo;; ++n) {
        out.insert(Value::num(n));
        if (n == cfg.int_hi) break;
    }
    if (cfg.include_inf_sup) {
        out.insert(Value::inf());
        out.insert(Value::sup());
    }
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) {
            for (const auto& t : h.args) detail::domain_terms(t, out);
        }
        for (const auto& b : r.body) {
            if (const auto* s = std::get_if<SymbolicLiteral>(&b)) {
                detail::domain_terms(Literal{*s}, out);
            } else if (const auto* a = std::get_if<ArithLiteral>(&b)) {
                detail::domain_terms(Literal{*a}, out);
            } else {
                const auto& agg = std::get<AggregateLiteral>(b).atom;
                for (const auto& t : agg.tuple) detail::domain_terms(t, out);
                for (const auto& l : agg.conditions) detail::domain_terms(l, out);
                detail::domain_terms(agg.bound, out);
            }
        }
    }
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// literals

inline std::optional<GroundAtom> ground_atom(const Atom& a) {
    GroundAtom g{a.predicate, {}};
    g.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        auto v = eval_term(t);
        if (!v) return std::nullopt;
        g.args.push_back(std::move(*v));
    }
    return g;
}

// tau1 (equivalently tau) of a closed symbolic literal; nullopt if it is not
// well-formed.
inline std::optional<Formula> tau1_symbolic(const SymbolicLiteral& lit) {
    auto g = ground_atom(lit.atom);
    if (!g) return std::nullopt;
    auto f = Formula::atom(std::move(*g));
    return lit.polarity == Polarity::Pos ? f : Formula::negation(std::move(f));
}

// True iff every arithmetic literal is true; nullopt if some literal is not
// well-formed.
inline std::optional<bool> nontrivial(std::span<const Literal> closed) {
    bool result = true;
    for (const auto& l : closed) {
        if (const auto* s = std::get_if<SymbolicLiteral>(&l)) {
            if (!ground_atom(s->atom)) return std::nullopt;
        } else {
            auto v = eval_arith(std::get<ArithLiteral>(l));
            if (!v) return std::nullopt;
            result = result && *v;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// aggregates

struct AggregateElement {
    TermTuple assignment;               // values r for the local variables
    TermTuple tuple;                    // val(t) under r
    std::vector<Formula> conditions;    // translated symbolic literals of L under r

    // The conjunction of the condition literals.
    Formula formula() const { return conjoin(conditions); }
};

struct AggregateInstance {
    AggregateAtom atom;  // global variables already substituted
    std::vector<std::string> locals;
    std::vector<AggregateElement> elements;  // the set A
    Value bound;
};

// Builds the set A of local substitutions r such that t and L are well-formed
// under r and L is nontrivial under r. Local variables range over `domain`.
inline AggregateInstance instantiate_aggregate(const AggregateAtom& closed,
                                               std::span<const Value> domain,
                                               const GroundingConfig& cfg) {
    AggregateInstance inst;
    inst.atom = closed;
    inst.locals = element_variables(closed);
    auto bound = eval_term(closed.bound);
    if (!bound) {
        throw Error(ErrorKind::Invariant, "aggregate bound is not well-formed: " + to_string(closed));
    }
    inst.bound = std::move(*bound);

    const std::size_t k = inst.locals.size();
    double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(domain.size());
    if (total > static_cast<double>(cfg.max_substitutions)) {
        throw Error(ErrorKind::DomainTooLarge,
                    "aggregate " + to_string(closed) + ": " + std::to_string(k) +
                        " local variables over a domain of " + std::to_string(domain.size()) +
                        " terms");
    }
    if (k > 0 && domain.empty()) return inst;

    std::vector<std::size_t> digits(k, 0);
    for (;;) {
        Substitution s;
        for (std::size_t i = 0; i < k; ++i) s.emplace(inst.locals[i], domain[digits[i]]);

        AggregateElement e;
        bool ok = true;
        for (const auto& t : closed.tuple) {
            auto v = eval_term(substitute(t, s));
            if (!v) {
                ok = false;
                break;
            }
            e.tuple.push_back(std::move(*v));
        }
        if (ok) {
            std::vector<Literal> lits;
            lits.reserve(closed.conditions.size());
            for (const auto& l : closed.conditions) lits.push_back(substitute(l, s));
            const auto nt = nontrivial(lits);
            ok = nt.has_value() && *nt;
            if (ok) {
                for (const auto& l : lits) {
                    if (const auto* sym = std::get_if<SymbolicLiteral>(&l)) {
                        e.conditions.push_back(*tau1_symbolic(*sym));
                    }
                }
            }
        }
        if (ok) {
            for (std::size_t i = 0; i < k; ++i) e.assignment.push_back(domain[digits[i]]);
            inst.elements.push_back(std::move(e));
        }

        std::size_t i = 0;
        while (i < k && ++digits[i] == domain.size()) digits[i++] = 0;
        if (i == k) break;
    }
    if (inst.elements.size() > cfg.max_aggregate_domain) {
        throw Error(ErrorKind::DomainTooLarge,
                    "aggregate " + to_string(closed) + ": |A| = " +
                        std::to_string(inst.elements.size()) + " exceeds max_aggregate_domain " +
                        std::to_string(cfg.max_aggregate_domain));
    }
    return inst;
}

// Delta is a bitmask over inst.elements. The tuples of Delta are collected as a
// set, so elements with equal tuples count once.
inline bool justifies(const AggregateInstance& inst, std::uint64_t delta) {
    std::set<TermTuple> values;
    for (std::size_t i = 0; i < inst.elements.size(); ++i) {
        if (((delta >> i) & 1U) != 0) values.insert(inst.elements[i].tuple);
    }
    return holds(inst.atom.rel, apply_aggregate(inst.atom.function, values), inst.bound);
}

// Disjunction over justifying Delta of the complete description of Delta.
inline Formula tau1_aggregate(const AggregateInstance& inst) {
    const std::size_t n = inst.elements.size();
    std::vector<Formula> conds;
    conds.reserve(n);
    for (const auto& e : inst.elements) conds.push_back(e.formula());
    std::vector<Formula> disjuncts;
    for (std::uint64_t delta = 0; delta < (std::uint64_t{1} << n); ++delta) {
        if (!justifies(inst, delta)) continue;
        std::vector<Formula> parts;
        parts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            parts.push_back(((delta >> i) & 1U) != 0 ? conds[i] : Formula::negation(conds[i]));
        }
        disjuncts.push_back(conjoin(std::move(parts)));
    }
    return disjoin(std::move(disjuncts));
}

// Conjunction over non-justifying Delta of
//   (conjunction of the conditions in Delta) -> (disjunction of the others).
inline Formula tau_aggregate(const AggregateInstance& inst) {
    const std::size_t n = inst.elements.size();
    std::vector<Formula> conds;
    conds.reserve(n);
    for (const auto& e : inst.elements) conds.push_back(e.formula());
    std::vector<Formula> conjuncts;
    for (std::uint64_t delta = 0; delta < (std::uint64_t{1} << n); ++delta) {
        if (justifies(inst, delta)) continue;
        std::vector<Formula> in;
        std::vector<Formula> out;
        for (std::size_t i = 0; i < n; ++i) {
            (((delta >> i) & 1U) != 0 ? in : out).push_back(conds[i]);
        }
        conjuncts.push_back(Formula::implies(conjoin(std::move(in)), disjoin(std::move(out))));
    }
    return conjoin(std::move(conjuncts));
}

// ---------------------------------------------------------------------------
// rules

enum class ConjunctKind { Literal, Aggregate, NegatedAggregate };

struct BodyConjunct {
    ConjunctKind kind = ConjunctKind::Literal;
    std::size_t body_index = 0;
    Formula formula;
    std::optional<AggregateInstance> aggregate;
};

// One instance G -> H of a rule, with the translated body conjuncts kept
// separately so later passes can rewrite them one at a time.
struct GroundRule {
    std::size_t rule_index = 0;
    Substitution substitution;
    std::vector<BodyConjunct> body;
    std::vector<GroundAtom> head;
    Formula formula;
};

inline std::vector<GroundRule> ground_rule(const Rule& rule, std::size_t rule_index,
                                           Translation flavor, const GroundingConfig& cfg,
                                           std::span<const Value> domain) {
    const auto classes = classify_variables(rule);
    const std::vector<std::string> globals(classes.global.begin(), classes.global.end());
    const std::size_t k = globals.size();
    double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(domain.size());
    if (total > static_cast<double>(cfg.max_substitutions)) {
        throw Error(ErrorKind::DomainTooLarge,
                    "rule " + std::to_string(rule_index) + " has " + std::to_string(k) +
                        " global variables over a domain of " + std::to_string(domain.size()) +
                        " terms");
    }
    std::vector<GroundRule> out;
    if (k > 0 && domain.empty()) return out;

    std::vector<std::size_t> digits(k, 0);
    for (;;) {
        Substitution s;
        for (std::size_t i = 0; i < k; ++i) s.emplace(globals[i], domain[digits[i]]);

        GroundRule gr;
        gr.rule_index = rule_index;
        gr.substitution = s;
        bool keep = true;
        for (const auto& h : rule.head) {
            auto g = ground_atom(substitute(h, s));
            if (!g) {
                keep = false;
                break;
            }
            gr.head.push_back(std::move(*g));
        }
        for (std::size_t j = 0; keep && j < rule.body.size(); ++j) {
            const auto& b = rule.body[j];
            if (const auto* sym = std::get_if<SymbolicLiteral>(&b)) {
                auto f = tau1_symbolic(SymbolicLiteral{sym->polarity, substitute(sym->atom, s)});
                if (!f) {
                    keep = false;
                } else {
                    gr.body.push_back({ConjunctKind::Literal, j, std::move(*f), std::nullopt});
                }
            } else if (const auto* ar = std::get_if<ArithLiteral>(&b)) {
                auto v = eval_arith(ArithLiteral{ar->rel, substitute(ar->lhs, s),
                                                 substitute(ar->rhs, s)});
                keep = v.has_value() && *v;
            } else {
                const auto& al = std::get<AggregateLiteral>(b);
                auto closed = substitute(al.atom, s);
                if (!eval_term(closed.bound)) {
                    keep = false;
                    continue;
                }
                auto inst = instantiate_aggregate(closed, domain, cfg);
                Formula f = flavor == Translation::Tau ? tau_aggregate(inst) : tau1_aggregate(inst);
                if (al.polarity == Polarity::Pos) {
                    gr.body.push_back({ConjunctKind::Aggregate, j, std::move(f), std::move(inst)});
                } else {
                    gr.body.push_back({ConjunctKind::NegatedAggregate, j,
                                       Formula::negation(std::move(f)), std::move(inst)});
                }
            }
        }
        if (keep) {
            std::vector<Formula> ante;
            ante.reserve(gr.body.size());
            for (const auto& c : gr.body) ante.push_back(c.formula);
            std::vector<Formula> cons;
            cons.reserve(gr.head.size());
            for (const auto& h : gr.head) cons.push_back(Formula::atom(h));
            gr.formula = Formula::implies(conjoin(std::move(ante)), disjoin(std::move(cons)));
            out.push_back(std::move(gr));
        }

        std::size_t i = 0;
        while (i < k && ++digits[i] == domain.size()) digits[i++] = 0;
        if (i == k) break;
    }
    return out;
}

struct GroundProgram {
    Translation translation = Translation::Tau;
    std::vector<Value> domain;
    std::vector<GroundRule> rules;

    // The translated program as a set of formulas, canonically ordered.
    std::vector<Formula> formulas() const {
        std::set<Formula> fs;
        for (const auto& r : rules) fs.insert(r.formula);
        return {fs.begin(), fs.end()};
    }

    std::vector<GroundAtom> head_atoms() const {
        std::set<GroundAtom> atoms;
        for (const auto& r : rules) atoms.insert(r.head.begin(), r.head.end());
        return {atoms.begin(), atoms.end()};
    }

    std::vector<GroundAtom> all_atoms() const {
        const auto fs = formulas();
        const auto atoms = atoms_of(fs);
        return {atoms.begin(), atoms.end()};
    }
};

inline GroundProgram ground_program(const Program& p, Translation flavor,
                                    const GroundingConfig& cfg) {
    GroundProgram gp;
    gp.translation = flavor;
    gp.domain = substitution_domain(p, cfg);
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        try {
            auto rs = ground_rule(p.rules[i], i, flavor, cfg, gp.domain);
            for (auto& r : rs) gp.rules.push_back(std::move(r));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw Error(e.kind(), "rule " + std::to_string(i + 1) + " (" +
                                      to_string(p.rules[i]) + "): " + e.what());
        }
    }
    return gp;
}

// ---------------------------------------------------------------------------
// solving a program

struct SolveOptions {
    GroundingConfig grounding;
    bool full_alphabet = false;
};

// Stable models of a program's translation. The candidate alphabet is the set
// of head atoms (stable models never contain other atoms) unless
// `full_alphabet` asks for every atom of the translation.
inline std::vector<Interpretation> solve(const GroundProgram& gp, Semantics semantics,
                                         bool full_alphabet, std::size_t max_atoms) {
    const auto fs = gp.formulas();
    const auto alphabet = full_alphabet ? gp.all_atoms() : gp.head_atoms();
    return stable_models(fs, semantics, alphabet, max_atoms);
}

inline std::vector<Interpretation> solve(const Program& p, Semantics semantics,
                                         Translation flavor, const SolveOptions& opts = {}) {
    const auto gp = ground_program(p, flavor, opts.grounding);
    return solve(gp, semantics, opts.full_alphabet, opts.grounding.max_candidate_atoms);
}

}  // namespace dualsm
