#pragma once

// Simple programs: rules G -> H where G is a conjunction of implications
// (conjunction of atoms -> disjunction of p, ~p, ~~p) and H is a disjunction
// of atoms. Conversion of tau-groundings into this form, the extended positive
// dependency graph with its critical edges, and the _|_-substitution and plus
// transformations used to reason about them.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualsm/error.hpp"
#include "dualsm/graph.hpp"
#include "dualsm/logic.hpp"
#include "dualsm/terms.hpp"
#include "dualsm/translate.hpp"

namespace dualsm {

struct ExtendedLiteral {
    enum class Mode : std::uint8_t { Plain, Neg, NegNeg };

    GroundAtom atom;
    Mode mode = Mode::Plain;

    static ExtendedLiteral plain(GroundAtom a) { return {std::move(a), Mode::Plain}; }
    static ExtendedLiteral neg(GroundAtom a) { return {std::move(a), Mode::Neg}; }
    static ExtendedLiteral negneg(GroundAtom a) { return {std::move(a), Mode::NegNeg}; }

    auto operator<=>(const ExtendedLiteral&) const = default;
    bool operator==(const ExtendedLiteral&) const = default;
};

using AtomSet = std::set<GroundAtom>;
using SimpleDisjunction = std::set<ExtendedLiteral>;

struct SimpleImplication {
    AtomSet antecedent;
    SimpleDisjunction consequent;

    bool positive() const {
        for (const auto& l : consequent) {
            if (l.mode != ExtendedLiteral::Mode::Plain) return false;
        }
        return true;
    }

    auto operator<=>(const SimpleImplication&) const = default;
    bool operator==(const SimpleImplication&) const = default;
};

using SimpleFormula = std::set<SimpleImplication>;

struct SimpleRule {
    SimpleFormula body;
    AtomSet head;

    auto operator<=>(const SimpleRule&) const = default;
    bool operator==(const SimpleRule&) const = default;
};

using SimpleProgram = std::set<SimpleRule>;

// ---------------------------------------------------------------------------
// printing

inline std::string to_string(const ExtendedLiteral& l) {
    switch (l.mode) {
    case ExtendedLiteral::Mode::Plain: return to_string(l.atom);
    case ExtendedLiteral::Mode::Neg: return "~" + to_string(l.atom);
    case ExtendedLiteral::Mode::NegNeg: return "~~" + to_string(l.atom);
    }
    return {};
}

inline std::string to_string(const SimpleDisjunction& d) {
    if (d.empty()) return "#false";
    std::string s;
    for (const auto& l : d) {
        if (!s.empty()) s += " | ";
        s += to_string(l);
    }
    return s;
}

inline std::string to_string(const SimpleImplication& imp) {
    std::string s;
    for (const auto& a : imp.antecedent) {
        if (!s.empty()) s += " & ";
        s += to_string(a);
    }
    if (s.empty()) s = "#true";
    return "(" + s + " -> " + to_string(imp.consequent) + ")";
}

inline std::string to_string(const SimpleFormula& f) {
    if (f.empty()) return "#true";
    std::string s;
    for (const auto& imp : f) {
        if (!s.empty()) s += " & ";
        s += to_string(imp);
    }
    return s;
}

inline std::string to_string(const SimpleRule& r) {
    std::string h;
    for (const auto& a : r.head) {
        if (!h.empty()) h += " | ";
        h += to_string(a);
    }
    if (h.empty()) h = "#false";
    return "{" + to_string(r.body) + "} -> " + h;
}

inline std::string to_string(const SimpleProgram& p) {
    std::string s;
    for (const auto& r : p) s += to_string(r) + "\n";
    return s;
}

// ---------------------------------------------------------------------------
// embedding into formulas

// as_formula collapses singleton conjunctions and disjunctions, so the rule
// {#true -> ~~p} -> p becomes ((#true -> ~~p) -> p). as_raw_formula keeps every
// level (conjunction of implications of a conjunction and a disjunction) so the
// structure survives reducts and can be matched level by level.

inline Formula as_formula(const ExtendedLiteral& l) {
    auto f = Formula::atom(l.atom);
    switch (l.mode) {
    case ExtendedLiteral::Mode::Plain: return f;
    case ExtendedLiteral::Mode::Neg: return Formula::negation(std::move(f));
    case ExtendedLiteral::Mode::NegNeg: return Formula::negation(Formula::negation(std::move(f)));
    }
    return f;
}

namespace detail {

inline std::vector<Formula> atom_formulas(const AtomSet& atoms) {
    std::vector<Formula> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(Formula::atom(a));
    return out;
}

inline std::vector<Formula> literal_formulas(const SimpleDisjunction& d) {
    std::vector<Formula> out;
    out.reserve(d.size());
    for (const auto& l : d) out.push_back(as_formula(l));
    return out;
}

}  // namespace detail

inline Formula as_formula(const SimpleDisjunction& d) { return disjoin(detail::literal_formulas(d)); }
inline Formula as_raw_formula(const SimpleDisjunction& d) {
    return Formula::make_or(detail::literal_formulas(d));
}

inline Formula as_formula(const SimpleImplication& imp) {
    return Formula::implies(conjoin(detail::atom_formulas(imp.antecedent)), as_formula(imp.consequent));
}
inline Formula as_raw_formula(const SimpleImplication& imp) {
    return Formula::implies(Formula::make_and(detail::atom_formulas(imp.antecedent)),
                            as_raw_formula(imp.consequent));
}

inline Formula as_formula(const SimpleFormula& f) {
    std::vector<Formula> cs;
    for (const auto& imp : f) cs.push_back(as_formula(imp));
    return conjoin(std::move(cs));
}
inline Formula as_raw_formula(const SimpleFormula& f) {
    std::vector<Formula> cs;
    for (const auto& imp : f) cs.push_back(as_raw_formula(imp));
    return Formula::make_and(std::move(cs));
}

// The consequent stays a disjunction of atoms, as the FLP reduct requires.
inline Formula as_formula(const SimpleRule& r) {
    return Formula::implies(as_formula(r.body), disjoin(detail::atom_formulas(r.head)));
}
inline Formula as_raw_formula(const SimpleRule& r) {
    return Formula::implies(as_raw_formula(r.body), Formula::make_or(detail::atom_formulas(r.head)));
}

inline std::vector<Formula> as_formulas(const SimpleProgram& p) {
    std::set<Formula> fs;
    for (const auto& r : p) fs.insert(as_formula(r));
    return {fs.begin(), fs.end()};
}

inline AtomSet atoms_of(const SimpleProgram& p) {
    AtomSet out;
    for (const auto& r : p) {
        out.insert(r.head.begin(), r.head.end());
        for (const auto& imp : r.body) {
            out.insert(imp.antecedent.begin(), imp.antecedent.end());
            for (const auto& l : imp.consequent) out.insert(l.atom);
        }
    }
    return out;
}

inline AtomSet head_atoms(const SimpleProgram& p) {
    AtomSet out;
    for (const auto& r : p) out.insert(r.head.begin(), r.head.end());
    return out;
}

inline std::vector<Interpretation> stable_models(const SimpleProgram& p, Semantics semantics,
                                                 std::span<const GroundAtom> alphabet,
                                                 std::size_t max_atoms = default_max_candidate_atoms) {
    const auto fs = as_formulas(p);
    return stable_models(std::span<const Formula>(fs), semantics, alphabet, max_atoms);
}

// ---------------------------------------------------------------------------
// conversion of tau-groundings

namespace detail {

inline ExtendedLiteral literal_of(const Formula& f, const std::string& where) {
    if (f.is_atom()) return ExtendedLiteral::plain(f.atom());
    if (f.is_negation() && f.antecedent().is_atom()) return ExtendedLiteral::neg(f.antecedent().atom());
    throw Error(ErrorKind::Shape, where + ": expected a literal, got " + to_string(f));
}

// The negation of a literal as an extended literal: ~p for p, ~~p for ~p.
inline ExtendedLiteral negate(const ExtendedLiteral& l) {
    return l.mode == ExtendedLiteral::Mode::Plain ? ExtendedLiteral::neg(l.atom)
                                                  : ExtendedLiteral::negneg(l.atom);
}

// The double negation of a literal: ~~p for p, ~p for ~p.
inline ExtendedLiteral double_negate(const ExtendedLiteral& l) {
    return l.mode == ExtendedLiteral::Mode::Plain ? ExtendedLiteral::negneg(l.atom)
                                                  : ExtendedLiteral::neg(l.atom);
}

// Literals of each member of A, as extended literals (plain or neg).
inline std::vector<std::vector<ExtendedLiteral>> element_literals(const AggregateInstance& inst,
                                                                  const std::string& where) {
    std::vector<std::vector<ExtendedLiteral>> out;
    out.reserve(inst.elements.size());
    for (const auto& e : inst.elements) {
        std::set<ExtendedLiteral> ls;
        for (const auto& c : e.conditions) ls.insert(literal_of(c, where));
        out.emplace_back(ls.begin(), ls.end());
    }
    return out;
}

// Calls visit(choice) for every way of picking one literal from each list.
template <class Visit>
void for_each_choice(const std::vector<const std::vector<ExtendedLiteral>*>& lists, Visit&& visit) {
    std::vector<std::size_t> digits(lists.size(), 0);
    std::vector<ExtendedLiteral> choice;
    for (;;) {
        choice.clear();
        for (std::size_t i = 0; i < lists.size(); ++i) choice.push_back((*lists[i])[digits[i]]);
        visit(choice);
        std::size_t i = 0;
        while (i < lists.size() && ++digits[i] == lists[i]->size()) digits[i++] = 0;
        if (i == lists.size()) return;
    }
}

inline void check_choice_count(const std::vector<const std::vector<ExtendedLiteral>*>& lists,
                               const std::string& where) {
    double n = 1;
    for (const auto* l : lists) n *= static_cast<double>(l->size());
    if (n > 65536) {
        throw Error(ErrorKind::DomainTooLarge,
                    where + ": conversion needs more than 65536 choice functions");
    }
}

// One implication of the aggregate translation, split as
//   A1 & ~A2 -> C_1 | ... | C_m.
struct SplitImplication {
    AtomSet positive;  // A1
    AtomSet negative;  // A2
    std::vector<const std::vector<ExtendedLiteral>*> consequent;  // C
};

inline SplitImplication split(const std::vector<std::vector<ExtendedLiteral>>& lits,
                              std::uint64_t delta) {
    SplitImplication s;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (((delta >> i) & 1U) == 0) {
            s.consequent.push_back(&lits[i]);
            continue;
        }
        for (const auto& l : lits[i]) {
            (l.mode == ExtendedLiteral::Mode::Plain ? s.positive : s.negative).insert(l.atom);
        }
    }
    return s;
}

// An implication A1 & ~A2 -> C becomes the conjunction over choice functions
// phi (one literal from each nonempty C) of A1 -> ~~A2 | phi(C). If some C is
// empty the implication is a tautology and contributes nothing.
inline void convert_implication(const SplitImplication& s, SimpleFormula& out,
                                const std::string& where) {
    for (const auto* c : s.consequent) {
        if (c->empty()) return;
    }
    check_choice_count(s.consequent, where);
    SimpleDisjunction base;
    for (const auto& p : s.negative) base.insert(ExtendedLiteral::negneg(p));
    for_each_choice(s.consequent, [&](const std::vector<ExtendedLiteral>& phi) {
        SimpleImplication imp{s.positive, base};
        imp.consequent.insert(phi.begin(), phi.end());
        out.insert(std::move(imp));
    });
}

// The negation of A1 & ~A2 -> C. Every part is stated with ~ or ~~ in front,
// so it constrains only the candidate model and not its subsets:
//   ~~p for p in A1, ~p for p in A2, and for each C the disjunction of the
//   negations of its literals.
inline void convert_negated_implication(const SplitImplication& s, SimpleFormula& out) {
    for (const auto& p : s.positive) out.insert(SimpleImplication{{}, {ExtendedLiteral::negneg(p)}});
    for (const auto& p : s.negative) out.insert(SimpleImplication{{}, {ExtendedLiteral::neg(p)}});
    for (const auto* c : s.consequent) {
        SimpleDisjunction d;
        for (const auto& l : *c) d.insert(negate(l));
        out.insert(SimpleImplication{{}, std::move(d)});
    }
}

// The negation of a conjunction of several implications. ~tauE is
// classically the conjunction, over the subsets Delta that justify E, of "A is
// not described by Delta":
//   ~C_r for some r in Delta, or C_r for some r outside Delta.
// Each such clause is spread over choice functions for the C_r outside Delta
// and every literal is put under ~ or ~~.
inline void convert_negated_aggregate(const AggregateInstance& inst,
                                      const std::vector<std::vector<ExtendedLiteral>>& lits,
                                      SimpleFormula& out, const std::string& where) {
    const std::size_t n = lits.size();
    for (std::uint64_t delta = 0; delta < (std::uint64_t{1} << n); ++delta) {
        if (!justifies(inst, delta)) continue;
        SimpleDisjunction base;
        std::vector<const std::vector<ExtendedLiteral>*> outside;
        bool tautology = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (((delta >> i) & 1U) != 0) {
                for (const auto& l : lits[i]) base.insert(negate(l));
            } else if (lits[i].empty()) {
                tautology = true;
            } else {
                outside.push_back(&lits[i]);
            }
        }
        if (tautology) continue;
        check_choice_count(outside, where);
        for_each_choice(outside, [&](const std::vector<ExtendedLiteral>& phi) {
            SimpleImplication imp{{}, base};
            for (const auto& l : phi) imp.consequent.insert(double_negate(l));
            out.insert(std::move(imp));
        });
    }
}

inline std::string provenance(const GroundRule& r, const BodyConjunct& c) {
    std::string s = "rule " + std::to_string(r.rule_index + 1) + ", body literal " +
                    std::to_string(c.body_index + 1);
    if (!r.substitution.empty()) {
        s += " [";
        bool first = true;
        for (const auto& [name, value] : r.substitution) {
            if (!first) s += ", ";
            first = false;
            s += name + "=" + to_string(value);
        }
        s += "]";
    }
    return s;
}

}  // namespace detail

// The simple formula that replaces one conjunct of a grounded rule body.
inline SimpleFormula convert_conjunct(const GroundRule& rule, const BodyConjunct& c) {
    const std::string where = detail::provenance(rule, c);
    SimpleFormula out;
    if (c.kind == ConjunctKind::Literal) {
        out.insert(SimpleImplication{{}, {detail::literal_of(c.formula, where)}});
        return out;
    }
    if (!c.aggregate) {
        throw Error(ErrorKind::Shape, where + ": aggregate conjunct without its instance");
    }
    const auto& inst = *c.aggregate;
    const auto lits = detail::element_literals(inst, where);
    const std::size_t n = lits.size();
    std::vector<std::uint64_t> failing;
    for (std::uint64_t delta = 0; delta < (std::uint64_t{1} << n); ++delta) {
        if (!justifies(inst, delta)) failing.push_back(delta);
    }
    if (c.kind == ConjunctKind::Aggregate) {
        for (auto delta : failing) detail::convert_implication(detail::split(lits, delta), out, where);
    } else if (failing.empty()) {
        out.insert(SimpleImplication{{}, {}});  // ~#true
    } else if (failing.size() == 1) {
        detail::convert_negated_implication(detail::split(lits, failing.front()), out);
    } else {
        detail::convert_negated_aggregate(inst, lits, out, where);
    }
    return out;
}

// Replaces every conjunct of every rule body of a tau-grounding by an
// equivalent simple formula. The result has the same FLP- and FT-stable
// models as the grounding.
inline SimpleProgram to_simple_program(const GroundProgram& gp) {
    if (gp.translation != Translation::Tau) {
        throw Error(ErrorKind::Shape, "conversion to a simple program needs the tau translation");
    }
    SimpleProgram out;
    for (const auto& r : gp.rules) {
        SimpleRule sr;
        sr.head.insert(r.head.begin(), r.head.end());
        for (const auto& c : r.body) {
            auto part = convert_conjunct(r, c);
            sr.body.insert(part.begin(), part.end());
        }
        out.insert(std::move(sr));
    }
    return out;
}

// ---------------------------------------------------------------------------
// dependency graph

struct DependencyEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    bool ft_critical = false;
    bool flp_critical = false;
};

struct DependencyGraph {
    std::vector<GroundAtom> vertices;  // sorted
    std::vector<DependencyEdge> edges;  // sorted by (from, to), one per pair

    std::size_t index_of(const GroundAtom& a) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), a);
        if (it == vertices.end() || *it != a) {
            throw Error(ErrorKind::Invariant, "atom " + to_string(a) + " is not a vertex");
        }
        return static_cast<std::size_t>(it - vertices.begin());
    }

    const DependencyEdge* find(const GroundAtom& p, const GroundAtom& q) const {
        const std::size_t f = index_of(p);
        const std::size_t t = index_of(q);
        for (const auto& e : edges) {
            if (e.from == f && e.to == t) return &e;
        }
        return nullptr;
    }

    Adjacency adjacency() const {
        Adjacency adj(vertices.size());
        for (const auto& e : edges) adj[e.from].push_back(e.to);
        return adj;
    }
};

// Edge p -> q when p is in the head of a rule whose body has q or ~~q in
// some consequent. FT-critical: q occurs plainly in a non-positive
// implication. FLP-critical: ~~q occurs.
inline DependencyGraph dep_graph(const SimpleProgram& p) {
    DependencyGraph g;
    const auto atoms = atoms_of(p);
    g.vertices.assign(atoms.begin(), atoms.end());
    std::map<std::pair<std::size_t, std::size_t>, DependencyEdge> edges;
    for (const auto& r : p) {
        for (const auto& h : r.head) {
            const std::size_t from = g.index_of(h);
            for (const auto& imp : r.body) {
                const bool positive = imp.positive();
                for (const auto& l : imp.consequent) {
                    if (l.mode == ExtendedLiteral::Mode::Neg) continue;
                    const std::size_t to = g.index_of(l.atom);
                    auto& e = edges[{from, to}];
                    e.from = from;
                    e.to = to;
                    if (l.mode == ExtendedLiteral::Mode::Plain && !positive) e.ft_critical = true;
                    if (l.mode == ExtendedLiteral::Mode::NegNeg) e.flp_critical = true;
                }
            }
        }
    }
    for (auto& [key, e] : edges) g.edges.push_back(e);
    return g;
}

namespace detail {

inline bool critical(const DependencyEdge& e, Semantics kind) {
    return kind == Semantics::FT ? e.ft_critical : e.flp_critical;
}

}  // namespace detail

// Tight for `kind` = FT (resp. FLP) iff no cycle goes through an FT-critical
// (resp. FLP-critical) edge, i.e. no such edge lies inside one component.
inline bool is_tight(const DependencyGraph& g, Semantics kind) {
    const auto comp = scc_ids(g.adjacency());
    for (const auto& e : g.edges) {
        if (detail::critical(e, kind) && comp[e.from] == comp[e.to]) return false;
    }
    return true;
}

inline bool is_ft_tight(const SimpleProgram& p) { return is_tight(dep_graph(p), Semantics::FT); }
inline bool is_flp_tight(const SimpleProgram& p) { return is_tight(dep_graph(p), Semantics::FLP); }

// A nonempty K within X such that, in the subgraph induced by X, no edge
// leaves K for X \ K and no atom of K has an outgoing critical edge of the
// given kind. nullopt if there is none (the induced subgraph then has a cycle
// through a critical edge).
inline std::optional<AtomSet> find_critical_free_subset(const DependencyGraph& g, const AtomSet& X,
                                                        Semantics kind) {
    const std::size_t n = g.vertices.size();
    std::vector<bool> in_x(n, false);
    for (const auto& a : X) {
        auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), a);
        if (it != g.vertices.end() && *it == a) in_x[static_cast<std::size_t>(it - g.vertices.begin())] = true;
    }
    // Atoms of X outside the graph have no edges at all.
    for (const auto& a : X) {
        if (!std::binary_search(g.vertices.begin(), g.vertices.end(), a)) return AtomSet{a};
    }
    Adjacency adj(n);
    std::vector<bool> bad(n, false);  // some path from here uses a critical edge
    for (const auto& e : g.edges) {
        if (!in_x[e.from] || !in_x[e.to]) continue;
        adj[e.from].push_back(e.to);
        if (detail::critical(e, kind)) bad[e.from] = true;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_x[v] || bad[v]) continue;
            for (std::size_t w : adj[v]) {
                if (bad[w]) {
                    bad[v] = changed = true;
                    break;
                }
            }
        }
    }
    for (std::size_t b = 0; b < n; ++b) {
        if (!in_x[b] || bad[b]) continue;
        const auto reach = reachable_from(adj, b);
        AtomSet K{g.vertices[b]};
        for (std::size_t v = 0; v < n; ++v) {
            if (reach[v]) K.insert(g.vertices[v]);
        }
        return K;
    }
    return std::nullopt;
}

inline std::string to_dot(const DependencyGraph& g) {
    std::string s = "digraph dependencies {\n";
    for (const auto& v : g.vertices) s += "  \"" + to_string(v) + "\";\n";
    for (const auto& e : g.edges) {
        s += "  \"" + to_string(g.vertices[e.from]) + "\" -> \"" + to_string(g.vertices[e.to]) + "\"";
        if (e.ft_critical && e.flp_critical) {
            s += " [color=purple, style=bold]";
        } else if (e.ft_critical) {
            s += " [color=red, style=solid]";
        } else if (e.flp_critical) {
            s += " [color=blue, style=dashed]";
        }
        s += ";\n";
    }
    return s + "}\n";
}

// ---------------------------------------------------------------------------
// F^X__|_ and F^+

inline SimpleDisjunction subst_bot(const SimpleDisjunction& d, const AtomSet& X) {
    SimpleDisjunction out;
    for (const auto& l : d) {
        if (l.mode == ExtendedLiteral::Mode::Plain && X.contains(l.atom)) continue;
        out.insert(l);
    }
    return out;
}

// For a head (a disjunction of atoms).
inline AtomSet subst_bot(const AtomSet& head, const AtomSet& X) {
    AtomSet out;
    for (const auto& a : head) {
        if (!X.contains(a)) out.insert(a);
    }
    return out;
}

inline SimpleImplication subst_bot(const SimpleImplication& imp, const AtomSet& X) {
    for (const auto& a : imp.antecedent) {
        if (X.contains(a)) return imp;
    }
    return {imp.antecedent, subst_bot(imp.consequent, X)};
}

inline SimpleFormula subst_bot(const SimpleFormula& f, const AtomSet& X) {
    SimpleFormula out;
    for (const auto& imp : f) out.insert(subst_bot(imp, X));
    return out;
}

inline SimpleRule subst_bot(const SimpleRule& r, const AtomSet& X) {
    return {subst_bot(r.body, X), subst_bot(r.head, X)};
}

inline SimpleProgram subst_bot(const SimpleProgram& p, const AtomSet& X) {
    SimpleProgram out;
    for (const auto& r : p) out.insert(subst_bot(r, X));
    return out;
}

inline SimpleDisjunction plus_transform(const SimpleDisjunction& d) {
    SimpleDisjunction out;
    for (const auto& l : d) {
        out.insert(l.mode == ExtendedLiteral::Mode::NegNeg ? ExtendedLiteral::plain(l.atom) : l);
    }
    return out;
}

inline SimpleImplication plus_transform(const SimpleImplication& imp) {
    return {imp.antecedent, plus_transform(imp.consequent)};
}

inline SimpleFormula plus_transform(const SimpleFormula& f) {
    SimpleFormula out;
    for (const auto& imp : f) out.insert(plus_transform(imp));
    return out;
}

inline SimpleRule plus_transform(const SimpleRule& r) { return {plus_transform(r.body), r.head}; }

inline SimpleProgram plus_transform(const SimpleProgram& p) {
    SimpleProgram out;
    for (const auto& r : p) out.insert(plus_transform(r));
    return out;
}

// _|_-substitution on formulas that keep the layered shape of as_raw_formula,
// such as the FT reduct of a raw simple disjunction or formula. A reduct
// replaces every unsatisfied subformula by #false; those are left alone.
enum class SimpleLevel { Disjunction, Implication, Formula };

inline Formula subst_bot(const Formula& f, const AtomSet& X, SimpleLevel level) {
    auto shape_error = [&]() -> Error {
        return Error(ErrorKind::Shape, "not a layered simple formula: " + to_string(f));
    };
    switch (level) {
    case SimpleLevel::Disjunction: {
        if (f.kind() != Formula::Kind::Or) throw shape_error();
        std::vector<Formula> keep;
        for (const auto& c : f.children()) {
            if (c.is_atom() && X.contains(c.atom())) continue;
            keep.push_back(c);
        }
        return Formula::make_or(std::move(keep));
    }
    case SimpleLevel::Implication: {
        if (f.is_bottom()) return f;
        // The reduct of an antecedent that I does not satisfy is #false.
        if (f.kind() == Formula::Kind::Implies && f.antecedent().is_bottom()) return f;
        if (f.kind() != Formula::Kind::Implies || f.antecedent().kind() != Formula::Kind::And) {
            throw shape_error();
        }
        for (const auto& a : f.antecedent().children()) {
            if (a.is_atom() && X.contains(a.atom())) return f;
        }
        return Formula::implies(f.antecedent(),
                                subst_bot(f.consequent(), X, SimpleLevel::Disjunction));
    }
    case SimpleLevel::Formula: {
        if (f.is_bottom()) return f;
        if (f.kind() != Formula::Kind::And) throw shape_error();
        std::vector<Formula> cs;
        for (const auto& c : f.children()) cs.push_back(subst_bot(c, X, SimpleLevel::Implication));
        return Formula::make_and(std::move(cs));
    }
    }
    throw shape_error();
}

}  // namespace dualsm
