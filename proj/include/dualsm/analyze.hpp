#pragma once

// Predicate dependency graph of a program, recursive and positive aggregate
// occurrences, and the syntactic condition under which FLP- and FT-stable
// models coincide: every recursive aggregate literal is positive.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dualsm/ast.hpp"
#include "dualsm/graph.hpp"
#include "dualsm/syntax.hpp"

namespace dualsm {

struct PredicateSymbol {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const PredicateSymbol&) const = default;
    bool operator==(const PredicateSymbol&) const = default;
};

inline PredicateSymbol predicate_of(const Atom& a) { return {a.predicate, a.args.size()}; }

inline std::string to_string(const PredicateSymbol& p) {
    return p.name + "/" + std::to_string(p.arity);
}

struct PredicateGraph {
    std::vector<PredicateSymbol> vertices;  // sorted
    std::set<std::pair<std::size_t, std::size_t>> edges;

    std::optional<std::size_t> index_of(const PredicateSymbol& p) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
        if (it == vertices.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - vertices.begin());
    }

    bool has_edge(const PredicateSymbol& p, const PredicateSymbol& q) const {
        auto a = index_of(p);
        auto b = index_of(q);
        return a && b && edges.contains({*a, *b});
    }

    Adjacency adjacency() const {
        Adjacency adj(vertices.size());
        for (const auto& [a, b] : edges) adj[a].push_back(b);
        return adj;
    }
};

namespace detail {

// Predicates of the atoms in body literal `b`, including aggregate conditions.
inline std::vector<PredicateSymbol> body_predicates(const BodyLiteral& b) {
    std::vector<PredicateSymbol> out;
    if (const auto* s = std::get_if<SymbolicLiteral>(&b)) {
        out.push_back(predicate_of(s->atom));
    } else if (const auto* agg = std::get_if<AggregateLiteral>(&b)) {
        for (const auto& l : agg->atom.conditions) {
            if (const auto* c = std::get_if<SymbolicLiteral>(&l)) out.push_back(predicate_of(c->atom));
        }
    }
    return out;
}

}  // namespace detail

// Edge p/n -> q/m when some rule has p/n in its head and q/m in its body.
// `aspcore_head_edges` adds edges between distinct head predicates of a rule,
// as in the ASP-Core definition; this only adds recursion.
inline PredicateGraph predicate_dep_graph(const Program& p, bool aspcore_head_edges = false) {
    PredicateGraph g;
    std::set<PredicateSymbol> preds;
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) preds.insert(predicate_of(h));
        for (const auto& b : r.body) {
            for (auto& q : detail::body_predicates(b)) preds.insert(std::move(q));
        }
    }
    g.vertices.assign(preds.begin(), preds.end());
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) {
            const std::size_t from = *g.index_of(predicate_of(h));
            for (const auto& b : r.body) {
                for (const auto& q : detail::body_predicates(b)) g.edges.insert({from, *g.index_of(q)});
            }
            if (!aspcore_head_edges) continue;
            for (const auto& h2 : r.head) {
                const std::size_t to = *g.index_of(predicate_of(h2));
                if (to != from) g.edges.insert({from, to});
            }
        }
    }
    return g;
}

inline bool is_positive_aggregate(const AggregateLiteral& lit) {
    if (lit.polarity != Polarity::Pos) return false;
    for (const auto& l : lit.atom.conditions) {
        const auto* s = std::get_if<SymbolicLiteral>(&l);
        if (s != nullptr && s->polarity == Polarity::Not) return false;
    }
    return true;
}

struct AggregateOccurrence {
    std::size_t rule_index = 0;  // 0-based
    std::size_t body_index = 0;  // position in the rule body
    std::size_t ordinal = 0;     // position among the aggregates of the rule
    AggregateLiteral literal;
    bool recursive = false;
    bool positive = false;
    // For a recursive occurrence: a shortest nonempty path from a predicate of
    // the aggregate to a head predicate of the rule.
    std::vector<PredicateSymbol> path;
};

namespace detail {

// Shortest path with at least one edge from some vertex in `sources` to some
// vertex in `targets`.
inline std::vector<std::size_t> witness_path(const Adjacency& adj, const std::set<std::size_t>& sources,
                                             const std::set<std::size_t>& targets) {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    const std::size_t n = adj.size();
    std::vector<std::size_t> parent(n, none);
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> queue;
    // Entries of the first layer remember their source through `first`.
    std::vector<std::size_t> first(n, none);
    for (std::size_t s : sources) {
        for (std::size_t w : adj[s]) {
            if (seen[w]) continue;
            seen[w] = true;
            first[w] = s;
            queue.push_back(w);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t v = queue[head];
        if (targets.contains(v)) {
            std::vector<std::size_t> path{v};
            std::size_t u = v;
            while (parent[u] != none) {
                u = parent[u];
                path.push_back(u);
            }
            path.push_back(first[u]);
            return {path.rbegin(), path.rend()};
        }
        for (std::size_t w : adj[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    return {};
}

}  // namespace detail

// Every aggregate literal of the program, with recursion and positivity.
inline std::vector<AggregateOccurrence> aggregate_occurrences(const Program& p,
                                                              bool aspcore_head_edges = false) {
    const auto g = predicate_dep_graph(p, aspcore_head_edges);
    const auto adj = g.adjacency();
    std::vector<AggregateOccurrence> out;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const auto& r = p.rules[i];
        std::set<std::size_t> heads;
        for (const auto& h : r.head) heads.insert(*g.index_of(predicate_of(h)));
        std::size_t ordinal = 0;
        for (std::size_t j = 0; j < r.body.size(); ++j) {
            const auto* agg = std::get_if<AggregateLiteral>(&r.body[j]);
            if (agg == nullptr) continue;
            AggregateOccurrence occ;
            occ.rule_index = i;
            occ.body_index = j;
            occ.ordinal = ordinal++;
            occ.literal = *agg;
            occ.positive = is_positive_aggregate(*agg);
            std::set<std::size_t> sources;
            for (const auto& q : detail::body_predicates(r.body[j])) sources.insert(*g.index_of(q));
            const auto path = detail::witness_path(adj, sources, heads);
            occ.recursive = !path.empty();
            for (std::size_t v : path) occ.path.push_back(g.vertices[v]);
            out.push_back(std::move(occ));
        }
    }
    return out;
}

inline std::vector<AggregateOccurrence> recursive_aggregate_occurrences(
    const Program& p, bool aspcore_head_edges = false) {
    auto all = aggregate_occurrences(p, aspcore_head_edges);
    std::vector<AggregateOccurrence> out;
    for (auto& o : all) {
        if (o.recursive) out.push_back(std::move(o));
    }
    return out;
}

struct TheoremVerdict {
    bool condition_holds = true;
    std::vector<AggregateOccurrence> violations;  // recursive and not positive
    std::size_t aggregate_count = 0;
    std::size_t recursive_count = 0;
};

inline TheoremVerdict check_theorem_condition(const Program& p, bool aspcore_head_edges = false) {
    TheoremVerdict v;
    for (auto& o : aggregate_occurrences(p, aspcore_head_edges)) {
        ++v.aggregate_count;
        if (!o.recursive) continue;
        ++v.recursive_count;
        if (!o.positive) v.violations.push_back(std::move(o));
    }
    v.condition_holds = v.violations.empty();
    return v;
}

inline std::string path_string(const std::vector<PredicateSymbol>& path) {
    std::string s;
    for (const auto& q : path) {
        if (!s.empty()) s += " -> ";
        s += to_string(q);
    }
    return s;
}

// Human-readable verdict: a summary line, then one line per violation.
inline std::string format_verdict(const TheoremVerdict& v) {
    const auto plural = [](std::size_t n, const char* word) {
        return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
    };
    std::string s;
    if (v.condition_holds) {
        s = "condition HOLDS (";
        s += v.recursive_count == 0 ? "no recursive aggregates"
                                    : plural(v.recursive_count, "recursive aggregate") + ", positive";
        s += ")\n";
        return s;
    }
    s = "condition FAILS (" + std::to_string(v.violations.size()) + " of " +
        plural(v.recursive_count, "recursive aggregate") + " not positive)\n";
    for (const auto& o : v.violations) {
        s += "  rule " + std::to_string(o.rule_index + 1) + ", aggregate " +
             std::to_string(o.ordinal + 1) + ": " + to_string(BodyLiteral{o.literal}) + "  via " +
             path_string(o.path) + "\n";
    }
    return s;
}

inline std::string to_dot(const PredicateGraph& g) {
    std::string s = "digraph predicates {\n";
    for (const auto& v : g.vertices) s += "  \"" + to_string(v) + "\";\n";
    for (const auto& [a, b] : g.edges) {
        s += "  \"" + to_string(g.vertices[a]) + "\" -> \"" + to_string(g.vertices[b]) + "\";\n";
    }
    return s + "}\n";
}

}  // namespace dualsm
