#pragma once

// Abstract syntax of programs: terms, literals, aggregate atoms, rules.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dualsm {

enum class ArithOp { Add, Sub, Mul, Div };
enum class Relation { Eq, Ne, Lt, Gt, Le, Ge };
enum class AggregateFunction { Count, Sum, Min, Max };
enum class Polarity { Pos, Not };

struct Term {
    enum class Kind { Numeral, Symbol, Variable, Inf, Sup, Compound, BinOp };

    Kind kind = Kind::Numeral;
    std::int64_t number = 0;
    std::string name;        // symbolic constant, variable name or functor
    ArithOp op = ArithOp::Add;
    std::vector<Term> args;  // compound arguments, or {lhs, rhs} of a BinOp

    static Term numeral(std::int64_t n) {
        Term t;
        t.kind = Kind::Numeral;
        t.number = n;
        return t;
    }
    static Term symbol(std::string name) {
        Term t;
        t.kind = Kind::Symbol;
        t.name = std::move(name);
        return t;
    }
    static Term variable(std::string name) {
        Term t;
        t.kind = Kind::Variable;
        t.name = std::move(name);
        return t;
    }
    static Term inf() {
        Term t;
        t.kind = Kind::Inf;
        return t;
    }
    static Term sup() {
        Term t;
        t.kind = Kind::Sup;
        return t;
    }
    static Term compound(std::string functor, std::vector<Term> args) {
        Term t;
        t.kind = Kind::Compound;
        t.name = std::move(functor);
        t.args = std::move(args);
        return t;
    }
    static Term binop(ArithOp op, Term lhs, Term rhs) {
        Term t;
        t.kind = Kind::BinOp;
        t.op = op;
        t.args.push_back(std::move(lhs));
        t.args.push_back(std::move(rhs));
        return t;
    }

    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool operator==(const Atom&) const = default;
};

struct SymbolicLiteral {
    Polarity polarity = Polarity::Pos;
    Atom atom;

    bool operator==(const SymbolicLiteral&) const = default;
};

struct ArithLiteral {
    Relation rel = Relation::Eq;
    Term lhs;
    Term rhs;

    bool operator==(const ArithLiteral&) const = default;
};

using Literal = std::variant<SymbolicLiteral, ArithLiteral>;

// alpha{t : L} rel bound, with a single aggregate element t : L.
struct AggregateAtom {
    AggregateFunction function = AggregateFunction::Count;
    std::vector<Term> tuple;
    std::vector<Literal> conditions;
    Relation rel = Relation::Eq;
    Term bound;

    bool operator==(const AggregateAtom&) const = default;
};

struct AggregateLiteral {
    Polarity polarity = Polarity::Pos;
    AggregateAtom atom;

    bool operator==(const AggregateLiteral&) const = default;
};

using BodyLiteral = std::variant<SymbolicLiteral, ArithLiteral, AggregateLiteral>;

// head_1 | ... | head_k :- body_1, ..., body_n.   (k, n >= 0)
struct Rule {
    std::vector<Atom> head;
    std::vector<BodyLiteral> body;

    bool operator==(const Rule&) const = default;
};

struct Program {
    std::vector<Rule> rules;

    bool operator==(const Program&) const = default;
};

// ---------------------------------------------------------------------------
// variables

// Appends the variables of `t` to `out` in order of first occurrence.
inline void collect_variables(const Term& t, std::vector<std::string>& out) {
    if (t.kind == Term::Kind::Variable) {
        for (const auto& v : out) {
            if (v == t.name) return;
        }
        out.push_back(t.name);
        return;
    }
    for (const auto& a : t.args) collect_variables(a, out);
}

inline void collect_variables(const Atom& a, std::vector<std::string>& out) {
    for (const auto& t : a.args) collect_variables(t, out);
}

inline void collect_variables(const Literal& l, std::vector<std::string>& out) {
    if (const auto* s = std::get_if<SymbolicLiteral>(&l)) {
        collect_variables(s->atom, out);
    } else {
        const auto& a = std::get<ArithLiteral>(l);
        collect_variables(a.lhs, out);
        collect_variables(a.rhs, out);
    }
}

// Variables of the aggregate element t : L (the bound is not included).
inline std::vector<std::string> element_variables(const AggregateAtom& agg) {
    std::vector<std::string> out;
    for (const auto& t : agg.tuple) collect_variables(t, out);
    for (const auto& l : agg.conditions) collect_variables(l, out);
    return out;
}

inline bool is_ground(const Term& t) {
    if (t.kind == Term::Kind::Variable) return false;
    for (const auto& a : t.args) {
        if (!is_ground(a)) return false;
    }
    return true;
}

struct VariableClassification {
    std::set<std::string> global;
    // body index of an aggregate literal -> its local variables
    std::map<std::size_t, std::set<std::string>> local;
};

// A variable is global in a rule if it occurs in a head atom, in a symbolic or
// arithmetic body literal, or in the bound of an aggregate literal. Any other
// variable is local to the aggregates whose element mentions it.
inline VariableClassification classify_variables(const Rule& rule) {
    std::vector<std::string> global;
    for (const auto& h : rule.head) collect_variables(h, global);
    for (const auto& b : rule.body) {
        if (const auto* s = std::get_if<SymbolicLiteral>(&b)) {
            collect_variables(s->atom, global);
        } else if (const auto* a = std::get_if<ArithLiteral>(&b)) {
            collect_variables(a->lhs, global);
            collect_variables(a->rhs, global);
        } else {
            collect_variables(std::get<AggregateLiteral>(b).atom.bound, global);
        }
    }
    VariableClassification result;
    result.global.insert(global.begin(), global.end());
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        const auto* agg = std::get_if<AggregateLiteral>(&rule.body[i]);
        if (agg == nullptr) continue;
        auto& locals = result.local[i];
        for (auto& v : element_variables(agg->atom)) {
            if (!result.global.contains(v)) locals.insert(std::move(v));
        }
    }
    return result;
}

inline std::size_t aggregate_count(const Program& p) {
    std::size_t n = 0;
    for (const auto& r : p.rules) {
        for (const auto& b : r.body) {
            if (std::holds_alternative<AggregateLiteral>(b)) ++n;
        }
    }
    return n;
}

}  // namespace dualsm
