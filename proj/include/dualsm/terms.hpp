#pragma once

// Precomputed terms, their total order, evaluation of ground terms and the
// aggregate functions on finite sets of tuples.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualsm/ast.hpp"
#include "dualsm/error.hpp"

namespace dualsm {

// A ground term free of arithmetic operators.
//
// Order: #inf < numerals (by value) < symbolic constants (by name)
//        < compound terms (functor, arity, arguments) < #sup.
class Value {
public:
    // Declaration order is the order between the classes.
    enum class Kind : std::uint8_t { Inf, Num, Sym, Comp, Sup };

    Value() = default;

    static Value inf() { return Value(Kind::Inf); }
    static Value sup() { return Value(Kind::Sup); }
    static Value num(std::int64_t n) {
        Value v(Kind::Num);
        v.number_ = n;
        return v;
    }
    static Value sym(std::string name) {
        Value v(Kind::Sym);
        v.name_ = std::move(name);
        return v;
    }
    static Value comp(std::string functor, std::vector<Value> args) {
        Value v(Kind::Comp);
        v.name_ = std::move(functor);
        v.args_ = std::move(args);
        return v;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_num() const noexcept { return kind_ == Kind::Num; }
    std::int64_t number() const noexcept { return number_; }
    const std::string& name() const noexcept { return name_; }
    const std::vector<Value>& args() const noexcept { return args_; }

    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        switch (a.kind_) {
        case Kind::Inf:
        case Kind::Sup:
            return std::strong_ordering::equal;
        case Kind::Num:
            return a.number_ <=> b.number_;
        case Kind::Sym:
            return a.name_ <=> b.name_;
        case Kind::Comp:
            if (auto c = a.name_ <=> b.name_; c != 0) return c;
            if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
            for (std::size_t i = 0; i < a.args_.size(); ++i) {
                if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
            }
            return std::strong_ordering::equal;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

private:
    explicit Value(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Num;
    std::int64_t number_ = 0;
    std::string name_;
    std::vector<Value> args_;
};

inline std::strong_ordering compare(const Value& a, const Value& b) { return a <=> b; }

inline std::string to_string(const Value& v) {
    switch (v.kind()) {
    case Value::Kind::Inf: return "#inf";
    case Value::Kind::Sup: return "#sup";
    case Value::Kind::Num: return std::to_string(v.number());
    case Value::Kind::Sym: return v.name();
    case Value::Kind::Comp: {
        std::string s = v.name() + "(";
        for (std::size_t i = 0; i < v.args().size(); ++i) {
            if (i != 0) s += ",";
            s += to_string(v.args()[i]);
        }
        return s + ")";
    }
    }
    return {};
}

inline Term to_term(const Value& v) {
    switch (v.kind()) {
    case Value::Kind::Inf: return Term::inf();
    case Value::Kind::Sup: return Term::sup();
    case Value::Kind::Num: return Term::numeral(v.number());
    case Value::Kind::Sym: return Term::symbol(v.name());
    case Value::Kind::Comp: {
        std::vector<Term> args;
        args.reserve(v.args().size());
        for (const auto& a : v.args()) args.push_back(to_term(a));
        return Term::compound(v.name(), std::move(args));
    }
    }
    return {};
}

// An element of the ground signature: p(v1, ..., vn) over precomputed terms.
struct GroundAtom {
    std::string predicate;
    std::vector<Value> args;

    friend std::strong_ordering operator<=>(const GroundAtom& a, const GroundAtom& b) {
        if (auto c = a.predicate <=> b.predicate; c != 0) return c;
        if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const GroundAtom& a, const GroundAtom& b) { return (a <=> b) == 0; }
};

inline std::string to_string(const GroundAtom& a) {
    if (a.args.empty()) return a.predicate;
    std::string s = a.predicate + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i != 0) s += ",";
        s += to_string(a.args[i]);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// evaluation

namespace detail {

[[noreturn]] inline void overflow(const char* what) {
    throw Error(ErrorKind::Overflow, std::string("integer overflow in ") + what);
}

// floor(n / d) for d != 0
inline std::int64_t floor_div(std::int64_t n, std::int64_t d) {
    if (n == std::numeric_limits<std::int64_t>::min() && d == -1) overflow("division");
    std::int64_t q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return q;
}

}  // namespace detail

// Value of a ground term, or nullopt when the term is not well-formed.
// Throws Error(Overflow) when an operation leaves the 64-bit range.
inline std::optional<Value> eval_term(const Term& t) {
    switch (t.kind) {
    case Term::Kind::Numeral: return Value::num(t.number);
    case Term::Kind::Symbol: return Value::sym(t.name);
    case Term::Kind::Inf: return Value::inf();
    case Term::Kind::Sup: return Value::sup();
    case Term::Kind::Variable:
        throw Error(ErrorKind::Invariant, "eval_term: variable " + t.name + " in ground term");
    case Term::Kind::Compound: {
        std::vector<Value> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) {
            auto v = eval_term(a);
            if (!v) return std::nullopt;
            args.push_back(std::move(*v));
        }
        return Value::comp(t.name, std::move(args));
    }
    case Term::Kind::BinOp: {
        auto l = eval_term(t.args[0]);
        if (!l || !l->is_num()) return std::nullopt;
        auto r = eval_term(t.args[1]);
        if (!r || !r->is_num()) return std::nullopt;
        const std::int64_t a = l->number();
        const std::int64_t b = r->number();
        std::int64_t out = 0;
        switch (t.op) {
        case ArithOp::Add:
            if (__builtin_add_overflow(a, b, &out)) detail::overflow("addition");
            break;
        case ArithOp::Sub:
            if (__builtin_sub_overflow(a, b, &out)) detail::overflow("subtraction");
            break;
        case ArithOp::Mul:
            if (__builtin_mul_overflow(a, b, &out)) detail::overflow("multiplication");
            break;
        case ArithOp::Div:
            if (b == 0) return std::nullopt;
            out = detail::floor_div(a, b);
            break;
        }
        return Value::num(out);
    }
    }
    return std::nullopt;
}

inline bool holds(Relation rel, const Value& a, const Value& b) {
    const auto c = a <=> b;
    switch (rel) {
    case Relation::Eq: return c == 0;
    case Relation::Ne: return c != 0;
    case Relation::Lt: return c < 0;
    case Relation::Gt: return c > 0;
    case Relation::Le: return c <= 0;
    case Relation::Ge: return c >= 0;
    }
    return false;
}

// Truth of a closed arithmetic literal, or nullopt if it is not well-formed.
inline std::optional<bool> eval_arith(const ArithLiteral& lit) {
    auto l = eval_term(lit.lhs);
    if (!l) return std::nullopt;
    auto r = eval_term(lit.rhs);
    if (!r) return std::nullopt;
    return holds(lit.rel, *l, *r);
}

// ---------------------------------------------------------------------------
// aggregate functions

using TermTuple = std::vector<Value>;

inline std::int64_t weight(const TermTuple& t) {
    if (t.empty() || !t.front().is_num()) return 0;
    return t.front().number();
}

// Aggregate function applied to a finite set of tuples. min and max look at
// the first members of the tuples; min of the empty set is #sup, max is #inf.
inline Value apply_aggregate(AggregateFunction fn, const std::set<TermTuple>& tuples) {
    switch (fn) {
    case AggregateFunction::Count:
        return Value::num(static_cast<std::int64_t>(tuples.size()));
    case AggregateFunction::Sum: {
        std::int64_t sum = 0;
        for (const auto& t : tuples) {
            if (__builtin_add_overflow(sum, weight(t), &sum)) detail::overflow("#sum");
        }
        return Value::num(sum);
    }
    case AggregateFunction::Min:
    case AggregateFunction::Max: {
        const bool is_min = fn == AggregateFunction::Min;
        if (tuples.empty()) return is_min ? Value::sup() : Value::inf();
        const Value* best = nullptr;
        for (const auto& t : tuples) {
            if (t.empty()) continue;
            if (best == nullptr || (is_min ? t.front() < *best : *best < t.front())) {
                best = &t.front();
            }
        }
        if (best == nullptr) {
            throw Error(ErrorKind::Unsupported,
                        std::string(is_min ? "#min" : "#max") + " applied to empty tuples only");
        }
        return *best;
    }
    }
    return Value::num(0);
}

}  // namespace dualsm
