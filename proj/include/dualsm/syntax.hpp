#pragma once

// Concrete text syntax.
//
//   rule      ::= head? (":-" body)? "."
//   head      ::= atom ("|" atom)*
//   body      ::= bodylit ("," bodylit)*
//   bodylit   ::= "not"? aggregate | "not"? atom | term rel term
//   aggregate ::= ("#count"|"#sum"|"#min"|"#max") "{" terms? (":" literals)? "}" rel term
//   rel       ::= "=" | "!=" | "<" | ">" | "<=" | ">="
//
// Constants and functors match [a-z][A-Za-z0-9_]*, variables [A-Z_][A-Za-z0-9_]*.
// `%` starts a comment that runs to the end of the line.

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dualsm/ast.hpp"
#include "dualsm/error.hpp"

namespace dualsm {

namespace detail {

enum class Tok {
    Ident, Var, Int, Not,
    Count, Sum, Min, Max, Inf, Sup,
    LParen, RParen, LBrace, RBrace, Comma, Colon, Semicolon, Dot, Bar, If,
    Eq, Ne, Lt, Gt, Le, Ge,
    Plus, Minus, Star, Slash,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::uint64_t magnitude = 0;  // Int tokens
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                out.push_back(t);
                return out;
            }
            lex_one(t);
            out.push_back(std::move(t));
        }
    }

private:
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                advance();
            } else {
                return;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column_, msg); }

    void lex_one(Token& t) {
        const char c = peek();
        if (std::islower(static_cast<unsigned char>(c)) != 0) {
            while (ident_char(peek())) {
                t.text += peek();
                advance();
            }
            t.kind = t.text == "not" ? Tok::Not : Tok::Ident;
            return;
        }
        if (std::isupper(static_cast<unsigned char>(c)) != 0 || c == '_') {
            while (ident_char(peek())) {
                t.text += peek();
                advance();
            }
            t.kind = Tok::Var;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            std::uint64_t value = 0;
            while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
                const auto digit = static_cast<std::uint64_t>(peek() - '0');
                if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
                    fail("integer literal out of range");
                }
                value = value * 10 + digit;
                t.text += peek();
                advance();
            }
            if (value > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1) {
                fail("integer literal out of range");
            }
            t.kind = Tok::Int;
            t.magnitude = value;
            return;
        }
        if (c == '#') {
            advance();
            std::string word;
            while (ident_char(peek())) {
                word += peek();
                advance();
            }
            t.text = "#" + word;
            if (word == "count") t.kind = Tok::Count;
            else if (word == "sum") t.kind = Tok::Sum;
            else if (word == "min") t.kind = Tok::Min;
            else if (word == "max") t.kind = Tok::Max;
            else if (word == "inf") t.kind = Tok::Inf;
            else if (word == "sup") t.kind = Tok::Sup;
            else throw ParseError(t.line, t.column, "unknown directive or keyword '" + t.text + "'");
            return;
        }
        auto two = [&](char second) { return peek(1) == second; };
        auto take = [&](Tok kind, std::size_t n) {
            for (std::size_t i = 0; i < n; ++i) {
                t.text += peek();
                advance();
            }
            t.kind = kind;
        };
        switch (c) {
        case '(': return take(Tok::LParen, 1);
        case ')': return take(Tok::RParen, 1);
        case '{': return take(Tok::LBrace, 1);
        case '}': return take(Tok::RBrace, 1);
        case ',': return take(Tok::Comma, 1);
        case ';': return take(Tok::Semicolon, 1);
        case '.': return take(Tok::Dot, 1);
        case '|': return take(Tok::Bar, 1);
        case '+': return take(Tok::Plus, 1);
        case '-': return take(Tok::Minus, 1);
        case '*': return take(Tok::Star, 1);
        case '/': return take(Tok::Slash, 1);
        case '=': return take(Tok::Eq, 1);
        case ':': return two('-') ? take(Tok::If, 2) : take(Tok::Colon, 1);
        case '<': return two('=') ? take(Tok::Le, 2) : take(Tok::Lt, 1);
        case '>': return two('=') ? take(Tok::Ge, 2) : take(Tok::Gt, 1);
        case '!':
            if (two('=')) return take(Tok::Ne, 2);
            break;
        default:
            break;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        Program p;
        while (cur().kind != Tok::End) p.rules.push_back(rule());
        return p;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& next() const { return toks_[pos_ + 1 < toks_.size() ? pos_ + 1 : pos_]; }
    bool at(Tok k) const { return cur().kind == k; }

    Token eat() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = cur();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.column, msg + ", found " + found);
    }

    void expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        eat();
    }

    static bool is_rel(Tok k) {
        return k == Tok::Eq || k == Tok::Ne || k == Tok::Lt || k == Tok::Gt || k == Tok::Le ||
               k == Tok::Ge;
    }

    static bool is_aggregate(Tok k) {
        return k == Tok::Count || k == Tok::Sum || k == Tok::Min || k == Tok::Max;
    }

    Relation relation() {
        switch (eat().kind) {
        case Tok::Eq: return Relation::Eq;
        case Tok::Ne: return Relation::Ne;
        case Tok::Lt: return Relation::Lt;
        case Tok::Gt: return Relation::Gt;
        case Tok::Le: return Relation::Le;
        case Tok::Ge: return Relation::Ge;
        default: break;
        }
        --pos_;
        fail("expected comparison operator");
    }

    Rule rule() {
        Rule r;
        if (at(Tok::Dot)) fail("expected rule");
        if (!at(Tok::If)) {
            r.head.push_back(atom_from_term(term(), "head atom"));
            while (at(Tok::Bar)) {
                eat();
                r.head.push_back(atom_from_term(term(), "head atom"));
            }
        }
        if (at(Tok::If)) {
            eat();
            r.body.push_back(body_literal());
            while (at(Tok::Comma)) {
                eat();
                r.body.push_back(body_literal());
            }
        }
        expect(Tok::Dot, "'.' at end of rule");
        return r;
    }

    Atom atom_from_term(Term t, const char* what) {
        if (t.kind == Term::Kind::Symbol) return Atom{std::move(t.name), {}};
        if (t.kind == Term::Kind::Compound) return Atom{std::move(t.name), std::move(t.args)};
        fail(std::string("expected ") + what);
    }

    BodyLiteral body_literal() {
        if (at(Tok::Not)) {
            eat();
            if (is_aggregate(cur().kind)) {
                return AggregateLiteral{Polarity::Not, aggregate()};
            }
            return SymbolicLiteral{Polarity::Not, atom_from_term(term(), "atom after 'not'")};
        }
        if (is_aggregate(cur().kind)) return AggregateLiteral{Polarity::Pos, aggregate()};
        return std::visit([](auto&& l) -> BodyLiteral { return std::move(l); }, literal());
    }

    Literal literal() {
        if (at(Tok::Not)) {
            eat();
            return SymbolicLiteral{Polarity::Not, atom_from_term(term(), "atom after 'not'")};
        }
        if (!starts_term(cur().kind)) fail("expected literal");
        Term lhs = term();
        if (is_rel(cur().kind)) {
            Relation rel = relation();
            return ArithLiteral{rel, std::move(lhs), term()};
        }
        return SymbolicLiteral{Polarity::Pos, atom_from_term(std::move(lhs), "atom")};
    }

    AggregateAtom aggregate() {
        AggregateAtom agg;
        switch (eat().kind) {
        case Tok::Count: agg.function = AggregateFunction::Count; break;
        case Tok::Sum: agg.function = AggregateFunction::Sum; break;
        case Tok::Min: agg.function = AggregateFunction::Min; break;
        default: agg.function = AggregateFunction::Max; break;
        }
        expect(Tok::LBrace, "'{'");
        if (!at(Tok::Colon) && !at(Tok::RBrace)) {
            agg.tuple.push_back(term());
            while (at(Tok::Comma)) {
                eat();
                agg.tuple.push_back(term());
            }
        }
        if (at(Tok::Colon)) {
            eat();
            agg.conditions.push_back(literal());
            while (at(Tok::Comma)) {
                eat();
                agg.conditions.push_back(literal());
            }
        }
        if (at(Tok::Semicolon)) {
            fail("aggregates with multiple elements are not supported (one 't : L' per aggregate)");
        }
        expect(Tok::RBrace, "'}'");
        if (agg.tuple.empty() &&
            (agg.function == AggregateFunction::Min || agg.function == AggregateFunction::Max)) {
            fail("#min and #max need a nonempty tuple");
        }
        if (!is_rel(cur().kind)) fail("expected comparison operator after aggregate");
        agg.rel = relation();
        agg.bound = term();
        return agg;
    }

    static bool starts_term(Tok k) {
        return k == Tok::Ident || k == Tok::Var || k == Tok::Int || k == Tok::Inf ||
               k == Tok::Sup || k == Tok::LParen || k == Tok::Minus;
    }

    Term term() {
        Term lhs = product();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            const ArithOp op = eat().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
            lhs = Term::binop(op, std::move(lhs), product());
        }
        return lhs;
    }

    Term product() {
        Term lhs = unary();
        while (at(Tok::Star) || at(Tok::Slash)) {
            const ArithOp op = eat().kind == Tok::Star ? ArithOp::Mul : ArithOp::Div;
            lhs = Term::binop(op, std::move(lhs), unary());
        }
        return lhs;
    }

    Term unary() {
        if (!at(Tok::Minus)) return primary();
        eat();
        if (at(Tok::Int)) {
            const std::uint64_t m = eat().magnitude;
            if (m == static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1) {
                return Term::numeral(std::numeric_limits<std::int64_t>::min());
            }
            return Term::numeral(-static_cast<std::int64_t>(m));
        }
        Term operand = unary();
        if (operand.kind == Term::Kind::Numeral &&
            operand.number != std::numeric_limits<std::int64_t>::min()) {
            return Term::numeral(-operand.number);
        }
        return Term::binop(ArithOp::Sub, Term::numeral(0), std::move(operand));
    }

    Term primary() {
        switch (cur().kind) {
        case Tok::Int: {
            const auto& t = cur();
            if (t.magnitude > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                fail("integer literal out of range");
            }
            return Term::numeral(static_cast<std::int64_t>(eat().magnitude));
        }
        case Tok::Var: return Term::variable(eat().text);
        case Tok::Inf: eat(); return Term::inf();
        case Tok::Sup: eat(); return Term::sup();
        case Tok::LParen: {
            eat();
            Term inner = term();
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::Ident: {
            std::string name = eat().text;
            if (!at(Tok::LParen)) return Term::symbol(std::move(name));
            eat();
            std::vector<Term> args;
            args.push_back(term());
            while (at(Tok::Comma)) {
                eat();
                args.push_back(term());
            }
            expect(Tok::RParen, "')'");
            return Term::compound(std::move(name), std::move(args));
        }
        default:
            fail("expected term");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Program parse_program(std::string_view text) {
    return detail::Parser(detail::Lexer(text).run()).program();
}

// ---------------------------------------------------------------------------
// printing

inline const char* to_string(Relation rel) {
    switch (rel) {
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Lt: return "<";
    case Relation::Gt: return ">";
    case Relation::Le: return "<=";
    case Relation::Ge: return ">=";
    }
    return "?";
}

inline const char* to_string(AggregateFunction fn) {
    switch (fn) {
    case AggregateFunction::Count: return "#count";
    case AggregateFunction::Sum: return "#sum";
    case AggregateFunction::Min: return "#min";
    case AggregateFunction::Max: return "#max";
    }
    return "?";
}

namespace detail {

inline int precedence(const Term& t) {
    if (t.kind != Term::Kind::BinOp) return 3;
    return (t.op == ArithOp::Add || t.op == ArithOp::Sub) ? 1 : 2;
}

inline void print_term(const Term& t, std::string& out);

inline void print_operand(const Term& t, bool parens, std::string& out) {
    if (parens) out += '(';
    print_term(t, out);
    if (parens) out += ')';
}

inline void print_term(const Term& t, std::string& out) {
    switch (t.kind) {
    case Term::Kind::Numeral: out += std::to_string(t.number); return;
    case Term::Kind::Symbol:
    case Term::Kind::Variable: out += t.name; return;
    case Term::Kind::Inf: out += "#inf"; return;
    case Term::Kind::Sup: out += "#sup"; return;
    case Term::Kind::Compound:
        out += t.name;
        out += '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i != 0) out += ',';
            print_term(t.args[i], out);
        }
        out += ')';
        return;
    case Term::Kind::BinOp: {
        static constexpr const char* ops[] = {"+", "-", "*", "/"};
        const int p = precedence(t);
        const Term& l = t.args[0];
        const Term& r = t.args[1];
        // left associative: the right operand needs parentheses at equal precedence
        print_operand(l, precedence(l) < p, out);
        out += ops[static_cast<int>(t.op)];
        const bool negative = r.kind == Term::Kind::Numeral && r.number < 0;
        print_operand(r, precedence(r) <= p || negative, out);
        return;
    }
    }
}

}  // namespace detail

inline std::string to_string(const Term& t) {
    std::string out;
    detail::print_term(t, out);
    return out;
}

inline std::string to_string(const Atom& a) {
    std::string out = a.predicate;
    if (!a.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i != 0) out += ',';
            detail::print_term(a.args[i], out);
        }
        out += ')';
    }
    return out;
}

inline std::string to_string(const Literal& l) {
    if (const auto* s = std::get_if<SymbolicLiteral>(&l)) {
        return (s->polarity == Polarity::Not ? "not " : "") + to_string(s->atom);
    }
    const auto& a = std::get<ArithLiteral>(l);
    return to_string(a.lhs) + " " + to_string(a.rel) + " " + to_string(a.rhs);
}

inline std::string to_string(const AggregateAtom& agg) {
    std::string out = to_string(agg.function);
    out += '{';
    for (std::size_t i = 0; i < agg.tuple.size(); ++i) {
        if (i != 0) out += ',';
        out += to_string(agg.tuple[i]);
    }
    if (!agg.conditions.empty()) {
        out += agg.tuple.empty() ? ": " : " : ";
        for (std::size_t i = 0; i < agg.conditions.size(); ++i) {
            if (i != 0) out += ", ";
            out += to_string(agg.conditions[i]);
        }
    }
    out += "} ";
    out += to_string(agg.rel);
    out += ' ';
    out += to_string(agg.bound);
    return out;
}

inline std::string to_string(const BodyLiteral& b) {
    if (const auto* agg = std::get_if<AggregateLiteral>(&b)) {
        return (agg->polarity == Polarity::Not ? "not " : "") + to_string(agg->atom);
    }
    if (const auto* s = std::get_if<SymbolicLiteral>(&b)) return to_string(Literal{*s});
    return to_string(Literal{std::get<ArithLiteral>(b)});
}

inline std::string to_string(const Rule& r) {
    std::string out;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i != 0) out += " | ";
        out += to_string(r.head[i]);
    }
    if (!r.body.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i != 0) out += ", ";
            out += to_string(r.body[i]);
        }
    }
    out += '.';
    return out;
}

inline std::string pretty_print(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

}  // namespace dualsm
