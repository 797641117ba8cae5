#pragma once

// Finitary propositional formulas over ground atoms, satisfaction, the FLP
// and FT reducts, and brute-force stable model enumeration.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dualsm/error.hpp"
#include "dualsm/terms.hpp"

namespace dualsm {

using Interpretation = std::set<GroundAtom>;

// Immutable formula handle. Conjunctions and disjunctions are over sets: the
// children are kept sorted in canonical order with duplicates removed.
// True is the empty conjunction, false the empty disjunction, and a negation
// ~F is the implication F -> false.
class Formula {
public:
    enum class Kind : std::uint8_t { Atom, And, Or, Implies };

    Formula() : Formula(make_and({})) {}

    static Formula atom(GroundAtom a) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Atom;
        n->atom = std::move(a);
        return Formula(std::move(n));
    }
    static Formula make_and(std::vector<Formula> children) {
        return junction(Kind::And, std::move(children));
    }
    static Formula make_or(std::vector<Formula> children) {
        return junction(Kind::Or, std::move(children));
    }
    static Formula implies(Formula antecedent, Formula consequent) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Implies;
        n->children.push_back(std::move(antecedent));
        n->children.push_back(std::move(consequent));
        return Formula(std::move(n));
    }
    static Formula top() { return make_and({}); }
    static Formula bottom() { return make_or({}); }
    static Formula negation(Formula f) { return implies(std::move(f), bottom()); }

    Kind kind() const noexcept { return node_->kind; }
    bool is_atom() const noexcept { return kind() == Kind::Atom; }
    bool is_top() const noexcept { return kind() == Kind::And && node_->children.empty(); }
    bool is_bottom() const noexcept { return kind() == Kind::Or && node_->children.empty(); }
    bool is_negation() const noexcept {
        return kind() == Kind::Implies && node_->children[1].is_bottom();
    }

    const GroundAtom& atom() const noexcept { return node_->atom; }
    const std::vector<Formula>& children() const noexcept { return node_->children; }
    const Formula& antecedent() const noexcept { return node_->children[0]; }
    const Formula& consequent() const noexcept { return node_->children[1]; }

    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
        if (a.node_ == b.node_) return std::strong_ordering::equal;
        if (auto c = a.kind() <=> b.kind(); c != 0) return c;
        if (a.kind() == Kind::Atom) return a.atom() <=> b.atom();
        const auto& x = a.children();
        const auto& y = b.children();
        const std::size_t n = std::min(x.size(), y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (auto c = x[i] <=> y[i]; c != 0) return c;
        }
        return x.size() <=> y.size();
    }
    friend bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

    // Node identity, for memoization.
    const void* id() const noexcept { return node_.get(); }

private:
    struct Node {
        Kind kind = Kind::And;
        GroundAtom atom;
        std::vector<Formula> children;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Formula junction(Kind k, std::vector<Formula> children) {
        std::sort(children.begin(), children.end());
        children.erase(std::unique(children.begin(), children.end()), children.end());
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->children = std::move(children);
        return Formula(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

// Conjunction and disjunction that return the single member of a singleton
// set instead of wrapping it.
inline Formula conjoin(std::vector<Formula> fs) {
    auto f = Formula::make_and(std::move(fs));
    return f.children().size() == 1 ? f.children().front() : f;
}

inline Formula disjoin(std::vector<Formula> fs) {
    auto f = Formula::make_or(std::move(fs));
    return f.children().size() == 1 ? f.children().front() : f;
}

inline std::string to_string(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Atom: return to_string(f.atom());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        const bool conj = f.kind() == Formula::Kind::And;
        if (f.children().empty()) return conj ? "#true" : "#false";
        std::string s = "(";
        for (std::size_t i = 0; i < f.children().size(); ++i) {
            if (i != 0) s += conj ? " & " : " | ";
            s += to_string(f.children()[i]);
        }
        return s + ")";
    }
    case Formula::Kind::Implies:
        if (f.is_negation()) return "~" + to_string(f.antecedent());
        return "(" + to_string(f.antecedent()) + " -> " + to_string(f.consequent()) + ")";
    }
    return {};
}

inline void collect_atoms(const Formula& f, std::set<GroundAtom>& out) {
    if (f.is_atom()) {
        out.insert(f.atom());
        return;
    }
    for (const auto& c : f.children()) collect_atoms(c, out);
}

inline std::set<GroundAtom> atoms_of(std::span<const Formula> fs) {
    std::set<GroundAtom> out;
    for (const auto& f : fs) collect_atoms(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// satisfaction and reducts

inline bool satisfies(const Interpretation& I, const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Atom: return I.contains(f.atom());
    case Formula::Kind::And:
        return std::all_of(f.children().begin(), f.children().end(),
                           [&](const Formula& g) { return satisfies(I, g); });
    case Formula::Kind::Or:
        return std::any_of(f.children().begin(), f.children().end(),
                           [&](const Formula& g) { return satisfies(I, g); });
    case Formula::Kind::Implies:
        return !satisfies(I, f.antecedent()) || satisfies(I, f.consequent());
    }
    return false;
}

inline bool satisfies(const Interpretation& I, std::span<const Formula> fs) {
    return std::all_of(fs.begin(), fs.end(), [&](const Formula& f) { return satisfies(I, f); });
}

// True if `f` is an atom or a disjunction of atoms.
inline bool is_atom_disjunction(const Formula& f) {
    if (f.is_atom()) return true;
    if (f.kind() != Formula::Kind::Or) return false;
    return std::all_of(f.children().begin(), f.children().end(),
                       [](const Formula& g) { return g.is_atom(); });
}

inline void require_flp_shape(std::span<const Formula> fs) {
    for (const auto& f : fs) {
        if (f.kind() != Formula::Kind::Implies || !is_atom_disjunction(f.consequent())) {
            throw Error(ErrorKind::Shape,
                        "FLP reduct needs implications with a disjunction of atoms as "
                        "consequent: " + to_string(f));
        }
    }
}

// Members G -> H of `fs` whose antecedent G is satisfied by I.
inline std::vector<Formula> flp_reduct(std::span<const Formula> fs, const Interpretation& I) {
    require_flp_shape(fs);
    std::vector<Formula> out;
    for (const auto& f : fs) {
        if (satisfies(I, f.antecedent())) out.push_back(f);
    }
    return out;
}

inline Formula ft_reduct(const Formula& f, const Interpretation& I) {
    if (!satisfies(I, f)) return Formula::bottom();
    switch (f.kind()) {
    case Formula::Kind::Atom: return f;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> cs;
        cs.reserve(f.children().size());
        for (const auto& c : f.children()) cs.push_back(ft_reduct(c, I));
        return f.kind() == Formula::Kind::And ? Formula::make_and(std::move(cs))
                                              : Formula::make_or(std::move(cs));
    }
    case Formula::Kind::Implies:
        return Formula::implies(ft_reduct(f.antecedent(), I), ft_reduct(f.consequent(), I));
    }
    return Formula::bottom();
}

inline std::vector<Formula> ft_reduct(std::span<const Formula> fs, const Interpretation& I) {
    std::vector<Formula> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(ft_reduct(f, I));
    return out;
}

// ---------------------------------------------------------------------------
// compiled evaluation over bitmask interpretations

namespace detail {

// Formulas flattened into a node array (children before parents) with atoms
// numbered by their position in the alphabet. Atoms outside the alphabet are
// false in every interpretation considered.
class Circuit {
public:
    Circuit(std::span<const Formula> roots, std::span<const GroundAtom> alphabet) {
        for (std::size_t i = 0; i < alphabet.size(); ++i) index_.emplace(alphabet[i], i);
        for (const auto& r : roots) {
            const int id = add(r);
            roots_.push_back(id);
            antecedents_.push_back(r.kind() == Formula::Kind::Implies
                                       ? static_cast<int>(nodes_[id].a)
                                       : -1);
        }
        value_.resize(nodes_.size());
        sat_i_.resize(nodes_.size());
    }

    std::size_t root_count() const { return roots_.size(); }

    // Classical satisfaction of every root by J.
    bool all(std::uint64_t J) {
        eval_classical(J, value_);
        for (int r : roots_) {
            if (!value_[r]) return false;
        }
        return true;
    }

    // Fills sat_i_ for candidate I; then ft_all(J) decides J |= FT(roots, I).
    void prepare_ft(std::uint64_t I) {
        eval_classical(I, sat_i_);
        ft_i_ = I;
    }

    bool ft_all(std::uint64_t J) {
        const std::uint64_t both = ft_i_ & J;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto& n = nodes_[i];
            switch (n.kind) {
            case Formula::Kind::Atom:
                value_[i] = n.atom >= 0 && ((both >> n.atom) & 1U) != 0;
                break;
            case Formula::Kind::And: value_[i] = all_children(n); break;
            case Formula::Kind::Or: value_[i] = any_child(n); break;
            case Formula::Kind::Implies:
                value_[i] = sat_i_[i] && (!value_[n.a] || value_[n.b]);
                break;
            }
        }
        for (int r : roots_) {
            if (!value_[r]) return false;
        }
        return true;
    }

    // Roots whose antecedent I satisfies (the FLP reduct), as indices.
    std::vector<int> flp_members(std::uint64_t I) {
        eval_classical(I, sat_i_);
        std::vector<int> out;
        for (std::size_t k = 0; k < roots_.size(); ++k) {
            if (sat_i_[antecedents_[k]]) out.push_back(roots_[k]);
        }
        return out;
    }

    bool all_of(std::span<const int> ids, std::uint64_t J) {
        eval_classical(J, value_);
        for (int r : ids) {
            if (!value_[r]) return false;
        }
        return true;
    }

private:
    struct Node {
        Formula::Kind kind;
        int atom = -1;
        std::size_t a = 0;  // Implies: antecedent; junction: first child slot
        std::size_t b = 0;  // Implies: consequent; junction: one past last slot
    };

    int add(const Formula& f) {
        if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
        Node n{f.kind()};
        switch (f.kind()) {
        case Formula::Kind::Atom: {
            auto it = index_.find(f.atom());
            n.atom = it == index_.end() ? -1 : static_cast<int>(it->second);
            break;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<int> ids;
            ids.reserve(f.children().size());
            for (const auto& c : f.children()) ids.push_back(add(c));
            n.a = slots_.size();
            slots_.insert(slots_.end(), ids.begin(), ids.end());
            n.b = slots_.size();
            break;
        }
        case Formula::Kind::Implies:
            n.a = static_cast<std::size_t>(add(f.antecedent()));
            n.b = static_cast<std::size_t>(add(f.consequent()));
            break;
        }
        nodes_.push_back(n);
        const int id = static_cast<int>(nodes_.size() - 1);
        memo_.emplace(f.id(), id);
        keep_.push_back(f);
        return id;
    }

    bool all_children(const Node& n) const {
        for (std::size_t s = n.a; s < n.b; ++s) {
            if (!value_[slots_[s]]) return false;
        }
        return true;
    }
    bool any_child(const Node& n) const {
        for (std::size_t s = n.a; s < n.b; ++s) {
            if (value_[slots_[s]]) return true;
        }
        return false;
    }

    void eval_classical(std::uint64_t J, std::vector<char>& out) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto& n = nodes_[i];
            bool v = false;
            switch (n.kind) {
            case Formula::Kind::Atom: v = n.atom >= 0 && ((J >> n.atom) & 1U) != 0; break;
            case Formula::Kind::And:
                v = true;
                for (std::size_t s = n.a; s < n.b && v; ++s) v = out[slots_[s]] != 0;
                break;
            case Formula::Kind::Or:
                for (std::size_t s = n.a; s < n.b && !v; ++s) v = out[slots_[s]] != 0;
                break;
            case Formula::Kind::Implies: v = !out[n.a] || out[n.b]; break;
            }
            out[i] = v;
        }
    }

    std::map<GroundAtom, std::size_t> index_;
    std::map<const void*, int> memo_;
    std::vector<Formula> keep_;  // keeps memo_ keys alive
    std::vector<Node> nodes_;
    std::vector<int> slots_;
    std::vector<int> roots_;
    std::vector<int> antecedents_;
    std::vector<char> value_;
    std::vector<char> sat_i_;
    std::uint64_t ft_i_ = 0;
};

inline Interpretation decode(std::uint64_t mask, std::span<const GroundAtom> alphabet) {
    Interpretation I;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (((mask >> i) & 1U) != 0) I.insert(alphabet[i]);
    }
    return I;
}

inline std::uint64_t encode(const Interpretation& I, std::span<const GroundAtom> alphabet) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (I.contains(alphabet[i])) mask |= std::uint64_t{1} << i;
    }
    return mask;
}

}  // namespace detail

// Size first, then lexicographic in atom order.
inline bool canonical_less(const Interpretation& a, const Interpretation& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void sort_canonical(std::vector<Interpretation>& models) {
    std::sort(models.begin(), models.end(), canonical_less);
}

enum class Semantics { FLP, FT };

inline const char* to_string(Semantics s) { return s == Semantics::FLP ? "flp" : "ft"; }

inline constexpr std::size_t default_max_candidate_atoms = 18;

// All I within `alphabet` that are minimal models of their own reduct.
inline std::vector<Interpretation> stable_models(std::span<const Formula> fs, Semantics semantics,
                                                 std::span<const GroundAtom> alphabet,
                                                 std::size_t max_atoms = default_max_candidate_atoms) {
    if (alphabet.size() > max_atoms || alphabet.size() > 62) {
        throw Error(ErrorKind::AlphabetTooLarge,
                    "candidate alphabet has " + std::to_string(alphabet.size()) +
                        " atoms, limit is " + std::to_string(std::min<std::size_t>(max_atoms, 62)));
    }
    if (semantics == Semantics::FLP) require_flp_shape(fs);
    detail::Circuit circuit(fs, alphabet);
    std::vector<Interpretation> out;
    const std::uint64_t limit = std::uint64_t{1} << alphabet.size();
    for (std::uint64_t I = 0; I < limit; ++I) {
        if (!circuit.all(I)) continue;
        bool minimal = true;
        if (semantics == Semantics::FT) {
            circuit.prepare_ft(I);
            for (std::uint64_t J = (I - 1) & I; I != 0; J = (J - 1) & I) {
                if (circuit.ft_all(J)) {
                    minimal = false;
                    break;
                }
                if (J == 0) break;
            }
        } else {
            const auto members = circuit.flp_members(I);
            for (std::uint64_t J = (I - 1) & I; I != 0; J = (J - 1) & I) {
                if (circuit.all_of(members, J)) {
                    minimal = false;
                    break;
                }
                if (J == 0) break;
            }
        }
        if (minimal) out.push_back(detail::decode(I, alphabet));
    }
    sort_canonical(out);
    return out;
}

inline bool classically_equivalent(const Formula& f, const Formula& g,
                                   std::span<const GroundAtom> alphabet) {
    if (alphabet.size() > 20) {
        throw Error(ErrorKind::AlphabetTooLarge,
                    "truth table over " + std::to_string(alphabet.size()) + " atoms, limit is 20");
    }
    const Formula roots[] = {f, g};
    detail::Circuit cf(std::span<const Formula>(roots, 1), alphabet);
    detail::Circuit cg(std::span<const Formula>(roots + 1, 1), alphabet);
    const std::uint64_t limit = std::uint64_t{1} << alphabet.size();
    for (std::uint64_t I = 0; I < limit; ++I) {
        if (cf.all(I) != cg.all(I)) return false;
    }
    return true;
}

inline bool classically_equivalent(const Formula& f, const Formula& g) {
    const Formula both[] = {f, g};
    const auto atoms = atoms_of(both);
    const std::vector<GroundAtom> alphabet(atoms.begin(), atoms.end());
    return classically_equivalent(f, g, alphabet);
}

}  // namespace dualsm
