#pragma once

#include <initializer_list>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "dualsm/dualsm.hpp"

namespace dualsm::test {

inline GroundAtom atom(const std::string& text) { return parse_ground_atom(text); }

inline Formula at(const std::string& text) { return Formula::atom(atom(text)); }

inline Interpretation interp(std::initializer_list<const char*> atoms) {
    Interpretation I;
    for (const char* a : atoms) I.insert(atom(a));
    return I;
}

// Model lists written as {{}, {"p"}}.
inline std::vector<Interpretation> models(std::initializer_list<std::initializer_list<const char*>> ms) {
    std::vector<Interpretation> out;
    for (const auto& m : ms) out.push_back(interp(m));
    sort_canonical(out);
    return out;
}

inline GroundingConfig small_config(std::int64_t lo = 0, std::int64_t hi = 1) {
    GroundingConfig cfg;
    cfg.int_lo = lo;
    cfg.int_hi = hi;
    cfg.include_inf_sup = false;
    return cfg;
}

inline std::vector<Interpretation> solve_text(const std::string& text, Semantics s, Translation t,
                                              const GroundingConfig& cfg = {}) {
    SolveOptions o;
    o.grounding = cfg;
    return solve(parse_program(text), s, t, o);
}

inline ExtendedLiteral lit(const std::string& a) { return ExtendedLiteral::plain(atom(a)); }
inline ExtendedLiteral neg(const std::string& a) { return ExtendedLiteral::neg(atom(a)); }
inline ExtendedLiteral negneg(const std::string& a) { return ExtendedLiteral::negneg(atom(a)); }

inline AtomSet atoms(std::initializer_list<const char*> as) {
    AtomSet out;
    for (const char* a : as) out.insert(atom(a));
    return out;
}

}  // namespace dualsm::test

namespace dualsm {

// Readable gtest output.
inline void PrintTo(const Formula& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(const Value& v, std::ostream* os) { *os << to_string(v); }

}  // namespace dualsm
