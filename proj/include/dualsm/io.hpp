#pragma once

// JSON forms of formulas, model lists, ground programs, analysis verdicts,
// generator profiles and fuzz reports. Every top-level document carries
// "schema": "dualsm/1".

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dualsm/analyze.hpp"
#include "dualsm/error.hpp"
#include "dualsm/harness.hpp"
#include "dualsm/logic.hpp"
#include "dualsm/syntax.hpp"
#include "dualsm/translate.hpp"

namespace dualsm {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "dualsm/1";

inline Json document() {
    Json j;
    j["schema"] = schema_version;
    return j;
}

inline Json to_json(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Atom: return Json{{"atom", to_string(f.atom())}};
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        Json cs = Json::array();
        for (const auto& c : f.children()) cs.push_back(to_json(c));
        return Json{{f.kind() == Formula::Kind::And ? "and" : "or", cs}};
    }
    case Formula::Kind::Implies:
        return Json{{"impl", Json::array({to_json(f.antecedent()), to_json(f.consequent())})}};
    }
    return {};
}

// Parses "p", "p(1,a)", "p(f(#inf),-2)" into a ground atom.
inline GroundAtom parse_ground_atom(std::string_view text) {
    const auto p = parse_program(std::string(text) + ".");
    if (p.rules.size() != 1 || p.rules[0].head.size() != 1 || !p.rules[0].body.empty()) {
        throw Error(ErrorKind::Syntax, "not an atom: " + std::string(text));
    }
    auto a = ground_atom(p.rules[0].head[0]);
    if (!a) throw Error(ErrorKind::Syntax, "not a ground atom: " + std::string(text));
    return *a;
}

inline Formula formula_from_json(const Json& j) {
    if (!j.is_object() || j.size() != 1) throw Error(ErrorKind::Syntax, "bad formula: " + j.dump());
    const auto& [key, val] = *j.items().begin();
    if (key == "atom") return Formula::atom(parse_ground_atom(val.get<std::string>()));
    if (key == "and" || key == "or") {
        std::vector<Formula> cs;
        for (const auto& c : val) cs.push_back(formula_from_json(c));
        return key == "and" ? Formula::make_and(std::move(cs)) : Formula::make_or(std::move(cs));
    }
    if (key == "impl" && val.is_array() && val.size() == 2) {
        return Formula::implies(formula_from_json(val[0]), formula_from_json(val[1]));
    }
    throw Error(ErrorKind::Syntax, "bad formula: " + j.dump());
}

inline Json to_json(const Interpretation& I) {
    Json j = Json::array();
    for (const auto& a : I) j.push_back(to_string(a));
    return j;
}

inline Json to_json(const std::vector<Interpretation>& models) {
    Json j = Json::array();
    for (const auto& m : models) j.push_back(to_json(m));
    return j;
}

inline Json to_json(const GroundProgram& gp) {
    Json j = document();
    j["translation"] = to_string(gp.translation);
    Json domain = Json::array();
    for (const auto& v : gp.domain) domain.push_back(to_string(v));
    j["domain"] = domain;
    Json formulas = Json::array();
    for (const auto& f : gp.formulas()) formulas.push_back(to_json(f));
    j["formulas"] = formulas;
    return j;
}

inline Json to_json(const TheoremVerdict& v) {
    Json j = document();
    j["condition_holds"] = v.condition_holds;
    j["aggregates"] = v.aggregate_count;
    j["recursive_aggregates"] = v.recursive_count;
    Json vs = Json::array();
    for (const auto& o : v.violations) {
        Json path = Json::array();
        for (const auto& q : o.path) path.push_back(to_string(q));
        vs.push_back({{"rule", o.rule_index + 1},
                      {"aggregate", o.ordinal + 1},
                      {"literal", to_string(BodyLiteral{o.literal})},
                      {"path", path}});
    }
    j["violations"] = vs;
    return j;
}

inline Json to_json(const DiffReport& r) {
    Json j = document();
    j["program"] = r.program;
    j["condition_holds"] = r.verdict.condition_holds;
    j["flp"] = to_json(r.flp);
    j["ft"] = to_json(r.ft);
    j["agree"] = r.agree;
    j["classification"] = to_string(r.classification);
    j["failure"] = r.failure();
    return j;
}

// Profile files use the field names of GenProfile; predicates are written
// "name/arity" and the integer range as [lo, hi]. Missing keys keep their
// defaults.
inline GenProfile profile_from_json(const Json& j) {
    GenProfile p;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    try {
        get("seed", p.seed);
        get("max_rules", p.max_rules);
        get("max_body", p.max_body);
        get("max_head", p.max_head);
        get("max_aggregates", p.max_aggregates);
        get("constants", p.constants);
        get("allow_negation_in_conditions", p.allow_negation_in_conditions);
        get("force_positive_aggregates", p.force_positive_aggregates);
        get("aggregate_percent", p.aggregate_percent);
        get("simple_atoms", p.simple_atoms);
        get("max_simple_rules", p.max_simple_rules);
        get("max_implications", p.max_implications);
        get("max_antecedent", p.max_antecedent);
        get("max_consequent", p.max_consequent);
        get("allow_double_negation", p.allow_double_negation);
        if (j.contains("int_range")) {
            const auto& r = j.at("int_range");
            if (!r.is_array() || r.size() != 2) throw Error(ErrorKind::Syntax, "int_range must be [lo, hi]");
            p.int_lo = r[0].get<std::int64_t>();
            p.int_hi = r[1].get<std::int64_t>();
        }
        if (j.contains("predicates")) {
            p.predicates.clear();
            for (const auto& s : j.at("predicates")) {
                const auto text = s.get<std::string>();
                const auto slash = text.rfind('/');
                if (slash == std::string::npos || slash == 0) {
                    throw Error(ErrorKind::Syntax, "predicate must be name/arity: " + text);
                }
                p.predicates.push_back({text.substr(0, slash), std::stoul(text.substr(slash + 1))});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Syntax, std::string("profile: ") + e.what());
    } catch (const std::logic_error& e) {
        throw Error(ErrorKind::Syntax, std::string("profile: ") + e.what());
    }
    p.validate();
    return p;
}

inline Json to_json(const GenProfile& p) {
    Json j = document();
    j["seed"] = p.seed;
    j["max_rules"] = p.max_rules;
    j["max_body"] = p.max_body;
    j["max_head"] = p.max_head;
    j["max_aggregates"] = p.max_aggregates;
    Json preds = Json::array();
    for (const auto& q : p.predicates) preds.push_back(q.name + "/" + std::to_string(q.arity));
    j["predicates"] = preds;
    j["constants"] = p.constants;
    j["int_range"] = Json::array({p.int_lo, p.int_hi});
    j["allow_negation_in_conditions"] = p.allow_negation_in_conditions;
    j["force_positive_aggregates"] = p.force_positive_aggregates;
    j["aggregate_percent"] = p.aggregate_percent;
    j["simple_atoms"] = p.simple_atoms;
    j["max_simple_rules"] = p.max_simple_rules;
    j["max_implications"] = p.max_implications;
    j["max_antecedent"] = p.max_antecedent;
    j["max_consequent"] = p.max_consequent;
    j["allow_double_negation"] = p.allow_double_negation;
    return j;
}

inline Json to_json(const FuzzReport& r) {
    Json j = document();
    j["ok"] = r.ok();
    j["programs"] = r.programs;
    j["with_aggregates"] = r.with_aggregates;
    j["cap_errors"] = r.cap_errors;
    Json classes = Json::object();
    for (const auto& [k, v] : r.classes) {
        const auto it = r.agreeing.find(k);
        classes[to_string(k)] = {{"count", v}, {"agree", it == r.agreeing.end() ? 0 : it->second}};
    }
    j["classes"] = classes;
    Json diffs = Json::array();
    for (const auto& f : r.diff_failures) {
        diffs.push_back({{"seed", f.seed},
                         {"program", f.original},
                         {"minimized", f.minimized},
                         {"flp", f.flp},
                         {"ft", f.ft}});
    }
    j["diff_failures"] = diffs;
    Json lemmas = Json::object();
    for (const auto& [id, s] : r.lemmas.stats) {
        lemmas[to_string(id)] = {{"checked", s.checked},
                                 {"nontrivial", s.nontrivial},
                                 {"skipped", s.skipped},
                                 {"failures", s.failures}};
    }
    j["lemmas"] = lemmas;
    Json lfail = Json::array();
    for (const auto& f : r.lemmas.failures) {
        lfail.push_back({{"lemma", to_string(f.id)},
                         {"seed", f.seed},
                         {"instance", f.original},
                         {"minimized", f.minimized}});
    }
    j["lemma_failures"] = lfail;
    return j;
}

}  // namespace dualsm
