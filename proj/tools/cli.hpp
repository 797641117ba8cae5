#pragma once

// The dualsm command line: parse, ground, solve, analyze, diff, fuzz.
// run() takes its streams as arguments so tests can drive it in-process.
//
// Exit codes: 0 ok; 1 condition fails under --strict; 2 usage or input
// error; 3 a size cap or integer overflow; 4 an internal invariant or shape
// error, or a hard failure found by diff/fuzz.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dualsm/dualsm.hpp"

namespace dualsm::cli {

enum Exit : int { ok = 0, condition_fails = 1, usage = 2, caps = 3, internal = 4 };

inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::Syntax:
    case ErrorKind::Unsupported: return usage;
    case ErrorKind::DomainTooLarge:
    case ErrorKind::AlphabetTooLarge:
    case ErrorKind::Overflow: return caps;
    case ErrorKind::Shape:
    case ErrorKind::Invariant: return internal;
    }
    return internal;
}

struct Options {
    std::string input = "-";
    std::string ints;
    bool no_inf_sup = false;
    std::optional<std::size_t> max_agg;
    std::optional<std::size_t> max_atoms;

    // solve / ground
    std::string semantics = "both";
    std::string translation = "auto";
    bool full_alphabet = false;

    // analyze / diff
    bool json = false;
    bool emit_dot_predicate = false;
    bool emit_dot_simple = false;
    bool aspcore_graph = false;
    bool strict = false;

    // fuzz
    std::size_t seeds = 1000;
    std::string profile;
    std::string report;
    std::string mode = "both";
    std::size_t threads = 1;
};

inline GroundingConfig grounding_config(const Options& o) {
    GroundingConfig cfg;
    if (!o.ints.empty()) {
        const auto dots = o.ints.find("..");
        if (dots == std::string::npos) throw Error(ErrorKind::Syntax, "--ints expects LO..HI, got " + o.ints);
        try {
            std::size_t used = 0;
            const auto lo_text = o.ints.substr(0, dots);
            const auto hi_text = o.ints.substr(dots + 2);
            cfg.int_lo = std::stoll(lo_text, &used);
            if (used != lo_text.size()) throw std::invalid_argument(lo_text);
            cfg.int_hi = std::stoll(hi_text, &used);
            if (used != hi_text.size()) throw std::invalid_argument(hi_text);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Syntax, "--ints expects LO..HI, got " + o.ints);
        }
    }
    if (o.no_inf_sup) cfg.include_inf_sup = false;
    if (o.max_agg) cfg.max_aggregate_domain = *o.max_agg;
    if (o.max_atoms) cfg.max_candidate_atoms = *o.max_atoms;
    cfg.validate();
    return cfg;
}

inline std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Syntax, "cannot open " + path);
    ss << f.rdbuf();
    return ss.str();
}

inline Program load_program(const Options& o, std::istream& in) {
    const auto text = read_input(o.input, in);
    try {
        return parse_program(text);
    } catch (const ParseError& e) {
        throw Error(ErrorKind::Syntax, (o.input == "-" ? std::string("<stdin>") : o.input) + ":" + e.what());
    }
}

inline std::optional<Semantics> semantics_of(const std::string& s) {
    if (s == "flp") return Semantics::FLP;
    if (s == "ft") return Semantics::FT;
    return std::nullopt;
}

// auto: FLP through tau1 and FT through tau, the translations used by the
// two definitions.
inline Translation translation_for(const std::string& t, Semantics s) {
    if (t == "tau") return Translation::Tau;
    if (t == "tau1") return Translation::Tau1;
    return s == Semantics::FLP ? Translation::Tau1 : Translation::Tau;
}

inline std::string cmd_parse(const Options& o, std::istream& in) {
    return pretty_print(load_program(o, in));
}

inline std::string cmd_ground(const Options& o, std::istream& in) {
    const auto p = load_program(o, in);
    const auto t = o.translation == "tau1" ? Translation::Tau1 : Translation::Tau;
    return to_json(ground_program(p, t, grounding_config(o))).dump(2) + "\n";
}

inline std::string cmd_solve(const Options& o, std::istream& in) {
    const auto p = load_program(o, in);
    SolveOptions so;
    so.grounding = grounding_config(o);
    so.full_alphabet = o.full_alphabet;
    Json j = document();
    j["semantics"] = o.semantics;
    if (auto s = semantics_of(o.semantics)) {
        j["translation"] = to_string(translation_for(o.translation, *s));
        j["models"] = to_json(solve(p, *s, translation_for(o.translation, *s), so));
        return j.dump() + "\n";
    }
    const auto flp = solve(p, Semantics::FLP, translation_for(o.translation, Semantics::FLP), so);
    const auto ft = solve(p, Semantics::FT, translation_for(o.translation, Semantics::FT), so);
    j["flp"] = to_json(flp);
    j["ft"] = to_json(ft);
    // Both lists are canonically sorted, so list equality is set equality.
    j["equal"] = flp == ft;
    return j.dump() + "\n";
}

inline std::string cmd_analyze(const Options& o, std::istream& in, int& code) {
    const auto p = load_program(o, in);
    const auto verdict = check_theorem_condition(p, o.aspcore_graph);
    if (o.strict && !verdict.condition_holds) code = condition_fails;
    if (o.emit_dot_predicate) return to_dot(predicate_dep_graph(p, o.aspcore_graph));
    if (o.emit_dot_simple) {
        const auto gp = ground_program(p, Translation::Tau, grounding_config(o));
        return to_dot(dep_graph(to_simple_program(gp)));
    }
    if (o.json) return to_json(verdict).dump(2) + "\n";
    return format_verdict(verdict);
}

inline std::string cmd_diff(const Options& o, std::istream& in, int& code) {
    const auto p = load_program(o, in);
    const auto r = differential_check(p, grounding_config(o), o.full_alphabet);
    if (r.failure()) code = internal;
    if (o.json) return to_json(r).dump(2) + "\n";
    std::string s = format_verdict(r.verdict);
    s += "flp: " + models_string(r.flp) + "\n";
    s += "ft:  " + models_string(r.ft) + "\n";
    s += std::string(r.agree ? "agree" : "differ") + " (" + to_string(r.classification) + ")\n";
    if (r.failure()) s += "FAILURE: the condition holds but the model sets differ\n";
    return s;
}

inline std::string cmd_fuzz(const Options& o, int& code) {
    FuzzOptions fo;
    if (!o.profile.empty()) {
        std::ifstream f(o.profile);
        if (!f) throw Error(ErrorKind::Syntax, "cannot open " + o.profile);
        Json j;
        try {
            j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Syntax, o.profile + ": " + e.what());
        }
        fo.profile = profile_from_json(j);
    }
    if (const char* env = std::getenv("DUALSM_SEED"); env != nullptr && *env != '\0') {
        try {
            fo.profile.seed = std::stoull(env);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Syntax, std::string("DUALSM_SEED is not a number: ") + env);
        }
    }
    fo.seeds = o.seeds;
    fo.threads = o.threads;
    fo.mode = o.mode == "diff" ? FuzzMode::Diff : o.mode == "lemma" ? FuzzMode::Lemma : FuzzMode::Both;
    const auto report = run_fuzz(fo);
    const auto j = to_json(report);
    if (!o.report.empty()) {
        std::ofstream f(o.report);
        if (!f) throw Error(ErrorKind::Syntax, "cannot write " + o.report);
        f << j.dump(2) << "\n";
    }
    if (!report.ok()) code = internal;

    std::ostringstream s;
    s << "seeds " << fo.profile.seed << ".." << fo.profile.seed + fo.seeds - 1 << "\n";
    if (fo.mode != FuzzMode::Lemma) {
        s << "programs " << report.programs << ", with aggregates " << report.with_aggregates
          << ", over caps " << report.cap_errors << "\n";
        for (const auto& [k, v] : report.classes) {
            const auto it = report.agreeing.find(k);
            s << "  " << to_string(k) << ": " << v << " (agree " << (it == report.agreeing.end() ? 0 : it->second)
              << ")\n";
        }
    }
    for (const auto& [id, st] : report.lemmas.stats) {
        s << "  " << to_string(id) << ": " << st.checked << " checked, " << st.nontrivial << " nontrivial, "
          << st.failures << " failed\n";
    }
    for (const auto& f : report.diff_failures) {
        s << "FAILURE seed " << f.seed << "\n" << f.minimized << "  flp " << f.flp << "\n  ft  " << f.ft << "\n";
    }
    for (const auto& f : report.lemmas.failures) {
        s << "FAILURE seed " << f.seed << " " << f.minimized;
    }
    s << (report.ok() ? "ok\n" : "FAILED\n");
    return s.str();
}

inline void add_grounding_options(CLI::App* sub, Options& o) {
    sub->add_option("--ints", o.ints, "integer range LO..HI of the grounding domain (default -3..3)");
    sub->add_flag("--no-inf-sup", o.no_inf_sup, "leave #inf and #sup out of the domain");
    sub->add_option("--max-agg", o.max_agg, "largest aggregate condition domain |A| (default 12)");
    sub->add_option("--max-atoms", o.max_atoms, "largest candidate alphabet (default 18)");
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"dualsm: FLP- and FT-stable models of programs with aggregates", "dualsm"};
    app.require_subcommand(1);

    auto* parse = app.add_subcommand("parse", "parse a program and print it back");
    auto* ground = app.add_subcommand("ground", "print the grounding as JSON");
    auto* solve_cmd = app.add_subcommand("solve", "enumerate stable models");
    auto* analyze = app.add_subcommand("analyze", "check the recursive-aggregate condition");
    auto* diff = app.add_subcommand("diff", "compare FLP- and FT-stable models of one program");
    auto* fuzz = app.add_subcommand("fuzz", "differential and lemma checks on generated inputs");

    for (auto* sub : {parse, ground, solve_cmd, analyze, diff}) {
        sub->add_option("input", o.input, "program file, or - for stdin");
    }
    for (auto* sub : {ground, solve_cmd, analyze, diff}) add_grounding_options(sub, o);

    ground->add_option("--translation", o.translation, "tau or tau1")
        ->check(CLI::IsMember({"auto", "tau", "tau1"}));
    solve_cmd->add_option("--semantics", o.semantics, "flp, ft or both")
        ->check(CLI::IsMember({"flp", "ft", "both"}));
    solve_cmd->add_option("--translation", o.translation, "auto, tau or tau1")
        ->check(CLI::IsMember({"auto", "tau", "tau1"}));
    solve_cmd->add_flag("--full-alphabet", o.full_alphabet, "enumerate over all atoms, not only head atoms");

    analyze->add_flag("--json", o.json, "JSON verdict");
    analyze->add_flag("--emit-dot", o.emit_dot_predicate, "print the predicate dependency graph in DOT");
    analyze->add_flag("--emit-dot-simple", o.emit_dot_simple,
                      "print the dependency graph of the simple program built from tau in DOT");
    analyze->add_flag("--aspcore-graph", o.aspcore_graph, "also link head predicates of the same rule");
    analyze->add_flag("--strict", o.strict, "exit 1 when the condition fails");

    diff->add_flag("--json", o.json, "JSON report");
    diff->add_flag("--full-alphabet", o.full_alphabet, "enumerate over all atoms");

    fuzz->add_option("--seeds", o.seeds, "number of seeds")->check(CLI::PositiveNumber);
    fuzz->add_option("--profile", o.profile, "generator profile (JSON)");
    fuzz->add_option("--report", o.report, "write a JSON report here");
    fuzz->add_option("--mode", o.mode, "diff, lemma or both")->check(CLI::IsMember({"diff", "lemma", "both"}));
    fuzz->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "dualsm: " << e.what() << "\n";
        return usage;
    }
    if (o.emit_dot_predicate && o.emit_dot_simple) {
        err << "dualsm: --emit-dot and --emit-dot-simple are exclusive\n";
        return usage;
    }

    int code = ok;
    std::string text;
    try {
        if (parse->parsed()) text = cmd_parse(o, in);
        else if (ground->parsed()) text = cmd_ground(o, in);
        else if (solve_cmd->parsed()) text = cmd_solve(o, in);
        else if (analyze->parsed()) text = cmd_analyze(o, in, code);
        else if (diff->parsed()) text = cmd_diff(o, in, code);
        else text = cmd_fuzz(o, code);
    } catch (const ParseError& e) {
        err << "dualsm: " << e.what() << "\n";
        return usage;
    } catch (const Error& e) {
        err << "dualsm: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "dualsm: internal error: " << e.what() << "\n";
        return internal;
    }
    out << text;
    out.flush();
    return code;
}

}  // namespace dualsm::cli
