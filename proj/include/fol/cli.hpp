#pragma once

// Command-line front end. Every command ends its report with a line
//
//   verdict: <word>[ <args>]
//
// and exits 0 (positive verdict), 1 (negative verdict) or 2 (I/O, parse or
// precondition error). With --json the report is one JSON object with keys
// "verdict", "detail" and "witnesses".

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "fol/hfset.hpp"
#include "fol/proof.hpp"
#include "fol/semantics.hpp"
#include "fol/syntax.hpp"
#include "fol/zfc_corpus.hpp"

namespace fol::cli {

struct CommandOutcome {
    int exit_code = 0;
    std::string verdict;  // the text after "verdict: "
};

namespace detail {

class Report {
  public:
    void line(std::string s) { lines_.push_back(std::move(s)); }
    void witness(nlohmann::json w) { witnesses_.push_back(std::move(w)); }

    CommandOutcome finish(int code, std::string word, std::string args, bool json, std::ostream& out) const {
        std::string verdict = args.empty() ? word : word + " " + args;
        if (json) {
            nlohmann::json j;
            j["verdict"] = word;
            j["detail"] = args.empty() ? nlohmann::json(lines_) : nlohmann::json(args);
            if (!args.empty() && !lines_.empty()) j["detail"] = nlohmann::json{{"args", args}, {"report", lines_}};
            j["witnesses"] = witnesses_;
            out << j.dump() << '\n';
        } else {
            for (const auto& l : lines_) out << l << '\n';
            out << "verdict: " << verdict << '\n';
        }
        return {code, verdict};
    }

  private:
    std::vector<std::string> lines_;
    nlohmann::json witnesses_ = nlohmann::json::array();
};

inline std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string show(const Formula& f, bool sugar) { return sugar ? print_sugar(f) : print_strict(f); }

}  // namespace detail

/// `args` excludes the program name.
inline CommandOutcome run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite first-order logic kernel over hereditarily finite sets", "fol"};
    app.require_subcommand(1);
    bool json = false;
    bool sugar = false;
    app.add_flag("--json", json, "Emit the verdict as a JSON object");
    app.add_flag("--sugar", sugar, "Print abbreviations, naturals and pairs in folded form");

    std::string input, formula_text, model_text, assign_text;
    std::uint64_t sound_max = 64, refute_max = 8, models_max = 8;

    auto* parse_cmd = app.add_subcommand("parse", "Print each formula of a file in canonical strict form");
    parse_cmd->add_option("input", input, "Formula file, or - for standard input")->required();

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula in a model under an assignment");
    eval_cmd->add_option("--model", model_text, "Model as an HF literal")->required();
    eval_cmd->add_option("--assign", assign_text, "Assignment literal, e.g. 'x1 := {}; x2 := {{}}'");
    eval_cmd->add_option("formula", formula_text)->required();

    auto* taut_cmd = app.add_subcommand("taut", "Decide whether a formula is a propositional tautology");
    taut_cmd->add_option("formula", formula_text)->required();

    auto* axiom_cmd = app.add_subcommand("axiom", "Decide whether a formula is a logical axiom");
    axiom_cmd->add_option("formula", formula_text)->required();

    auto* check_cmd = app.add_subcommand("check", "Check a proof file");
    check_cmd->add_option("proof", input)->required();

    auto* sound_cmd = app.add_subcommand("sound", "Check a proof, then its conclusion in every enumerated model of sigma");
    sound_cmd->add_option("proof", input)->required();
    sound_cmd->add_option("--max-index", sound_max, "Largest model index")->capture_default_str();

    auto* refute_cmd = app.add_subcommand("refute", "Search enumerated models for a counterexample");
    refute_cmd->add_option("formula", formula_text)->required();
    refute_cmd->add_option("--max-index", refute_max, "Largest model index")->capture_default_str();

    auto* models_cmd = app.add_subcommand("models", "List the enumerated models");
    models_cmd->add_option("--max-index", models_max, "Largest model index")->capture_default_str();

    auto* corpus_cmd = app.add_subcommand("corpus", "List the ZFC sample sentences");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return {code == 0 ? 0 : 2, code == 0 ? "help" : "error usage"};
    }

    detail::Report report;
    auto fail = [&](const std::string& message) {
        err << "error: " << message << '\n';
        return report.finish(2, "error", "", json, out);
    };

    try {
        if (parse_cmd->parsed()) {
            const std::string text = detail::read_input(input);
            std::size_t n = 0;
            for (const SourceLine& l : formula_lines(text)) {
                report.line(detail::show(parse_source_line(l), sugar));
                ++n;
            }
            return report.finish(0, "parsed", std::to_string(n), json, out);
        }
        if (eval_cmd->parsed()) {
            const HFSet model = parse_hf_literal(model_text);
            const Assignment sigma = parse_assignment(assign_text);
            const bool v = eval(model, parse_sugar(formula_text), sigma);
            return report.finish(v ? 0 : 1, v ? "true" : "false", "", json, out);
        }
        if (taut_cmd->parsed()) {
            const bool t = is_tautology(parse_sugar(formula_text));
            return report.finish(t ? 0 : 1, t ? "tautology" : "not-tautology", "", json, out);
        }
        if (axiom_cmd->parsed()) {
            const auto id = is_logical_axiom(parse_sugar(formula_text));
            if (id) return report.finish(0, "axiom", std::to_string(*id), json, out);
            return report.finish(1, "not-axiom", "", json, out);
        }
        if (check_cmd->parsed() || sound_cmd->parsed()) {
            const ProofScript ps = parse_proof_script(detail::read_input(input));
            const ProofReport pr = check_proof(ps);
            if (!pr.error.empty()) report.line(pr.error);
            for (std::size_t i = 0; i < pr.lines.size(); ++i) {
                const auto& l = pr.lines[i];
                std::string just = l.justification ? describe(*l.justification) : "unjustified";
                report.line(std::to_string(i + 1) + ". " + detail::show(ps.lines[i], sugar) + "  [" + just + "]");
                if (!l.failure.empty()) report.line("   " + l.failure);
                report.witness({{"line", i + 1}, {"justification", just}});
            }
            if (!pr.accepted) return report.finish(1, "rejected", "", json, out);
            if (check_cmd->parsed()) return report.finish(0, "accepted", "", json, out);

            const SoundnessReport sr = soundness_check(ps, sound_max);
            report.line("models examined: " + std::to_string(sr.models_examined));
            report.line("models of sigma: " + std::to_string(sr.models_of_sigma));
            if (!sr.violations.empty()) {
                const std::uint64_t bad = sr.violations.front();
                err << "kernel bug: conclusion fails in model " << bad << " = " << print_hf(hf_from_index({bad}))
                    << " although the model satisfies sigma\n";
                return report.finish(1, "violation", std::to_string(bad), json, out);
            }
            return report.finish(0, "sound-up-to", std::to_string(sound_max), json, out);
        }
        if (refute_cmd->parsed()) {
            const auto cx = search_counterexample(parse_sugar(formula_text), refute_max);
            if (!cx) return report.finish(0, "no-counterexample-up-to", std::to_string(refute_max), json, out);
            const std::string model = print_hf(cx->model, sugar);
            const std::string assignment = print_assignment(cx->assignment, sugar);
            report.line(model);
            report.line(assignment);
            report.witness({{"model", model}, {"assignment", assignment}});
            return report.finish(1, "counterexample", "", json, out);
        }
        if (models_cmd->parsed()) {
            for (std::uint64_t i = 1; i <= models_max; ++i) {
                const std::string lit = print_hf(hf_from_index({i}), sugar);
                report.line(std::to_string(i) + ": " + lit);
                report.witness(lit);
            }
            return report.finish(0, "models", std::to_string(models_max), json, out);
        }
        if (corpus_cmd->parsed()) {
            for (const NamedSentence& s : corpus()) {
                report.line(s.name + ": " + detail::show(s.sentence, sugar));
                report.witness({{"name", s.name}, {"sentence", print_strict(s.sentence)}});
            }
            return report.finish(0, "corpus", std::to_string(corpus().size()), json, out);
        }
    } catch (const SourceError& e) {
        return fail(input + ":" + e.what());
    } catch (const ParseError& e) {
        return fail(std::string("parse error at ") + e.what());
    } catch (const Error& e) {
        return fail(e.what());
    }
    return fail("no command");
}

inline CommandOutcome run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    return run(args, out, err);
}

}  // namespace fol::cli
