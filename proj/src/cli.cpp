#include "buchi/cli.hpp"

#include "buchi/atoms.hpp"
#include "buchi/interp.hpp"
#include "buchi/logic.hpp"
#include "buchi/oracle.hpp"
#include "buchi/serialize.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace buchi {

namespace {

Json parse_json(std::istream& in, const std::string& what) {
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(what + ": " + e.what());
    }
}

Dfa load_dfa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return dfa_from_json(parse_json(in, path));
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    if (!out) throw std::invalid_argument("cannot write " + path);
}

std::string render(const Dfa& a, const std::string& format) {
    return format == "dot" ? to_dot(a) : to_json(a).dump(2) + "\n";
}

std::string track_list(const std::vector<std::string>& names) {
    std::string s = "[";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) s += ", ";
        s += names[i];
    }
    return s + "]";
}

}  // namespace

int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision procedure and interpretation toolkit for Büchi arithmetic", "ban"};
    app.require_subcommand(1);
    int status = 0;

    // decide
    std::string decide_text;
    int decide_base = 2;
    auto* cmd_decide = app.add_subcommand("decide", "Decide a sentence and print true or false");
    cmd_decide->add_option("formula", decide_text, "Sentence to decide")->required();
    cmd_decide->add_option("--base", decide_base, "Numeral base")->check(CLI::Range(2, 64));
    cmd_decide->callback([&] {
        out << (decide(decide_text, Base(decide_base)) ? "true" : "false") << '\n';
    });

    // compile
    std::string compile_text, compile_out, compile_format = "json";
    int compile_base = 2;
    auto* cmd_compile =
        app.add_subcommand("compile", "Compile a formula to a minimal automaton");
    cmd_compile->add_option("formula", compile_text, "Formula to compile")->required();
    cmd_compile->add_option("--base", compile_base, "Numeral base")->check(CLI::Range(2, 64));
    cmd_compile->add_option("--out", compile_out, "Output file (default: standard output)");
    cmd_compile->add_option("--format", compile_format, "Output format")
        ->check(CLI::IsMember({"json", "dot"}));
    cmd_compile->callback([&] {
        const FormulaPtr f = parse_formula(compile_text);
        const Dfa a = compile(f, Base(compile_base));
        std::ostringstream info;
        info << "states: " << a.num_states() << '\n'
             << "tracks: " << track_list(free_variables(f)) << '\n';
        if (compile_out.empty()) {
            out << render(a, compile_format);
            err << info.str();
        } else {
            write_file(compile_out, render(a, compile_format));
            out << info.str();
        }
    });

    // transform
    std::string tr_in, tr_out, tr_format = "json";
    int tr_m = 2, tr_r = 1;
    auto* cmd_transform =
        app.add_subcommand("transform", "Apply an interpretation transform to an automaton");
    cmd_transform->add_option("--in", tr_in, "Input automaton (JSON)")->required();
    cmd_transform->add_option("--out", tr_out, "Output file (default: standard output)");
    cmd_transform->add_option("--format", tr_format, "Output format")
        ->check(CLI::IsMember({"json", "dot"}));
    cmd_transform->require_subcommand(1);
    auto run_transform = [&](const std::string& mode) {
        const Dfa a = load_dfa(tr_in);
        Dfa b;
        if (mode == "interleave")
            b = interleave_transform(a, tr_m, tr_r);
        else if (mode == "square")
            b = base_square_transform(a);
        else
            b = digit_embed_transform(a);
        b = canonicalize(b);
        std::ostringstream info;
        info << "states: " << a.num_states() << " -> " << b.num_states() << '\n';
        if (tr_out.empty()) {
            out << render(b, tr_format);
            err << info.str();
        } else {
            write_file(tr_out, render(b, tr_format));
            out << info.str();
        }
    };
    auto* tr_interleave = cmd_transform->add_subcommand(
        "interleave", "Collapse groups of m tracks into interleaved codes");
    tr_interleave->add_option("--m", tr_m, "Components per argument")
        ->required()
        ->check(CLI::Range(1, 16));
    tr_interleave->add_option("--r", tr_r, "Number of arguments")
        ->required()
        ->check(CLI::Range(1, 16));
    tr_interleave->callback([&] { run_transform("interleave"); });
    cmd_transform->add_subcommand("square", "Rewrite base k*k digits as pairs of base-k digits")
        ->callback([&] { run_transform("square"); });
    cmd_transform->add_subcommand("embed", "Embed base k into base k+1 avoiding digit k")
        ->callback([&] { run_transform("embed"); });

    // interpret
    int interp_source = 2, interp_target = 2;
    std::string interp_out;
    auto* cmd_interpret = app.add_subcommand(
        "interpret", "Interpret one Büchi arithmetic inside another");
    cmd_interpret->add_option("--source", interp_source, "Source base")
        ->required()
        ->check(CLI::Range(2, 64));
    cmd_interpret->add_option("--target", interp_target, "Target base")
        ->required()
        ->check(CLI::Range(2, 64));
    cmd_interpret->add_option("--out", interp_out, "Output directory for the bundle");
    cmd_interpret->callback([&] {
        const Base source(interp_source), target(interp_target);
        const std::vector<PlanStep> plan = plan_interpretation(source, target);
        std::ostringstream info;
        info << "plan: ";
        if (plan.empty()) info << "identity";
        for (std::size_t i = 0; i < plan.size(); ++i) {
            if (i) info << "; ";
            info << describe(plan[i]);
        }
        info << '\n';
        const Interpretation interp = build_interpretation(source, target);
        info << "codec: " << interp.codec.describe() << '\n';
        const std::string doc = to_json(interp).dump(2) + "\n";
        if (interp_out.empty()) {
            out << doc;
            err << info.str();
        } else {
            std::filesystem::create_directories(interp_out);
            write_file(interp_out + "/interpretation.json", doc);
            out << info.str();
        }
    });

    // check
    std::string check_bundle;
    int64_t check_bound = 100;
    auto* cmd_check =
        app.add_subcommand("check", "Verify an interpretation bundle against arithmetic");
    cmd_check->add_option("--bundle", check_bundle, "Bundle directory or JSON file")->required();
    cmd_check->add_option("--bound", check_bound, "Enumeration bound")
        ->check(CLI::Range(int64_t(0), int64_t(1) << 40));
    cmd_check->callback([&] {
        std::string path = check_bundle;
        if (std::filesystem::is_directory(path)) path += "/interpretation.json";
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open " + path);
        const Interpretation interp = interpretation_from_json(parse_json(in, path));
        const CheckReport report = check_interpretation(interp, Nat(check_bound));
        out << report.detail << "check: " << (report.pass ? "pass" : "fail") << '\n';
        if (!report.pass) status = 1;
    });

    // refute
    std::string refute_in;
    auto* cmd_refute = app.add_subcommand(
        "refute", "Exhibit a pair misclassified against {(2^k, 4^k)}");
    cmd_refute->add_option("--in", refute_in, "Candidate automaton (JSON)")->required();
    cmd_refute->callback([&] {
        const RefutationWitness w = refute_pairing(load_dfa(refute_in));
        out << (w.kind == RefutationWitness::Kind::FalsePositive ? "false_positive"
                                                                 : "false_negative")
            << " (" << w.first << ", " << w.second << ")\n";
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
    return status;
}

}  // namespace buchi
