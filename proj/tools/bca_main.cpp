#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bca/determinize.hpp"
#include "bca/emptiness.hpp"
#include "bca/format.hpp"
#include "bca/hsim.hpp"
#include "bca/machine.hpp"
#include "bca/semantics.hpp"
#include "bca/sigma11.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw bca::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bca::CounterMachine load_machine(const std::string& path) {
    bca::CounterMachine m = bca::parse_machine(read_input(path));
    auto report = bca::validate(m);
    if (!report.empty()) {
        std::string msg = "invalid machine " + path + ":";
        for (const auto& v : report) msg += "\n  " + v.code + ": " + v.message;
        throw bca::Error(msg);
    }
    return m;
}

void write_output(const std::string& text, const std::string& out_path, bool force) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    if (!force && std::filesystem::exists(out_path))
        throw bca::Error(out_path + " exists; use --force to overwrite");
    std::ofstream out(out_path);
    if (!out) throw bca::Error("cannot write " + out_path);
    out << text;
}

bca::FiniteTreeSet load_tree_set(const std::string& spec, int phases) {
    if (!std::filesystem::exists(spec)) {
        if (spec == "left-spine") return bca::make_left_spine(phases);
        if (spec == "right-spine") return bca::make_right_spine(phases);
        if (spec == "full") return bca::make_full_tree(phases);
        if (spec == "empty") return bca::make_empty_tree(phases);
        throw bca::Error("--set: no such file or generator (left-spine, right-spine, full, empty): " +
                         spec);
    }
    std::istringstream in(read_input(spec));
    std::set<std::string> nodes;
    int depth = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "//") break;
            if (tok == "depth") {
                if (!(ls >> depth)) throw bca::Error("--set: bad depth line");
                continue;
            }
            nodes.insert(tok == "eps" ? "" : tok);
        }
    }
    bca::FiniteTreeSet x = bca::make_tree_set(std::move(nodes));
    x.max_depth = std::max({x.max_depth, depth, phases});
    return x;
}

int run(int argc, char** argv) {
    CLI::App app{"blind counter automata toolkit"};
    app.require_subcommand(1);

    std::string file, file_b, out_path, u_str, v_str, emit_kind, set_spec;
    int bound = 64, phases = 0, lint_words = 0, lint_runs = 0;
    std::uint64_t budget = 10'000'000, steps = 10'000;
    bool force = false;

    auto* empty_cmd = app.add_subcommand("check-empty", "accepting lasso pattern search");
    empty_cmd->add_option("file", file)->required();
    empty_cmd->add_option("--bound", bound);
    empty_cmd->add_option("--budget", budget);

    auto* member_cmd = app.add_subcommand("member", "ultimately periodic membership");
    member_cmd->add_option("file", file)->required();
    member_cmd->add_option("--u", u_str);
    member_cmd->add_option("--v", v_str)->required();
    member_cmd->add_option("--bound", bound);
    member_cmd->add_option("--budget", budget);

    auto* hsim_cmd = app.add_subcommand("hsim", "one-counter to four-blind-counter constructions");
    hsim_cmd->add_option("file", file)->required();
    hsim_cmd->add_option("--emit", emit_kind)->required()->check(CLI::IsMember({"B", "L", "PA"}));
    hsim_cmd->add_option("-o,--output", out_path);
    hsim_cmd->add_flag("--force", force);

    auto* a1_cmd = app.add_subcommand("a1", "the one-blind-counter block automaton");
    a1_cmd->add_option("-o,--output", out_path);
    a1_cmd->add_flag("--force", force);

    auto* alpha_cmd = app.add_subcommand("alpha", "phase encoding of a tree set");
    alpha_cmd->add_option("--set", set_spec)->required();
    alpha_cmd->add_option("--phases", phases)->required();

    auto* det_cmd = app.add_subcommand("determinize", "unambiguous automaton to Muller machine");
    det_cmd->add_option("file", file)->required();
    det_cmd->add_option("--bound", bound);
    det_cmd->add_option("--budget", budget);
    det_cmd->add_option("--lint-words", lint_words);
    det_cmd->add_option("--lint-runs", lint_runs);
    det_cmd->add_option("-o,--output", out_path);
    det_cmd->add_flag("--force", force);

    auto* shuffle_cmd = app.add_subcommand("shuffle", "letter-interleaving product");
    shuffle_cmd->add_option("fileA", file)->required();
    shuffle_cmd->add_option("fileB", file_b)->required();
    shuffle_cmd->add_option("-o,--output", out_path);
    shuffle_cmd->add_flag("--force", force);

    auto* rundet_cmd = app.add_subcommand("run-det", "deterministic run on u v^omega");
    rundet_cmd->add_option("file", file)->required();
    rundet_cmd->add_option("--u", u_str);
    rundet_cmd->add_option("--v", v_str)->required();
    rundet_cmd->add_option("--steps", steps);

    CLI11_PARSE(app, argc, argv);

    if (empty_cmd->parsed()) {
        bca::CounterMachine m = load_machine(file);
        auto res = bca::find_accepting_lasso(m, bound, budget);
        switch (res.verdict) {
            case bca::EmptinessVerdict::NonEmpty: {
                std::cout << "NonEmpty loop=" << res.witness_loop << " transitions=";
                for (size_t i = 0; i < res.witness_transitions.size(); ++i)
                    std::cout << (i ? "," : "") << res.witness_transitions[i];
                std::cout << "\n";
                return 0;
            }
            case bca::EmptinessVerdict::EmptyUpTo:
                std::cout << "EmptyUpTo " << bound << "\n";
                return 1;
            case bca::EmptinessVerdict::EmptyCertified:
                std::cout << "EmptyCertified\n";
                return 2;
        }
    }

    if (member_cmd->parsed()) {
        bca::CounterMachine m = load_machine(file);
        bca::LassoWord w{bca::parse_word(m, u_str), bca::parse_word(m, v_str)};
        if (w.v.empty()) throw bca::Error("--v must be non-empty");
        auto res = bca::membership_upw(m, w, bound, budget);
        switch (res.verdict) {
            case bca::MembershipVerdict::Member: {
                std::cout << "member loop=" << res.witness_loop << " transitions=";
                for (size_t i = 0; i < res.witness_transitions.size(); ++i)
                    std::cout << (i ? "," : "") << res.witness_transitions[i];
                std::cout << "\n";
                return 0;
            }
            case bca::MembershipVerdict::NonMemberUpToBound:
                std::cout << "non-member-up-to-bound " << bound << "\n";
                return 1;
            case bca::MembershipVerdict::NonMemberCertified:
                std::cout << "non-member\n";
                return 2;
        }
    }

    if (hsim_cmd->parsed()) {
        bca::CounterMachine a = load_machine(file);
        bca::CounterMachine result;
        if (emit_kind == "B")
            result = bca::build_B(a);
        else if (emit_kind == "L")
            result = bca::build_L(a.alphabet);
        else
            result = bca::build_PA(a);
        write_output(bca::serialize_machine(result), out_path, force);
        return 0;
    }

    if (a1_cmd->parsed()) {
        write_output(bca::serialize_machine(bca::build_A1()), out_path, force);
        return 0;
    }

    if (alpha_cmd->parsed()) {
        bca::FiniteTreeSet x = load_tree_set(set_spec, phases);
        std::cout << bca::alpha_prefix(x, phases) << "\n";
        return 0;
    }

    if (det_cmd->parsed()) {
        bca::CounterMachine m = load_machine(file);
        if (lint_words > 0) {
            auto lint = bca::unambiguity_lint(m, lint_words, lint_runs > 0 ? lint_runs : bound,
                                              budget);
            if (lint.violation) {
                std::cerr << "ambiguity violation on u=";
                for (bca::SymbolId s : lint.word.u) std::cerr << m.alphabet[s];
                std::cerr << " v=";
                for (bca::SymbolId s : lint.word.v) std::cerr << m.alphabet[s];
                std::cerr << " (two distinct accepting runs)\n";
                return 3;
            }
        }
        bca::DeterminizeOptions opts;
        opts.bound = bound;
        opts.node_budget = budget;
        bca::DetMachine det = bca::determinize(m, opts);
        write_output(bca::serialize_machine(det.machine), out_path, force);
        return 0;
    }

    if (shuffle_cmd->parsed()) {
        bca::CounterMachine a = load_machine(file);
        bca::CounterMachine b = load_machine(file_b);
        write_output(bca::serialize_machine(bca::shuffle(a, b)), out_path, force);
        return 0;
    }

    if (rundet_cmd->parsed()) {
        bca::CounterMachine m = load_machine(file);
        bca::LassoWord w{bca::parse_word(m, u_str), bca::parse_word(m, v_str)};
        if (w.v.empty()) throw bca::Error("--v must be non-empty");
        auto res = bca::run_deterministic(m, w, steps);
        std::cout << "steps " << res.trace.transitions.size() << "\n";
        for (size_t i = 0; i + 1 < res.trace.configs.size() && i < 50; ++i) {
            const auto& c = res.trace.configs[i];
            std::cout << "  " << m.states[static_cast<size_t>(c.state)];
            for (bca::Counter v : c.counters) std::cout << " " << v;
            std::cout << "\n";
        }
        if (res.trace.configs.size() > 51) std::cout << "  ...\n";
        switch (res.verdict) {
            case bca::RunVerdict::Accept:
                std::cout << "accept\n";
                return 0;
            case bca::RunVerdict::Reject:
                std::cout << "reject " << res.diagnostic << "\n";
                return 1;
            case bca::RunVerdict::Unknown:
                std::cout << "unknown " << res.diagnostic << "\n";
                return 2;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
