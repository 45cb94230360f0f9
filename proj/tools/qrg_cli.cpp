// qrg: character tables, quasi-randomness degrees and mixing-inequality checks
// for finite groups.
//
// Exit codes: 0 = all margins non-negative, 1 = usage or I/O error,
// 2 = a bound check failed (reproducer written next to the report).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qrg/adversary.hpp"
#include "qrg/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBoundFailed = 2;

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::vector<std::string> split_checks(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-random group toolkit: spectra and mixing-inequality verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qrg::kToolVersion));

    double orth_tol = 1e-8;
    auto add_spectral_flags = [&](CLI::App* sub) {
        sub->add_option("--tolerance-orthogonality", orth_tol, "character orthogonality tolerance")
            ->capture_default_str();
    };

    auto* groups = app.add_subcommand("groups", "group catalog");
    auto* groups_list = groups->add_subcommand("list", "print the built-in group families");
    groups->require_subcommand(1);

    std::string group_name, out_path, csv_path, checks = "";
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool timings = false;

    auto* analyze = app.add_subcommand("analyze", "classes, character degrees and D");
    analyze->add_option("--group", group_name, "group name, e.g. a:5 or file:table.txt")->required();
    analyze->add_option("--out", out_path, "JSON output path (default stdout)");
    add_spectral_flags(analyze);

    auto* verify = app.add_subcommand("verify", "run bound checks on seeded random inputs");
    verify->add_option("--group", group_name, "group name")->required();
    verify->add_option("--check", checks, "comma-separated checks (default: all)");
    verify->add_option("--trials", trials, "trials per check")->capture_default_str();
    verify->add_option("--seed", seed, "run seed")->capture_default_str();
    verify->add_option("--threads", threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "JSON report path (default stdout)");
    verify->add_option("--csv", csv_path, "per-trial CSV path");
    verify->add_flag("--timings", timings, "include per-check runtimes (makes reports run-dependent)");
    add_spectral_flags(verify);

    qrg::SearchConfig search_cfg;
    std::string objective = "theorem";
    auto* search = app.add_subcommand("search", "adversarial hill climbing on one objective");
    search->add_option("--group", group_name, "group name")->required();
    search->add_option("--objective", objective, "theorem | step1 | lemma | corollary")->capture_default_str();
    search->add_option("--budget", search_cfg.budget, "perturbation moves")->capture_default_str();
    search->add_option("--restarts", search_cfg.restarts, "independent restarts")->capture_default_str();
    search->add_option("--initial-step", search_cfg.initial_step)->capture_default_str();
    search->add_option("--final-step", search_cfg.final_step)->capture_default_str();
    search->add_option("--seed", search_cfg.seed)->capture_default_str();
    search->add_option("--threads", search_cfg.threads)->capture_default_str()->check(CLI::PositiveNumber);
    search->add_option("--out", out_path, "JSON output path (default stdout)");
    add_spectral_flags(search);

    auto* export_cayley = app.add_subcommand("export-cayley", "write a group's Cayley table");
    export_cayley->add_option("--group", group_name, "group name")->required();
    export_cayley->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (groups_list->parsed()) {
            for (const auto& e : qrg::catalog()) std::cout << e.name << "\t" << e.description << "\n";
            return kExitOk;
        }
        if (export_cayley->parsed()) {
            emit(qrg::to_cayley_text(qrg::group_from_name(group_name)), out_path);
            return kExitOk;
        }

        qrg::SpectraOptions spectral;
        spectral.orthogonality_tolerance = orth_tol;
        // Class-matrix weights come from the run seed.
        spectral.seed = verify->parsed() ? seed : search->parsed() ? search_cfg.seed : 0;
        auto analysis = qrg::analyze(qrg::group_from_name(group_name), spectral);

        if (analyze->parsed()) {
            emit(qrg::analysis_json(analysis, orth_tol), out_path);
            return kExitOk;
        }

        if (verify->parsed()) {
            qrg::VerifyOptions opt;
            opt.checks = split_checks(checks);
            opt.trials = trials;
            opt.seed = seed;
            opt.threads = threads;
            opt.timings = timings;
            const auto report = qrg::run_verification(analysis, opt);
            emit(qrg::report_json(report), out_path);
            if (!csv_path.empty()) emit(qrg::report_csv(report), csv_path);
            if (!report.passed()) {
                const std::string repro =
                    (out_path.empty() || out_path == "-") ? "qrg_reproducer.json" : out_path + ".repro.json";
                emit(qrg::reproducer_json(analysis, report), repro);
                std::cerr << "bound check failed; reproducer written to " << repro << "\n";
                return kExitBoundFailed;
            }
            return kExitOk;
        }

        if (search->parsed()) {
            search_cfg.objective = qrg::parse_objective(objective);
            const auto result = qrg::maximize(analysis, search_cfg);
            emit(qrg::search_json(analysis, search_cfg, result), out_path);
            const double bound = qrg::objective_bound(search_cfg.objective, analysis.D());
            if (analysis.D() >= 2 && result.best_value > bound) {
                const std::string repro =
                    (out_path.empty() || out_path == "-") ? "qrg_reproducer.json" : out_path + ".repro.json";
                emit(qrg::search_json(analysis, search_cfg, result), repro);
                std::cerr << "search exceeded the proven bound " << bound << "; reproducer written to " << repro
                          << "\n";
                return kExitBoundFailed;
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
