#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "deltaset/runner.hpp"
#include "deltaset/suite.hpp"

namespace fs = std::filesystem;
using deltaset::json;

namespace {

int write_report(const json& payload, const json& meta, const std::string& out_dir) {
    json report = payload;
    report["meta"] = meta;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream f(fs::path(out_dir) / "report.json");
        f << report.dump(2) << "\n";
        for (const auto& [name, csv] : deltaset::payload_tables(payload)) {
            std::ofstream t(fs::path(out_dir) / (name + ".csv"));
            t << csv;
        }
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"difference-set calculus experiments on finite semigroups"};
    app.require_subcommand(1);

    std::string config_path, out_dir, select = "all", golden_dir;
    uint64_t seed = 0;
    bool seed_given = false;

    auto* run = app.add_subcommand("run", "execute one experiment config");
    run->add_option("--config", config_path, "JSON config file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--out", out_dir, "directory for report.json and CSV tables");

    auto* suite = app.add_subcommand("suite", "run acceptance batteries");
    suite->add_option("--select", select,
                      "algebra|delta|qrec|ramsey|ip|vdc|triple|respects|determinism|all");
    suite->add_option("--out", out_dir, "directory for the aggregate report");
    suite->add_option("--golden", golden_dir, "directory with golden files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    seed_given = seed_opt->count() > 0;

    if (run->parsed()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config: " << config_path << "\n";
            return 2;
        }
        json config;
        try {
            config = json::parse(in);
        } catch (const json::exception& e) {
            std::cerr << "config is not valid JSON: " << e.what() << "\n";
            return 2;
        }
        auto result = deltaset::run_experiment(
            config, seed_given ? std::optional<uint64_t>(seed) : std::nullopt);
        write_report(result.payload, result.meta, out_dir);
        return result.exit_code;
    }

    // suite
    std::vector<deltaset::CriterionResult> results;
    try {
        deltaset::AcceptanceOptions opts;
        opts.golden_dir = golden_dir;
        results = deltaset::run_acceptance(select, opts);
    } catch (const deltaset::error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
                  << " — " << r.detail << " (" << r.seconds << " s)\n";
        all = all && r.pass;
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream f(fs::path(out_dir) / "acceptance.json");
        f << deltaset::acceptance_matrix_json(results).dump(2) << "\n";
    }
    return all ? 0 : 1;
}
