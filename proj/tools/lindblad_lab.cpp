#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lindblad/config.hpp"
#include "lindblad/runner.hpp"
#include "lindblad/scenarios.hpp"
#include "lindblad/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lindblad::Error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

lindblad::RunConfig load_config(const std::string& path) {
    return lindblad::parse_config(read_file(path));
}

int run_verify(bool quick) {
    const auto results = lindblad::verify::run_all(quick);
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        if (r.passed) ++passed;
    }
    std::cout << passed << "/" << results.size() << " checks passed\n";
    return passed == results.size() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lindblad generators, open-system dynamics and "
                 "state-independent purity/entropy speed limits"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    std::string figure_name;
    std::string out_dir;
    std::uint64_t seed = lindblad::kDefaultScenarioSeed;
    std::size_t copies = 2;
    bool quick = false;

    auto* simulate = app.add_subcommand("simulate", "integrate trajectories, write CSV");
    simulate->add_option("config", config_path, "JSON run configuration")->required();
    simulate->add_option("--out", output_override, "output CSV path");

    auto* bounds = app.add_subcommand("bounds", "rate/action/envelope report, write CSV");
    bounds->add_option("config", config_path, "JSON run configuration")->required();
    bounds->add_option("--out", output_override, "output CSV path");

    auto* figures = app.add_subcommand("figures", "write the built-in figure datasets");
    figures->add_option("figure", figure_name, "fig1 or fig2")->required();
    figures->add_option("--seed", seed, "seed for random initial conditions");
    figures->add_option("--out", out_dir, "output directory (default: .)");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_flag("--quick", quick, "reduced sample counts");

    auto* compose = app.add_subcommand("compose", "M independent copies scaling report");
    compose->add_option("config", config_path, "JSON run configuration")->required();
    compose->add_option("--copies", copies, "number of copies M")->required();
    compose->add_option("--out", output_override, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            lindblad::run::simulate(load_config(config_path), output_override);
        } else if (bounds->parsed()) {
            lindblad::run::bounds_report(load_config(config_path), output_override);
        } else if (figures->parsed()) {
            lindblad::run::figures(figure_name, seed, out_dir);
        } else if (verify->parsed()) {
            return run_verify(quick);
        } else if (compose->parsed()) {
            lindblad::run::compose_report(load_config(config_path), copies, output_override);
        }
    } catch (const lindblad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
