#include "lindblad/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lindblad/csv.hpp"
#include "lindblad/parallel.hpp"
#include "lindblad/scenarios.hpp"

namespace lindblad::run {

namespace {

constexpr const char* kFormatVersion = "1";

void write_file(const std::string& path, const std::string& bytes) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << bytes;
    if (!out.good()) throw Error("failed writing output file: " + path);
}

std::string resolve_output(const RunConfig& cfg, const std::string& override_path,
                           const char* fallback) {
    if (!override_path.empty()) return override_path;
    if (!cfg.output.empty()) return cfg.output;
    return fallback;
}

std::vector<DensityMatrix> initial_states(const RunConfig& cfg) {
    if (cfg.initial_matrix) return {validate_density(*cfg.initial_matrix)};
    return sample_states(*cfg.initial_sampler, cfg.initial_count);
}

Matrix deviation_reference(const RunConfig& cfg, const DensityMatrix& rho0) {
    if (!cfg.steady) return Matrix(cfg.model.dim(), cfg.model.dim());
    const SteadyState ss = steady_state(cfg.model, rho0, *cfg.steady,
                                        cfg.steady_matrix ? &*cfg.steady_matrix : nullptr);
    return ss.rho_s;
}

std::vector<std::pair<std::string, std::string>> stamp(const RunConfig& cfg) {
    return {{"lindblad_lab_format", kFormatVersion},
            {"config_fnv1a", csv::hex64(cfg.config_hash)},
            {"seed", std::to_string(cfg.seed)}};
}

} // namespace

void simulate(const RunConfig& cfg, const std::string& output_override) {
    const std::vector<DensityMatrix> states = initial_states(cfg);
    std::vector<Trajectory> trajectories(states.size());
    std::vector<Matrix> references(states.size());

    parallel_for(states.size(), [&](std::size_t i) {
        references[i] = deviation_reference(cfg, states[i]);
        trajectories[i] = integrate(cfg.model, states[i], cfg.grid, &references[i]);
    });

    std::ostringstream buf;
    csv::Writer writer(buf);
    writer.comment(stamp(cfg));
    writer.header({"state_index", "t", "purity", "purity_deviation", "renyi2", "vn_entropy"});
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const Trajectory& traj = trajectories[i];
        for (std::size_t s = 0; s < traj.times.size(); ++s) {
            const Observables& obs = traj.observables[s];
            writer.row({std::to_string(i), csv::format_double(traj.times[s]),
                        csv::format_double(obs.purity),
                        csv::format_double(obs.purity_deviation),
                        csv::format_double(obs.renyi2),
                        csv::format_double(obs.vn_entropy)});
        }
    }
    write_file(resolve_output(cfg, output_override, "trajectory.csv"), buf.str());
}

void bounds_report(const RunConfig& cfg, const std::string& output_override) {
    const std::vector<DensityMatrix> states = initial_states(cfg);
    const DensityMatrix& rho0 = states.front();
    const double p_init = purity(rho0.matrix());

    std::optional<double> pd_init;
    if (cfg.steady) {
        pd_init = purity_deviation(rho0, deviation_reference(cfg, rho0));
    }
    if (cfg.bounds.deviation && !pd_init) {
        throw ValidationError("bounds: the deviation envelope needs a steady_state entry");
    }

    const BoundReport report =
        compute_bound_report(cfg.model, cfg.grid, p_init, pd_init, cfg.bounds);

    std::ostringstream buf;
    csv::Writer writer(buf);
    writer.comment(stamp(cfg));
    writer.header({"t", "hilbert_rate", "liouville_rate", "cooling_rate", "cooling_valid",
                   "action_hilbert", "action_liouville", "action_cooling", "hilbert_lower",
                   "hilbert_upper", "hilbert_lower_raw", "hilbert_upper_raw",
                   "liouville_lower", "liouville_upper", "liouville_lower_raw",
                   "liouville_upper_raw", "deviation_lower", "deviation_upper",
                   "dephasing_floor", "entropy_floor"});

    auto series_field = [&](const std::vector<double>& series, std::size_t i) {
        return series.empty() ? std::string() : csv::format_double(series[i]);
    };
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        writer.row({csv::format_double(report.times[i]),
                    csv::format_double(report.hilbert_rate_series[i]),
                    csv::format_double(report.liouville_rate_series[i]),
                    csv::format_double(report.cooling_rate_series[i]),
                    report.cooling_valid[i] ? "1" : "0",
                    csv::format_double(report.action_hilbert_cum[i]),
                    csv::format_double(report.action_liouville_cum[i]),
                    csv::format_double(report.action_cooling_cum[i]),
                    series_field(report.hilbert_lower, i),
                    series_field(report.hilbert_upper, i),
                    series_field(report.hilbert_lower_raw, i),
                    series_field(report.hilbert_upper_raw, i),
                    series_field(report.liouville_lower, i),
                    series_field(report.liouville_upper, i),
                    series_field(report.liouville_lower_raw, i),
                    series_field(report.liouville_upper_raw, i),
                    series_field(report.deviation_lower, i),
                    series_field(report.deviation_upper, i),
                    series_field(report.dephasing_floor_series, i),
                    series_field(report.entropy_floor_series, i)});
    }
    write_file(resolve_output(cfg, output_override, "bounds.csv"), buf.str());
}

namespace {

std::vector<std::pair<std::string, std::string>> figure_stamp(const std::string& scenario,
                                                              std::uint64_t seed) {
    const std::string canonical = "figures:" + scenario + ":seed=" + std::to_string(seed);
    return {{"lindblad_lab_format", kFormatVersion},
            {"config_fnv1a", csv::hex64(csv::fnv1a64(canonical))},
            {"seed", std::to_string(seed)},
            {"scenario", scenario}};
}

void write_fig1(std::uint64_t seed, const std::filesystem::path& dir) {
    ScenarioOptions opts;
    opts.seed = seed;
    const Scenario sc = builtin_scenario("fig1", opts);

    std::vector<Trajectory> trajectories(sc.initial_states.size());
    parallel_for(sc.initial_states.size(), [&](std::size_t i) {
        trajectories[i] = integrate(sc.model, sc.initial_states[i], sc.grid);
    });

    BoundRequest request;
    request.hilbert = true;
    request.liouville = true;
    request.dephasing_floor = true;
    const BoundReport report = compute_bound_report(sc.model, sc.grid, 1.0, std::nullopt, request);

    {
        std::ostringstream buf;
        csv::Writer writer(buf);
        writer.comment(figure_stamp("fig1", seed));
        std::vector<std::string> header{"t"};
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            std::ostringstream name;
            name << "purity_" << i;
            header.push_back(name.str());
        }
        writer.header(header);
        for (std::size_t s = 0; s < trajectories.front().times.size(); ++s) {
            std::vector<std::string> row{csv::format_double(trajectories.front().times[s])};
            for (const Trajectory& traj : trajectories) {
                row.push_back(csv::format_double(traj.observables[s].purity));
            }
            writer.row(row);
        }
        write_file((dir / "fig1_trajectories.csv").string(), buf.str());
    }
    {
        std::ostringstream buf;
        csv::Writer writer(buf);
        writer.comment(figure_stamp("fig1", seed));
        writer.header({"t", "dephasing_floor_eq12", "liouville_lower_eq10",
                       "hilbert_lower_eq4", "liouville_lower_raw", "hilbert_lower_raw"});
        for (std::size_t i = 0; i < report.times.size(); ++i) {
            writer.row({csv::format_double(report.times[i]),
                        csv::format_double(report.dephasing_floor_series[i]),
                        csv::format_double(report.liouville_lower[i]),
                        csv::format_double(report.hilbert_lower[i]),
                        csv::format_double(report.liouville_lower_raw[i]),
                        csv::format_double(report.hilbert_lower_raw[i])});
        }
        write_file((dir / "fig1_bounds.csv").string(), buf.str());
    }
}

void write_fig2(std::uint64_t seed, const std::filesystem::path& dir) {
    const Scenario sc = builtin_scenario("fig2");
    const Trajectory traj = integrate(sc.model, sc.initial_states.front(), sc.grid);

    BoundRequest request;
    request.hilbert = true;
    request.liouville = true;
    request.entropy_floor = true;
    const double p_init = purity(sc.initial_states.front().matrix());
    const BoundReport report =
        compute_bound_report(sc.model, sc.grid, p_init, std::nullopt, request);

    const double neg_log_p0 = -std::log(p_init);
    std::ostringstream buf;
    csv::Writer writer(buf);
    writer.comment(figure_stamp("fig2", seed));
    writer.header({"t", "S_exact", "neg_log_purity", "entropy_floor_eq14",
                   "liouville_envelope", "hilbert_envelope"});
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        writer.row({csv::format_double(report.times[i]),
                    csv::format_double(traj.observables[i].vn_entropy),
                    csv::format_double(traj.observables[i].renyi2),
                    csv::format_double(report.entropy_floor_series[i]),
                    csv::format_double(neg_log_p0 - report.action_liouville_cum[i]),
                    csv::format_double(neg_log_p0 - report.action_hilbert_cum[i])});
    }
    write_file((dir / "fig2_entropy.csv").string(), buf.str());
}

} // namespace

void figures(const std::string& scenario, std::uint64_t seed, const std::string& out_dir) {
    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);
    if (scenario == "fig1") {
        write_fig1(seed, dir);
    } else if (scenario == "fig2") {
        write_fig2(seed, dir);
    } else {
        throw UnknownScenario("figures: unknown figure '" + scenario +
                              "' (known: fig1, fig2)");
    }
}

void compose_report(const RunConfig& cfg, std::size_t copies,
                    const std::string& output_override) {
    const LindbladModel composed = compose_independent(cfg.model, copies);
    const double single_h = hilbert_rate(cfg.model, 0.0);
    const double single_l = liouville_rate(cfg.model, 0.0);
    const double multi_h = hilbert_rate(composed, 0.0);
    const double multi_l = liouville_rate(composed, 0.0);

    // Product-state log-purity additivity check when an explicit single
    // particle state is configured.
    std::string log_purity_gap;
    if (cfg.initial_matrix) {
        const DensityMatrix rho_single = validate_density(*cfg.initial_matrix);
        Matrix product = rho_single.matrix();
        for (std::size_t m = 1; m < copies; ++m) product = kron(product, rho_single.matrix());
        const DensityMatrix rho_multi = validate_density(hermitize(product));

        const Trajectory t1 = integrate(cfg.model, rho_single, cfg.grid);
        const Trajectory tm = integrate(composed, rho_multi, cfg.grid);
        double worst = 0.0;
        for (std::size_t s = 0; s < t1.times.size(); ++s) {
            const double expected = static_cast<double>(copies) * std::log(t1.observables[s].purity);
            worst = std::max(worst, std::abs(std::log(tm.observables[s].purity) - expected));
        }
        log_purity_gap = csv::format_double(worst);
    }

    std::ostringstream buf;
    csv::Writer writer(buf);
    writer.comment(stamp(cfg));
    writer.header({"copies", "dim", "hilbert_rate", "liouville_rate", "hilbert_rate_single",
                   "liouville_rate_single", "log_purity_additivity_gap"});
    writer.row({std::to_string(copies), std::to_string(composed.dim()),
                csv::format_double(multi_h), csv::format_double(multi_l),
                csv::format_double(single_h), csv::format_double(single_l), log_purity_gap});
    write_file(resolve_output(cfg, output_override, "compose.csv"), buf.str());
}

} // namespace lindblad::run
