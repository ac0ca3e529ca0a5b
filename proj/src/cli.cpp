#include "swarmmatch/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "swarmmatch/csv.hpp"
#include "swarmmatch/errors.hpp"

namespace swarmmatch::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_artifact(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish_artifact(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

void validate(const RunSpec& spec) {
    matchdesign::validate(spec.problem);
    matchdesign::validate(spec.sweep);
    if (spec.trials == 0) throw ConfigError("trials must be at least 1");
    if (spec.particles == 0) throw ConfigError("particles must be at least 1");
    if (spec.v_clamp < 0.0 || std::isnan(spec.v_clamp)) {
        throw ConfigError("vclamp must be positive (or 0 for the default)");
    }
}

} // namespace

pso::SwarmConfig swarm_config_for(const RunSpec& spec, std::uint64_t seed) {
    pso::SwarmConfig config = matchdesign::default_swarm_config(spec.problem, seed);
    config.population = spec.particles;
    config.inertia_w = spec.inertia_w;
    config.cognitive_c1 = spec.cognitive_c1;
    config.social_c2 = spec.social_c2;
    if (spec.v_clamp > 0.0) {
        config.v_clamp.assign(spec.problem.n_sections, spec.v_clamp);
    }
    config.max_iterations = spec.max_iterations;
    config.fitness_tolerance = spec.fitness_tolerance;
    config.stochastic_update = spec.stochastic_update;
    return config;
}

TrialsSummary run_trials(const RunSpec& spec) {
    validate(spec);
    pso::validate(swarm_config_for(spec, spec.base_seed));

    std::error_code ec;
    fs::create_directories(spec.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + spec.out_dir.string());

    const auto grid =
        txline::linear_grid(spec.sweep.f_start_hz, spec.sweep.f_stop_hz, spec.sweep.n_points);

    TrialsSummary summary;
    summary.rows.reserve(spec.trials);
    for (std::size_t trial = 1; trial <= spec.trials; ++trial) {
        const std::uint64_t seed = spec.base_seed + trial;
        auto result =
            matchdesign::design(spec.problem, swarm_config_for(spec, seed), spec.sweep);

        const fs::path trace_path = spec.out_dir / ("trace_" + std::to_string(trial) + ".csv");
        auto trace_out = open_artifact(trace_path);
        csv::write_trace(trace_out, result.trace);
        finish_artifact(trace_out, trace_path);

        const fs::path sweep_path = spec.out_dir / ("sweep_" + std::to_string(trial) + ".csv");
        const auto sweep = matchdesign::sweep_design(result.impedances, spec.problem.z_load,
                                                     spec.problem.z_target, spec.sweep.f0_hz,
                                                     grid);
        auto sweep_out = open_artifact(sweep_path);
        csv::write_sweep(sweep_out, sweep);
        finish_artifact(sweep_out, sweep_path);

        summary.rows.push_back({trial, seed, std::move(result)});
    }

    const fs::path summary_path = spec.out_dir / "summary.csv";
    auto summary_out = open_artifact(summary_path);
    write_summary(summary_out, summary, spec.problem.n_sections);
    finish_artifact(summary_out, summary_path);
    return summary;
}

void write_summary(std::ostream& out, const TrialsSummary& summary, std::size_t n_sections) {
    out << "trial,seed,fitness";
    for (std::size_t k = 1; k <= n_sections; ++k) out << ",z" << k;
    out << ",ordering_ok,gamma_db_at_f0,iterations,termination\n";
    for (const TrialRow& row : summary.rows) {
        out << row.trial << ',' << row.seed << ',' << csv::format_double(row.result.fitness);
        for (double z : row.result.impedances) out << ',' << csv::format_double(z);
        out << ',' << (row.result.ordering_ok ? "true" : "false") << ','
            << csv::format_double(row.result.verified_db_at_f0) << ',' << row.result.iterations
            << ',' << pso::to_string(row.result.termination) << '\n';
    }
}

VerifyResult verify_design(std::span<const double> impedances, double z_load, double z_ref,
                           double f0_hz, double f_start_hz, double f_stop_hz,
                           std::size_t n_points) {
    if (!(z_ref > 0.0) || !std::isfinite(z_ref)) {
        throw ConfigError("reference impedance must be positive");
    }
    const auto grid = txline::linear_grid(f_start_hz, f_stop_hz, n_points);

    VerifyResult result;
    result.points = matchdesign::sweep_design(impedances, z_load, z_ref, f0_hz, grid);
    const double at_f0[] = {f0_hz};
    result.db_at_f0 =
        matchdesign::sweep_design(impedances, z_load, z_ref, f0_hz, at_f0).front().magnitude_db;
    return result;
}

} // namespace swarmmatch::cli
