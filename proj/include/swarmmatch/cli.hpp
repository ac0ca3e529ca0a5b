#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "swarmmatch/matchdesign.hpp"
#include "swarmmatch/pso.hpp"
#include "swarmmatch/txline.hpp"

namespace swarmmatch::cli {

/// Everything one batch run needs. Trial k (1-based) is seeded with
/// base_seed + k, so any single trial can be reproduced in isolation.
struct RunSpec {
    std::size_t trials = 9;
    std::uint64_t base_seed = 0;

    matchdesign::DesignProblem problem;

    std::size_t particles = 100;
    double inertia_w = 0.7;
    double cognitive_c1 = 1.8;
    double social_c2 = 1.8;
    /// Scalar velocity clamp for every dimension; 0 selects the default
    /// 0.1 * (bound_high - bound_low).
    double v_clamp = 0.0;
    std::size_t max_iterations = 10000;
    double fitness_tolerance = 1e-6;
    bool stochastic_update = true;

    matchdesign::SweepSettings sweep;

    std::filesystem::path out_dir = "out";
};

struct TrialRow {
    std::size_t trial;
    std::uint64_t seed;
    matchdesign::DesignResult result;
};

struct TrialsSummary {
    std::vector<TrialRow> rows;
};

/// The swarm configuration a given trial runs with.
pso::SwarmConfig swarm_config_for(const RunSpec& spec, std::uint64_t seed);

/// Executes spec.trials designs and writes, under spec.out_dir:
///   summary.csv                  one row per trial
///   trace_<k>.csv                convergence trace of trial k
///   sweep_<k>.csv                reflection sweep of trial k's design
/// Rows and files appear in trial order. Throws ConfigError for invalid
/// specs and IoError when an artifact cannot be written.
TrialsSummary run_trials(const RunSpec& spec);

/// `summary.csv` schema:
/// trial,seed,fitness,z1,...,zN,ordering_ok,gamma_db_at_f0,iterations,termination
void write_summary(std::ostream& out, const TrialsSummary& summary, std::size_t n_sections);

struct VerifyResult {
    txline::SweepResult points;
    /// Reflection at exactly f0 (not the nearest grid point).
    double db_at_f0;
};

/// Standalone re-verification of a finished design: full reflection sweep
/// plus the exact-f0 figure, without running any optimization. `impedances`
/// are load-adjacent first.
VerifyResult verify_design(std::span<const double> impedances, double z_load, double z_ref,
                           double f0_hz, double f_start_hz, double f_stop_hz,
                           std::size_t n_points);

} // namespace swarmmatch::cli
