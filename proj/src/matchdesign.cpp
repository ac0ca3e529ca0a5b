#include "swarmmatch/matchdesign.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "swarmmatch/errors.hpp"

namespace swarmmatch::matchdesign {

namespace {

void require_positive_components(std::span<const double> z) {
    for (double zi : z) {
        if (!(zi > 0.0) || !std::isfinite(zi)) {
            throw DomainError("section impedances must be positive");
        }
    }
}

std::vector<txline::LineSection> to_cascade_order(std::span<const double> impedances) {
    std::vector<txline::LineSection> sections;
    sections.reserve(impedances.size());
    // Design vectors are load-adjacent first; the cascade runs source -> load.
    for (auto it = impedances.rbegin(); it != impedances.rend(); ++it) {
        sections.push_back(txline::LineSection{*it, 90.0});
    }
    return sections;
}

} // namespace

void validate(const DesignProblem& problem) {
    if (!(problem.z_load > 0.0) || !std::isfinite(problem.z_load)) {
        throw ConfigError("z_load must be positive");
    }
    if (!(problem.z_target > 0.0) || !std::isfinite(problem.z_target)) {
        throw ConfigError("z_target must be positive");
    }
    if (problem.n_sections == 0) {
        throw ConfigError("n_sections must be at least 1");
    }
    if (!std::isfinite(problem.bound_low) || !std::isfinite(problem.bound_high) ||
        !(0.0 < problem.bound_low) || !(problem.bound_low < problem.bound_high)) {
        throw ConfigError("bounds must satisfy 0 < low < high");
    }
    if (std::isnan(problem.penalty_weight) || problem.penalty_weight < 0.0) {
        throw ConfigError("penalty_weight must be nonnegative");
    }
}

double ordering_penalty(std::span<const double> z, const DesignProblem& problem) {
    if (!problem.ordering_required) return 0.0;
    double violation = 0.0;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
        violation += std::max(0.0, z[k + 1] - z[k]);
    }
    return problem.penalty_weight * violation;
}

double closed_form_fitness(std::span<const double> z, const DesignProblem& problem) {
    validate(problem);
    if (z.size() != 3) {
        throw DomainError("closed-form fitness is defined for exactly three sections");
    }
    require_positive_components(z);
    const double ratio = z[0] * z[2] / z[1];
    return std::abs(ratio * ratio / problem.z_load - problem.z_target) +
           ordering_penalty(z, problem);
}

double cascade_fitness(std::span<const double> z, const DesignProblem& problem, double f0_hz) {
    validate(problem);
    if (z.empty()) throw DomainError("cascade fitness needs at least one section");
    require_positive_components(z);

    const auto sections = to_cascade_order(z);
    txline::TwoPort chain;
    for (const auto& section : sections) {
        chain = chain * txline::line_two_port(section, f0_hz, f0_hz);
    }
    const txline::Complex z_in =
        txline::input_impedance(chain, txline::Complex{problem.z_load, 0.0});
    return std::abs(z_in - txline::Complex{problem.z_target, 0.0}) +
           ordering_penalty(z, problem);
}

bool check_ordering(std::span<const double> z) {
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
        if (!(z[k] > z[k + 1])) return false;
    }
    return true;
}

void validate(const SweepSettings& settings) {
    if (!(settings.f0_hz > 0.0) || !std::isfinite(settings.f0_hz)) {
        throw ConfigError("f0 must be positive");
    }
    if (!(settings.f_start_hz > 0.0) || !std::isfinite(settings.f_start_hz) ||
        !std::isfinite(settings.f_stop_hz) || settings.f_stop_hz < settings.f_start_hz) {
        throw ConfigError("sweep range requires 0 < start <= stop");
    }
    if (settings.n_points == 0) {
        throw ConfigError("sweep needs at least one point");
    }
}

txline::SweepResult sweep_design(std::span<const double> impedances, double z_load,
                                 double z_ref, double f0_hz, std::span<const double> grid) {
    require_positive_components(impedances);
    const auto sections = to_cascade_order(impedances);
    return txline::sweep(sections, z_load, z_ref, f0_hz, grid);
}

pso::SwarmConfig default_swarm_config(const DesignProblem& problem, std::uint64_t seed) {
    validate(problem);
    pso::SwarmConfig config;
    config.bounds.assign(problem.n_sections, pso::Bound{problem.bound_low, problem.bound_high});
    config.seed = seed;
    return config;
}

DesignResult design(const DesignProblem& problem, const pso::SwarmConfig& swarm,
                    const SweepSettings& sweep_settings) {
    validate(problem);
    validate(sweep_settings);
    if (swarm.dimension() != problem.n_sections) {
        throw ConfigError("swarm bounds dimension must equal n_sections");
    }

    const double f0 = sweep_settings.f0_hz;
    pso::Objective objective;
    if (problem.n_sections == 3) {
        objective = [&problem](std::span<const double> z) { return closed_form_fitness(z, problem); };
    } else {
        objective = [&problem, f0](std::span<const double> z) {
            return cascade_fitness(z, problem, f0);
        };
    }

    pso::RunResult best = pso::run(swarm, objective);

    DesignResult result;
    result.impedances = std::move(best.best_position);
    result.fitness = objective(result.impedances);
    result.trace = std::move(best.trace);
    result.termination = best.termination;
    result.iterations = best.iterations;
    result.non_finite_evaluations = best.non_finite_evaluations;
    result.ordering_ok = check_ordering(result.impedances);

    const std::array<double, 1> at_f0{f0};
    const auto verified = sweep_design(result.impedances, problem.z_load, problem.z_target,
                                       f0, at_f0);
    result.verified_db_at_f0 = verified.front().magnitude_db;
    return result;
}

} // namespace swarmmatch::matchdesign
