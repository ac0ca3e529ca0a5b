#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swarmmatch/pso.hpp"
#include "swarmmatch/txline.hpp"

namespace swarmmatch::matchdesign {

/// The stepped-impedance matching problem: transform z_load down to z_target
/// with n_sections quarter-wave lines whose impedances decrease toward the
/// source.
///
/// Impedance vectors everywhere in this module are load-adjacent FIRST:
/// z[0] is the section touching the load and carries the highest impedance
/// of a feasible design.
struct DesignProblem {
    double z_load = 100.0;
    double z_target = 50.0;
    std::size_t n_sections = 3;
    double bound_low = 10.0;
    double bound_high = 120.0;
    bool ordering_required = true;
    /// Penalty per ohm of adjacent-pair ordering violation.
    double penalty_weight = 1000.0;
};

/// Throws ConfigError unless 0 < bound_low < bound_high, n_sections >= 1 and
/// the impedance/penalty fields are positive/nonnegative and finite.
void validate(const DesignProblem& problem);

/// penalty_weight * sum over adjacent pairs of max(0, z[k+1] - z[k]);
/// zero when ordering is not required.
double ordering_penalty(std::span<const double> z, const DesignProblem& problem);

/// Three-section closed-form fitness:
///   |(z1*z3/z2)^2 / z_load - z_target| + ordering penalty.
/// Requires exactly three positive components.
double closed_form_fitness(std::span<const double> z, const DesignProblem& problem);

/// General fitness via the two-port model: cascades one quarter-wave section
/// per component of z (load-adjacent first), evaluates the input impedance at
/// f0 and returns |Zin - z_target| + ordering penalty. Agrees with the
/// unpenalized closed_form_fitness term for three sections.
double cascade_fitness(std::span<const double> z, const DesignProblem& problem, double f0_hz);

/// true iff z is strictly decreasing from the load-adjacent component.
bool check_ordering(std::span<const double> z);

/// Verification sweep parameters. The default grid brackets the 5 GHz design
/// frequency symmetrically and lands on it exactly.
struct SweepSettings {
    double f0_hz = 5e9;
    double f_start_hz = 1e9;
    double f_stop_hz = 9e9;
    std::size_t n_points = 201;
};

void validate(const SweepSettings& settings);

/// Reflection sweep of a finished design. `impedances` are load-adjacent
/// first and are reversed internally into the source->load cascade order
/// expected by txline::sweep.
txline::SweepResult sweep_design(std::span<const double> impedances, double z_load,
                                 double z_ref, double f0_hz, std::span<const double> grid);

struct DesignResult {
    /// Winning section impedances, load-adjacent first.
    std::vector<double> impedances;
    /// Objective re-evaluated at the winner (penalty included).
    double fitness = 0.0;
    pso::ConvergenceTrace trace;
    /// Reflection at exactly f0, from the independent two-port sweep.
    double verified_db_at_f0 = 0.0;
    pso::Termination termination = pso::Termination::budget;
    /// Strict-ordering check of the winner. A violating result is reported
    /// with this flag false rather than silently accepted.
    bool ordering_ok = false;
    std::size_t iterations = 0;
    std::size_t non_finite_evaluations = 0;
};

/// Swarm configuration preloaded with this problem's bounds and the stock
/// hyperparameters (100 particles, w = 0.7, c1 = c2 = 1.8).
pso::SwarmConfig default_swarm_config(const DesignProblem& problem, std::uint64_t seed);

/// End-to-end design: optimizes closed_form_fitness (three sections) or
/// cascade_fitness (otherwise), re-validates ordering on the winner and
/// verifies it with a reflection computation at f0.
DesignResult design(const DesignProblem& problem, const pso::SwarmConfig& swarm,
                    const SweepSettings& sweep_settings);

} // namespace swarmmatch::matchdesign
