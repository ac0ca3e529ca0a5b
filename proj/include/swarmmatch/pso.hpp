#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "swarmmatch/rng.hpp"

namespace swarmmatch::pso {

/// Objective contract: pure function of the position vector, returning a
/// fitness to minimize. Non-finite returns are treated as +infinity (never
/// adopted as a best) and counted in the run report.
using Objective = std::function<double(std::span<const double>)>;

/// Closed search interval for one dimension.
struct Bound {
    double low;
    double high;
    bool operator==(const Bound&) const = default;
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    bool operator==(const Particle&) const = default;
};

/// All engine hyperparameters. `bounds` fixes the search dimension; every
/// per-dimension field must either be empty (use the default) or match it.
struct SwarmConfig {
    std::size_t population = 100;
    double inertia_w = 0.7;
    double cognitive_c1 = 1.8;
    double social_c2 = 1.8;
    std::vector<Bound> bounds;
    /// Per-dimension velocity limit. Empty selects the default
    /// 0.1 * (high - low) for each dimension.
    std::vector<double> v_clamp;
    std::size_t max_iterations = 10000;
    double fitness_tolerance = 1e-6;
    std::uint64_t seed = 0;
    /// true: canonical update with per-component r1, r2 ~ U(0,1).
    /// false: deterministic update with r1 = r2 = 1.
    bool stochastic_update = true;

    std::size_t dimension() const { return bounds.size(); }
    /// v_clamp with defaults applied; requires valid bounds.
    std::vector<double> resolved_v_clamp() const;
};

/// Throws ConfigError unless the configuration is usable: population >= 1,
/// nonempty finite bounds with low < high, positive finite v_clamp entries of
/// matching dimension, finite coefficients, fitness_tolerance >= 0.
void validate(const SwarmConfig& config);

struct SwarmState {
    std::vector<Particle> particles;
    std::vector<double> global_best_position;
    double global_best_fitness = std::numeric_limits<double>::infinity();
    std::size_t iteration = 0;
    /// Objective evaluations that returned NaN/inf so far (run-report flag).
    std::size_t non_finite_evaluations = 0;
    UniformRng rng{0};
    bool operator==(const SwarmState&) const = default;
};

struct TracePoint {
    std::size_t iteration;
    double global_best_fitness;
    bool operator==(const TracePoint&) const = default;
};

/// Global best fitness per iteration; fitness column is non-increasing.
using ConvergenceTrace = std::vector<TracePoint>;

enum class Termination { tolerance, budget };

std::string_view to_string(Termination t);

struct RunResult {
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    ConvergenceTrace trace;
    Termination termination = Termination::budget;
    std::size_t iterations = 0;
    std::size_t non_finite_evaluations = 0;
};

/// Builds the iteration-0 swarm: positions uniform inside the bounds,
/// velocities uniform in [-v_clamp, +v_clamp], personal bests at the initial
/// positions, global best selected among them (lowest index wins ties).
///
/// Draw order is part of the contract: particles in index order; per particle
/// all position components, then all velocity components.
SwarmState initialize_swarm(const SwarmConfig& config, const Objective& objective);

/// Adopts (position, fitness) as the particle's personal best iff
/// fitness < best_fitness. Ties keep the incumbent; NaN never adopts.
void update_personal_best(Particle& particle, double fitness) noexcept;

/// One synchronous iteration:
///   v <- w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x), clamped per component
///   x <- x + v, clamped to bounds (a clamped component zeroes its velocity)
/// then all fitness evaluations complete before the global best is updated
/// once. In stochastic mode r1, r2 are fresh U(0,1) draws per particle,
/// shared across that particle's components; both are exactly 1 otherwise.
/// Draw order: particles in index order; per particle r1, then r2.
void step(SwarmState& state, const SwarmConfig& config, const Objective& objective);

/// Full optimization loop: initialize, then step until the global best
/// reaches fitness_tolerance or max_iterations steps have run. The trace
/// holds one point per iteration starting at iteration 0.
RunResult run(const SwarmConfig& config, const Objective& objective);

} // namespace swarmmatch::pso
