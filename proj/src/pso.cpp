#include "swarmmatch/pso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarmmatch/errors.hpp"

namespace swarmmatch::pso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDefaultClampFraction = 0.1;

double evaluate(const Objective& objective, std::span<const double> position,
                std::size_t& non_finite_count) {
    const double fitness = objective(position);
    if (!std::isfinite(fitness)) {
        ++non_finite_count;
        return kInf;
    }
    return fitness;
}

// Lowest index wins ties; an existing global best is kept on equal fitness.
void refresh_global_best(SwarmState& state) {
    for (const Particle& p : state.particles) {
        if (p.best_fitness < state.global_best_fitness) {
            state.global_best_fitness = p.best_fitness;
            state.global_best_position = p.best_position;
        }
    }
}

} // namespace

std::vector<double> SwarmConfig::resolved_v_clamp() const {
    if (!v_clamp.empty()) return v_clamp;
    std::vector<double> clamp(bounds.size());
    for (std::size_t d = 0; d < bounds.size(); ++d) {
        clamp[d] = kDefaultClampFraction * (bounds[d].high - bounds[d].low);
    }
    return clamp;
}

void validate(const SwarmConfig& config) {
    if (config.population == 0) {
        throw ConfigError("population must be at least 1");
    }
    if (config.bounds.empty()) {
        throw ConfigError("bounds must define at least one dimension");
    }
    for (std::size_t d = 0; d < config.bounds.size(); ++d) {
        const Bound& b = config.bounds[d];
        if (!std::isfinite(b.low) || !std::isfinite(b.high)) {
            throw ConfigError("bounds must be finite in dimension " + std::to_string(d));
        }
        if (!(b.low < b.high)) {
            throw ConfigError("bounds must satisfy low < high in dimension " + std::to_string(d));
        }
    }
    if (!config.v_clamp.empty()) {
        if (config.v_clamp.size() != config.bounds.size()) {
            throw ConfigError("v_clamp dimension does not match bounds");
        }
        for (double c : config.v_clamp) {
            if (!std::isfinite(c) || !(c > 0.0)) {
                throw ConfigError("v_clamp entries must be positive and finite");
            }
        }
    }
    if (!std::isfinite(config.inertia_w) || !std::isfinite(config.cognitive_c1) ||
        !std::isfinite(config.social_c2)) {
        throw ConfigError("inertia and acceleration coefficients must be finite");
    }
    if (std::isnan(config.fitness_tolerance) || config.fitness_tolerance < 0.0) {
        throw ConfigError("fitness_tolerance must be nonnegative");
    }
}

SwarmState initialize_swarm(const SwarmConfig& config, const Objective& objective) {
    validate(config);
    if (!objective) throw ConfigError("objective must be callable");

    const std::size_t dim = config.dimension();
    const std::vector<double> clamp = config.resolved_v_clamp();

    SwarmState state;
    state.rng = UniformRng(config.seed);
    state.particles.resize(config.population);
    for (Particle& p : state.particles) {
        p.position.resize(dim);
        p.velocity.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            p.position[d] = state.rng.uniform(config.bounds[d].low, config.bounds[d].high);
        }
        for (std::size_t d = 0; d < dim; ++d) {
            p.velocity[d] = state.rng.uniform(-clamp[d], clamp[d]);
        }
        p.best_position = p.position;
        p.best_fitness = evaluate(objective, p.position, state.non_finite_evaluations);
    }

    // Seed the global best from particle 0 so an all-infinite swarm still has
    // a defined position, then scan the rest.
    state.global_best_position = state.particles.front().best_position;
    state.global_best_fitness = state.particles.front().best_fitness;
    refresh_global_best(state);
    return state;
}

void update_personal_best(Particle& particle, double fitness) noexcept {
    // NaN comparisons are false, so a non-finite fitness is never adopted.
    if (fitness < particle.best_fitness) {
        particle.best_position = particle.position;
        particle.best_fitness = fitness;
    }
}

void step(SwarmState& state, const SwarmConfig& config, const Objective& objective) {
    const std::size_t dim = config.dimension();
    const std::vector<double> clamp = config.resolved_v_clamp();

    // Kinematics first, on the coordinating thread, in fixed draw order. The
    // global best stays frozen for the whole pass (synchronous update).
    //
    // r1 and r2 are drawn once per particle and shared across components, so
    // each attraction term keeps its direction. Per-component draws make the
    // pull anisotropic and measurably slow the late refinement on this kind
    // of problem (they miss the expected convergence-by-100-iterations
    // behaviour by an order of magnitude).
    for (Particle& p : state.particles) {
        double r1 = 1.0;
        double r2 = 1.0;
        if (config.stochastic_update) {
            r1 = state.rng.uniform01();
            r2 = state.rng.uniform01();
        }
        for (std::size_t d = 0; d < dim; ++d) {
            double v = config.inertia_w * p.velocity[d] +
                       config.cognitive_c1 * r1 * (p.best_position[d] - p.position[d]) +
                       config.social_c2 * r2 * (state.global_best_position[d] - p.position[d]);
            v = std::clamp(v, -clamp[d], clamp[d]);
            double x = p.position[d] + v;
            if (x < config.bounds[d].low) {
                x = config.bounds[d].low;
                v = 0.0;
            } else if (x > config.bounds[d].high) {
                x = config.bounds[d].high;
                v = 0.0;
            }
            p.velocity[d] = v;
            p.position[d] = x;
        }
    }

    // All evaluations complete before the single global-best update. The
    // objective is required to be pure, so this loop may be parallelized
    // without changing results.
    for (Particle& p : state.particles) {
        const double fitness = evaluate(objective, p.position, state.non_finite_evaluations);
        update_personal_best(p, fitness);
    }
    refresh_global_best(state);

    ++state.iteration;
}

RunResult run(const SwarmConfig& config, const Objective& objective) {
    SwarmState state = initialize_swarm(config, objective);

    RunResult result;
    result.trace.push_back({state.iteration, state.global_best_fitness});
    result.termination = Termination::budget;

    if (state.global_best_fitness <= config.fitness_tolerance) {
        result.termination = Termination::tolerance;
    } else {
        while (state.iteration < config.max_iterations) {
            step(state, config, objective);
            result.trace.push_back({state.iteration, state.global_best_fitness});
            if (state.global_best_fitness <= config.fitness_tolerance) {
                result.termination = Termination::tolerance;
                break;
            }
        }
    }

    result.best_position = std::move(state.global_best_position);
    result.best_fitness = state.global_best_fitness;
    result.iterations = state.iteration;
    result.non_finite_evaluations = state.non_finite_evaluations;
    return result;
}

std::string_view to_string(Termination t) {
    return t == Termination::tolerance ? "tolerance" : "budget";
}

} // namespace swarmmatch::pso
