#pragma once

#include <ostream>
#include <string>

#include "swarmmatch/pso.hpp"
#include "swarmmatch/txline.hpp"

namespace swarmmatch::csv {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Header `iteration,global_best_fitness`, one row per trace point.
void write_trace(std::ostream& out, const pso::ConvergenceTrace& trace);

/// Header `frequency_hz,gamma_re,gamma_im,gamma_db`, one row per grid point.
/// Flagged (singular) points carry nan fields.
void write_sweep(std::ostream& out, const txline::SweepResult& result);

} // namespace swarmmatch::csv
