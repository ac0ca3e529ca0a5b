#include "swarmmatch/csv.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace swarmmatch::csv {

std::string format_double(double value) {
    std::array<char, 64> buffer;
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    // 64 chars always suffice for the shortest round-trip form of a double.
    return std::string(buffer.data(), ptr);
}

void write_trace(std::ostream& out, const pso::ConvergenceTrace& trace) {
    out << "iteration,global_best_fitness\n";
    for (const pso::TracePoint& point : trace) {
        out << point.iteration << ',' << format_double(point.global_best_fitness) << '\n';
    }
}

void write_sweep(std::ostream& out, const txline::SweepResult& result) {
    out << "frequency_hz,gamma_re,gamma_im,gamma_db\n";
    for (const txline::SweepPoint& point : result) {
        out << format_double(point.frequency_hz) << ',' << format_double(point.gamma.real())
            << ',' << format_double(point.gamma.imag()) << ','
            << format_double(point.magnitude_db) << '\n';
    }
}

} // namespace swarmmatch::csv
