#include "swarmmatch/txline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "swarmmatch/errors.hpp"

namespace swarmmatch::txline {

TwoPort operator*(const TwoPort& lhs, const TwoPort& rhs) {
    return TwoPort{
        lhs.a * rhs.a + lhs.b * rhs.c,
        lhs.a * rhs.b + lhs.b * rhs.d,
        lhs.c * rhs.a + lhs.d * rhs.c,
        lhs.c * rhs.b + lhs.d * rhs.d,
    };
}

TwoPort line_two_port(const LineSection& section, double frequency_hz, double f0_hz) {
    if (!(section.z0 > 0.0) || !std::isfinite(section.z0)) {
        throw DomainError("characteristic impedance must be positive");
    }
    if (!std::isfinite(section.electrical_length_deg)) {
        throw DomainError("electrical length must be finite");
    }
    if (!(f0_hz > 0.0) || !std::isfinite(f0_hz)) {
        throw DomainError("design frequency f0 must be positive");
    }
    if (frequency_hz < 0.0 || !std::isfinite(frequency_hz)) {
        throw DomainError("frequency must be nonnegative");
    }

    const double theta =
        section.electrical_length_deg * (std::numbers::pi / 180.0) * (frequency_hz / f0_hz);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return TwoPort{
        Complex{ct, 0.0},
        Complex{0.0, section.z0 * st},
        Complex{0.0, st / section.z0},
        Complex{ct, 0.0},
    };
}

TwoPort cascade(std::span<const TwoPort> ports) {
    TwoPort chain;
    for (const TwoPort& port : ports) chain = chain * port;
    return chain;
}

Complex input_impedance(const TwoPort& port, Complex z_load) {
    const Complex numerator = port.a * z_load + port.b;
    const Complex denominator = port.c * z_load + port.d;
    const double scale = std::abs(port.a * z_load) + std::abs(port.b);
    if (std::abs(denominator) <= 1e-12 * scale) {
        throw SingularityError("input impedance: near-singular denominator");
    }
    return numerator / denominator;
}

double to_db(double magnitude) {
    if (!(magnitude > 0.0)) return kDbFloor;
    return std::max(20.0 * std::log10(magnitude), kDbFloor);
}

Reflection reflection(Complex z_in, double z_ref) {
    if (!(z_ref > 0.0) || !std::isfinite(z_ref)) {
        throw DomainError("reference impedance must be positive");
    }
    const Complex denominator = z_in + z_ref;
    if (denominator == Complex{0.0, 0.0}) {
        throw SingularityError("reflection: Zin equals -Zref");
    }
    const Complex gamma = (z_in - z_ref) / denominator;
    return Reflection{gamma, to_db(std::abs(gamma))};
}

std::vector<double> linear_grid(double f_start, double f_stop, std::size_t n_points) {
    if (n_points == 0) throw DomainError("frequency grid needs at least one point");
    if (!(f_start > 0.0) || !std::isfinite(f_start) || !std::isfinite(f_stop) ||
        f_stop < f_start) {
        throw DomainError("frequency grid requires 0 < f_start <= f_stop");
    }
    std::vector<double> grid(n_points);
    if (n_points == 1) {
        grid[0] = f_start;
        return grid;
    }
    const double df = (f_stop - f_start) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        grid[i] = f_start + static_cast<double>(i) * df;
    }
    return grid;
}

SweepResult sweep(std::span<const LineSection> sections, double z_load, double z_ref,
                  double f0_hz, std::span<const double> grid) {
    if (grid.empty()) throw DomainError("sweep grid must be nonempty");
    if (!(z_load > 0.0) || !std::isfinite(z_load)) {
        throw DomainError("load impedance must be positive");
    }
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    SweepResult result;
    result.reserve(grid.size());
    for (double frequency : grid) {
        if (!(frequency > 0.0)) throw DomainError("sweep frequencies must be positive");
        TwoPort chain;
        for (const LineSection& section : sections) {
            chain = chain * line_two_port(section, frequency, f0_hz);
        }
        try {
            const Complex z_in = input_impedance(chain, Complex{z_load, 0.0});
            const Reflection r = reflection(z_in, z_ref);
            result.push_back({frequency, r.gamma, r.magnitude_db, true});
        } catch (const SingularityError&) {
            result.push_back({frequency, Complex{kNaN, kNaN}, kNaN, false});
        }
    }
    return result;
}

} // namespace swarmmatch::txline
