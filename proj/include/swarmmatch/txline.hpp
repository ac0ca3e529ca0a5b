#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace swarmmatch::txline {

using Complex = std::complex<double>;

/// Reported reflection magnitudes are floored here so a perfect match stays
/// plottable instead of going to -infinity dB.
constexpr double kDbFloor = -120.0;

/// One ideal lossless TEM line section. Electrical length is specified at the
/// design frequency f0 and scales linearly with frequency (no dispersion).
struct LineSection {
    double z0;
    double electrical_length_deg = 90.0;
    bool operator==(const LineSection&) const = default;
};

/// Chain (ABCD) matrix of a two-port: a, d dimensionless, b in ohms,
/// c in siemens. Default-constructed value is the identity network.
/// Lossless-line products keep determinant a*d - b*c = 1.
struct TwoPort {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
    Complex d{1.0, 0.0};

    Complex determinant() const { return a * d - b * c; }
};

/// Chain product: `lhs` sits on the source side of `rhs`.
TwoPort operator*(const TwoPort& lhs, const TwoPort& rhs);

/// ABCD matrix of a lossless line at `frequency_hz`, with the section's
/// electrical length defined at `f0_hz`:
///   a = d = cos(theta), b = j*z0*sin(theta), c = j*sin(theta)/z0.
TwoPort line_two_port(const LineSection& section, double frequency_hz, double f0_hz);

/// Chain product of `ports` ordered from the source/reference side toward the
/// load. Empty input yields the identity.
TwoPort cascade(std::span<const TwoPort> ports);

/// Zin = (a*ZL + b) / (c*ZL + d). Throws SingularityError when the
/// denominator is negligible against the numerator scale.
Complex input_impedance(const TwoPort& port, Complex z_load);

struct Reflection {
    Complex gamma;
    double magnitude_db;
};

/// gamma = (Zin - Zref) / (Zin + Zref), magnitude reported in dB with the
/// kDbFloor floor. Throws SingularityError when Zin = -Zref exactly.
Reflection reflection(Complex z_in, double z_ref);

/// 20*log10(magnitude) floored at kDbFloor.
double to_db(double magnitude);

struct SweepPoint {
    double frequency_hz;
    Complex gamma;
    double magnitude_db;
    /// false when this point hit a singular network computation.
    bool valid = true;
};

using SweepResult = std::vector<SweepPoint>;

/// Uniform grid of n_points frequencies covering [f_start, f_stop].
std::vector<double> linear_grid(double f_start, double f_stop, std::size_t n_points);

/// Reflection sweep of a cascade terminated in z_load, looking in from a
/// z_ref reference line.
///
/// `sections` are ordered source -> load (the load-side section last). Note
/// that design vectors elsewhere in this project are load-adjacent FIRST, so
/// callers holding a design (z1, z2, z3) must reverse it before sweeping.
/// Singular points are flagged rather than aborting the sweep.
SweepResult sweep(std::span<const LineSection> sections, double z_load, double z_ref,
                  double f0_hz, std::span<const double> grid);

} // namespace swarmmatch::txline
