#pragma once

#include <cstdint>
#include <random>

namespace swarmmatch {

/// Seedable uniform generator used everywhere randomness is needed.
///
/// Wraps std::mt19937_64 with an explicit 53-bit mapping to [0, 1) instead of
/// std::uniform_real_distribution, whose output is implementation-defined.
/// Identical seeds therefore produce identical streams on every platform,
/// which the golden-file and determinism tests rely on.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1), 53 random mantissa bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [low, high).
    double uniform(double low, double high) { return low + uniform01() * (high - low); }

    bool operator==(const UniformRng&) const = default;

private:
    std::mt19937_64 engine_;
};

} // namespace swarmmatch
