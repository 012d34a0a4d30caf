#pragma once

#include <cstdint>
#include <random>

#include "dsg/model.hpp"

namespace dsg {

/// Seeded generator with a portable uniform: doubles are built from raw
/// mt19937_64 output (the engine is fully specified by the standard,
/// std::uniform_real_distribution is not), so a seed pins results across
/// platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// Draws an instance spanning every equilibrium regime: gamma from
/// {0.25, 0.5, 1}, rewards in [0.2, 3], c up to 1.45 r_g (covering
/// c > r_g) and m in [-2 r_f, 2 r_f] (covering m >= r_f and
/// m < -gamma r_f).
inline GameInstance sample_instance(Rng& rng) {
    static constexpr double kGammas[] = {0.25, 0.5, 1.0};
    const double gamma = kGammas[rng.uniform_int(0, 2)];
    const double r_f = rng.uniform(0.2, 3.0);
    const double r_g = rng.uniform(0.2, 3.0);
    const double c = r_g * rng.uniform(0.05, 1.45);
    const double m = r_f * rng.uniform(-2.0, 2.0);
    return GameInstance(r_f, r_g, c, m, gamma);
}

} // namespace dsg
