#include "esdlab/sampling.hpp"

#include <cmath>
#include <numbers>

#include "esdlab/entanglement.hpp"

namespace esdlab {

namespace {

Complex random_in_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = radius * std::sqrt(unit(rng));
    return std::polar(r, 2.0 * std::numbers::pi * unit(rng));
}

}  // namespace

XState random_xstate(std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    double pops[4];
    double total = 0.0;
    for (double& p : pops) total += (p = expo(rng));
    XState s;
    s.a = pops[0] / total;
    s.b = pops[1] / total;
    s.c = pops[2] / total;
    s.d = 1.0 - s.a - s.b - s.c;
    if (s.d < 0.0) s.d = 0.0;
    // Shrink slightly so the block constraints hold with room to spare.
    s.z = random_in_disk(rng, std::sqrt(s.b * s.c) * (1.0 - 1e-12));
    s.w = random_in_disk(rng, std::sqrt(s.a * s.d) * (1.0 - 1e-12));
    return s;
}

XState random_entangled_xstate(std::mt19937_64& rng, double min_concurrence) {
    for (;;) {
        XState s = random_xstate(rng);
        if (concurrence_x(s).value() > min_concurrence) return s;
    }
}

XState random_wzero_xstate(std::mt19937_64& rng) {
    XState s = random_xstate(rng);
    s.w = 0.0;
    return s;
}

}  // namespace esdlab
