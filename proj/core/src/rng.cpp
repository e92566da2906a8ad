#include "pfopt/rng.hpp"

#include "pfopt/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace pfopt {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}
}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : state_(seed ^ mix64(stream * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL)) {}

std::uint64_t Rng::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double Rng::next_uniform() {
    // 53 mantissa bits, centered so the result is in the open interval.
    const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return u;
}

double Rng::next_normal() { return normal_quantile(next_uniform()); }

double Rng::next_gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("next_gamma: shape and scale must be positive");
    if (shape < 1.0) {
        // Boost to shape+1 and scale back by u^(1/shape).
        const double u = next_uniform();
        return next_gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = next_normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = next_uniform();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return scale * d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

}  // namespace pfopt
