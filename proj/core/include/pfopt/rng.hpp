#pragma once

#include <cstdint>

namespace pfopt {

/// Counter-based SplitMix64 stream. Output j is mix64(seed + (j+1)*GAMMA),
/// so a (seed, stream) pair names the whole sequence and draws are bitwise
/// reproducible across platforms. Normal variates go through the AS 241
/// inverse CDF; gamma uses Marsaglia-Tsang on the same stream.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0,1).
    double next_uniform();

    /// Standard normal via inverse-CDF of next_uniform().
    double next_normal();

    /// Gamma(shape, scale), shape > 0.
    double next_gamma(double shape, double scale);

  private:
    std::uint64_t state_;
};

}  // namespace pfopt
