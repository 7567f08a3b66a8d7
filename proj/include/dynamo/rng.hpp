#pragma once

#include <cstdint>
#include <random>

#include "dynamo/vec3.hpp"

namespace dynamo {

/// Seeded sample stream built on std::mt19937_64, whose output sequence is
/// fixed by the standard. Real variates are derived from raw 64-bit words by
/// hand (not std::*_distribution, whose algorithms are implementation-defined),
/// so streams are reproducible across platforms.
///
/// Stream-split rule: the substream for (seed, index) is seeded with
/// splitmix64(seed ^ splitmix64(index + 1)). Sampling campaigns assign one
/// substream per fixed-size chunk of sample indices, so results do not depend
/// on the number of workers.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  static std::uint64_t splitmix64(std::uint64_t x);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on the unit sphere (Archimedes: z uniform in [-1,1], azimuth uniform).
  Vec3 unit_vector();
  /// Uniform in the ball of the given radius (radius-cubed rule).
  Vec3 in_ball(double radius);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dynamo
