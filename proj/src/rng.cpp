#include "dynamo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dynamo {

std::uint64_t SampleStream::splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(seed ^ splitmix64(index + 1))) {}

double SampleStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Vec3 SampleStream::unit_vector() {
  const double z = uniform(-1.0, 1.0);
  const double phi = 2.0 * std::numbers::pi * uniform();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

Vec3 SampleStream::in_ball(double radius) {
  const Vec3 dir = unit_vector();
  return (radius * std::cbrt(uniform())) * dir;
}

}  // namespace dynamo
