#include "tz/sampling.hpp"

#include <cmath>
#include <numbers>

namespace tz {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

} // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : state_(mix((seed ^ 0x6A09E667F3BCC909ull) + kGolden * (index + 1))) {}

std::uint64_t SampleStream::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double SampleStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SampleStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

double SampleStream::normal() {
  // u1 in (0, 1] so the log stays finite.
  double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Point unit_direction(SampleStream &rng, int m) {
  Point direction(m);
  for (;;) {
    for (int i = 0; i < m; ++i)
      direction[i] = rng.normal();
    double norm = direction.norm();
    if (norm > 1e-12)
      return direction / norm;
  }
}

} // namespace tz
