#ifndef TZ_SAMPLING_HPP
#define TZ_SAMPLING_HPP

#include "tz/field.hpp"

#include <cstdint>

namespace tz {

/// Counter-based random stream: the whole state derives from (seed, index),
/// so sample i is identical whether samples are drawn serially or by any
/// number of workers.
class SampleStream {
public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_unit();

  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller (one variate per call).
  double normal();

private:
  std::uint64_t state_;
};

/// Uniform direction on the unit sphere of R^m (normalized standard normal
/// variates).
Point unit_direction(SampleStream &rng, int m);

} // namespace tz

#endif // TZ_SAMPLING_HPP
