#ifndef TZ_VERIFIER_HPP
#define TZ_VERIFIER_HPP

#include "tz/catalog.hpp"
#include "tz/kernel.hpp"
#include "tz/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tz {

/// Count of samples skipped for one failure reason.
struct SkipCount {
  std::string reason;
  std::size_t count = 0;
};

/// Outcome of a statistical constancy run over sampled surface points.
struct InvariantReport {
  std::string name;
  int n = 0;
  Orientation orientation = Orientation::PaperNormal;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  double tolerance = 1e-8;
  std::vector<InvariantSample> values; // in sample-index order
  double mean = 0.0;
  double max_abs_deviation = 0.0;
  std::optional<Rational> expected;
  bool pass = false;
  std::vector<SkipCount> skipped; // sorted by reason

  std::size_t skipped_total() const;
};

/// Samples `count` points of the spec (deterministically from `seed`),
/// evaluates the invariant at each, and aggregates. Points that fail a
/// kernel precondition are counted per reason, never hidden. Passing means
/// max |Tz_i - mean| <= tol * max(1, |mean|) and, when an expected value is
/// recorded, |mean - expected| <= tol * max(1, |expected|).
///
/// Throws AllPointsDegenerateError when every sample was skipped.
InvariantReport verify_constancy(const SurfaceSpec &spec, std::size_t count,
                                 std::uint64_t seed, Orientation o, double tol,
                                 const KernelOptions &options = {});

/// Residual of the Tzitzeica condition
/// det[[F_ij, F_i], [F_j, 0]] = -T |F_i x^i|^(n+2) at one point, normalized:
/// (det + T |F_i x^i|^(n+2)) / max(|det|, |T| |F_i x^i|^(n+2), 1).
/// Vanishes exactly where the invariant is the constant T.
double condition_residual(const Expr &field, const Point &p,
                          const Rational &target,
                          const KernelOptions &options = {});

/// Residual of the reduced profile equation
/// f''(f')^(n-1) = -T t^(n-1) |t f' - f|^(n+2) at abscissa t > 0,
/// relative-normalized like condition_residual.
double ode_residual(int n, const Expr &profile, double t,
                    const Rational &target);

/// Exact solution of the degree-matching equation
/// a - 2 + (a - 1)(n - 1) = n - 1 + a(n + 2), which is a = -n.
Rational solve_exponent(int n);

/// Exact closed-form invariant of the rotation family:
/// (-n)^n / (n+1)^(n+1), 1 <= n <= 200.
Rational tz_closed_form(int n);

/// One JSON document with keys name, n, orientation, seed, count, mean,
/// maxAbsDeviation, expected (rational string or null), pass, skipped[].
std::string to_json(const InvariantReport &report);

/// CSV with one row per sample: point coordinates, K, d, tz.
std::string to_csv(const InvariantReport &report);

const char *orientation_name(Orientation o);

} // namespace tz

#endif // TZ_VERIFIER_HPP
