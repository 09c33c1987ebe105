#ifndef TZ_CATALOG_HPP
#define TZ_CATALOG_HPP

#include "tz/field.hpp"
#include "tz/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tz {

/// Sheet selector for families whose defining equation has two branches in
/// the last coordinate.
enum class Branch { Positive, Negative };

/// A named hypersurface family instance: defining field, a deterministic
/// on-surface sampler, and the expected invariant when one is known.
struct SurfaceSpec {
  std::string name;
  int n = 0; // hypersurface dimension; ambient space is R^(n+1)
  Expr field = Expr::constant(0.0);
  /// Deterministic map (seed, index) -> point on the surface.
  std::function<Point(std::uint64_t seed, std::uint64_t index)> sampler;
  /// Signed invariant under the PaperNormal convention, when known.
  std::optional<Rational> expected;
  std::string sample_domain;
};

/// Chart parameters for a rotation hypersurface: u = (u1..un) with un > 0
/// and a univariate profile in x1 defined on (0, inf).
struct ChartParams {
  Eigen::VectorXd u;
  Expr profile = Expr::variable(1);
};

/// The rotation family (x^(n+1))^2 * ((x^1)^2 + ... + (x^n)^2)^n = 1,
/// 1 <= n <= 16. Its invariant has magnitude n^n / (n+1)^(n+1); the sign
/// under PaperNormal is negative for every n (stored signed in `expected`).
/// The sampler draws a radius in [0.3, 3] and a uniform direction, and takes
/// the requested sheet for x^(n+1) = +-r^(-n).
SurfaceSpec new_hypersurface(int n, Branch branch = Branch::Positive);

/// The classical bowl x3 * (x1^2 + x2^2) = 1 (n = 2), invariant -4/27.
SurfaceSpec classical_bowl();

/// The Calabi hypersurface x1 * ... * x^(n+1) = 1, 1 <= n <= 16, invariant
/// (-1)^n / (n+1)^(n+1). Sampled on the all-positive sheet.
SurfaceSpec calabi(int n);

/// Unit sphere in R^(n+1), 1 <= n <= 16, invariant 1.
SurfaceSpec unit_sphere(int n);

/// Two indefinite-signature relatives of the bowl, sampled on one sheet of
/// the region where the bracketed quadratic exceeds 1/4:
///   (x2^2 - x3^2 - x4^2)^3 * x1^2 = 1        in R^4 (n = 3)
///   (x2^2 - x3^2 - x4^2 - x5^2)^2 * x1 = 1   in R^5 (n = 4)
/// No expected invariant is recorded; verification is constancy-only.
std::vector<SurfaceSpec> vrancken_surfaces();

/// The built-in catalog: sphere, rotation family, and Calabi for n = 1..6,
/// plus the bowl and both indefinite surfaces.
std::vector<SurfaceSpec> default_catalog();

/// Maps chart parameters to an ambient point:
/// x^i = 2 u^n u^i / D (i <= n-1), x^n = u^n (D - 2) / D, x^(n+1) = f(u^n),
/// with D = (u^1)^2 + ... + (u^(n-1))^2 + 1. The image satisfies
/// (x^1)^2 + ... + (x^n)^2 = (u^n)^2.
///
/// Throws std::invalid_argument when u^n <= 0; profile domain errors
/// propagate.
Point rotation_chart(const ChartParams &params);

/// Implicit field of the rotation graph x^(n+1) = f(r), r = |(x^1..x^n)|:
/// returns f(sqrt((x^1)^2 + ... + (x^n)^2)) - x^(n+1) in n+1 variables.
Expr profile_field(int n, const Expr &profile);

} // namespace tz

#endif // TZ_CATALOG_HPP
