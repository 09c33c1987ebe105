#ifndef TZ_KERNEL_HPP
#define TZ_KERNEL_HPP

#include "tz/field.hpp"

#include <Eigen/Dense>

namespace tz {

/// Normal convention for an implicit hypersurface F = 0. PaperNormal means
/// N = -grad F / |grad F|; Opposite flips the normal, which multiplies the
/// Gaussian curvature (and hence the Tzitzeica invariant) by (-1)^n.
enum class Orientation { PaperNormal, Opposite };

/// Degeneracy thresholds; every one is overridable from the CLI.
struct KernelOptions {
  /// A point is not immersed when |grad F| <= gradient_epsilon * max(1, |p|).
  double gradient_epsilon = 1e-12;
  /// The invariant is undefined when the support distance d <= this.
  double distance_epsilon = 1e-12;
  /// A point is off-surface when |F(p)| exceeds this.
  double on_surface_tolerance = 1e-9;
};

/// Invariant data of one surface point.
struct InvariantSample {
  Point point;
  double curvature = 0.0;     // Gaussian curvature K
  double distance = 0.0;      // support distance d >= 0
  double tzitzeica = 0.0;     // K / d^(n+2)
  double gradient_norm = 0.0; // |grad F| at the point
};

/// The (m+1) x (m+1) symmetric matrix [[F_ij, F_i], [F_j, 0]] built from a
/// second-order jet of an m-variable field.
Eigen::MatrixXd bordered_hessian(const Jet2 &jet);

/// Determinant by row reduction with partial pivoting. Matrices up to 18x18;
/// exactly singular input returns 0.0.
double determinant(Eigen::MatrixXd matrix);

/// Gaussian curvature of the hypersurface F = 0 at p:
/// K = -det[[F_ij, F_i], [F_j, 0]] / |grad F|^(n+2) for the PaperNormal
/// convention, times (-1)^n for Opposite. Ambient dimension m = n + 1.
///
/// Throws NotImmersedError or OffSurfaceError when the preconditions fail.
double gaussian_curvature(const Expr &field, const Point &p, Orientation o,
                          const KernelOptions &options = {});

/// Distance from the origin to the tangent hyperplane at p:
/// d = |F_i x^i| / |grad F|. A zero result is legal but marks the invariant
/// as undefined downstream.
double support_distance(const Expr &field, const Point &p,
                        const KernelOptions &options = {});

/// The full centroaffine sample: K, d and Tzitzeica = K / d^(n+2).
///
/// Throws NotImmersedError, OffSurfaceError, or TangentThroughOriginError
/// when d <= distance_epsilon.
InvariantSample tzitzeica_invariant(const Expr &field, const Point &p,
                                    Orientation o,
                                    const KernelOptions &options = {});

} // namespace tz

#endif // TZ_KERNEL_HPP
