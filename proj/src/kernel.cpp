#include "tz/kernel.hpp"

#include "tz/errors.hpp"

#include <cmath>
#include <sstream>

namespace tz {

namespace {

constexpr Eigen::Index kMaxDeterminantSize = 18;

struct PointData {
  Jet2 jet;
  double gradient_norm = 0.0;
  double support_numerator = 0.0; // |F_i x^i|
};

PointData evaluate_immersed(const Expr &field, const Point &p,
                            const KernelOptions &options) {
  PointData data;
  data.jet = eval_jet2(field, p);
  data.gradient_norm = data.jet.gradient.norm();
  double threshold = options.gradient_epsilon * std::max(1.0, p.norm());
  if (data.gradient_norm <= threshold) {
    std::ostringstream msg;
    msg << "surface is not immersed: |grad F| = " << data.gradient_norm
        << " <= " << threshold;
    throw NotImmersedError(msg.str());
  }
  data.support_numerator = std::abs(data.jet.gradient.dot(p));
  return data;
}

void check_on_surface(double value, const KernelOptions &options) {
  if (std::abs(value) > options.on_surface_tolerance) {
    std::ostringstream msg;
    msg << "point is off the surface: |F(p)| = " << std::abs(value) << " > "
        << options.on_surface_tolerance;
    throw OffSurfaceError(msg.str());
  }
}

double curvature_from(const PointData &data, Orientation o) {
  const Eigen::Index m = data.jet.gradient.size(); // ambient, m = n + 1
  double det = determinant(bordered_hessian(data.jet));
  double k = -det / std::pow(data.gradient_norm, static_cast<double>(m + 1));
  // Flipping the normal multiplies K by (-1)^n, n = m - 1.
  if (o == Orientation::Opposite && (m - 1) % 2 != 0)
    k = -k;
  return k;
}

} // namespace

Eigen::MatrixXd bordered_hessian(const Jet2 &jet) {
  const Eigen::Index m = jet.gradient.size();
  if (m < 1 || jet.hessian.rows() != m || jet.hessian.cols() != m)
    throw std::invalid_argument("jet has inconsistent dimensions");
  Eigen::MatrixXd bordered(m + 1, m + 1);
  bordered.topLeftCorner(m, m) = jet.hessian;
  bordered.topRightCorner(m, 1) = jet.gradient;
  bordered.bottomLeftCorner(1, m) = jet.gradient.transpose();
  bordered(m, m) = 0.0;
  return bordered;
}

double determinant(Eigen::MatrixXd matrix) {
  const Eigen::Index m = matrix.rows();
  if (matrix.cols() != m)
    throw std::invalid_argument("determinant requires a square matrix");
  if (m > kMaxDeterminantSize)
    throw std::invalid_argument("determinant size cap is 18");
  if (!matrix.allFinite())
    throw std::invalid_argument("determinant requires finite entries");
  double det = 1.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::Index pivot_row = k;
    double pivot_magnitude = std::abs(matrix(k, k));
    for (Eigen::Index i = k + 1; i < m; ++i) {
      if (std::abs(matrix(i, k)) > pivot_magnitude) {
        pivot_magnitude = std::abs(matrix(i, k));
        pivot_row = i;
      }
    }
    if (matrix(pivot_row, k) == 0.0)
      return 0.0;
    if (pivot_row != k) {
      matrix.row(pivot_row).swap(matrix.row(k));
      det = -det;
    }
    det *= matrix(k, k);
    for (Eigen::Index i = k + 1; i < m; ++i) {
      double factor = matrix(i, k) / matrix(k, k);
      matrix.row(i).tail(m - k) -= factor * matrix.row(k).tail(m - k);
    }
  }
  return det;
}

double gaussian_curvature(const Expr &field, const Point &p, Orientation o,
                          const KernelOptions &options) {
  PointData data = evaluate_immersed(field, p, options);
  check_on_surface(data.jet.value, options);
  return curvature_from(data, o);
}

double support_distance(const Expr &field, const Point &p,
                        const KernelOptions &options) {
  PointData data = evaluate_immersed(field, p, options);
  return data.support_numerator / data.gradient_norm;
}

InvariantSample tzitzeica_invariant(const Expr &field, const Point &p,
                                    Orientation o,
                                    const KernelOptions &options) {
  PointData data = evaluate_immersed(field, p, options);
  check_on_surface(data.jet.value, options);

  InvariantSample sample;
  sample.point = p;
  sample.gradient_norm = data.gradient_norm;
  sample.distance = data.support_numerator / data.gradient_norm;
  if (sample.distance <= options.distance_epsilon) {
    std::ostringstream msg;
    msg << "tangent hyperplane passes through the origin: d = "
        << sample.distance;
    throw TangentThroughOriginError(msg.str());
  }
  sample.curvature = curvature_from(data, o);
  const Eigen::Index m = p.size();
  sample.tzitzeica =
      sample.curvature / std::pow(sample.distance, static_cast<double>(m + 1));
  return sample;
}

} // namespace tz
