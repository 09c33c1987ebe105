#ifndef TZ_TESTS_FINITE_DIFF_HPP
#define TZ_TESTS_FINITE_DIFF_HPP

#include "tz/field.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

// Central-difference oracle built on field values only, independent of the
// jet propagation rules it is used to check. Values are accumulated in long
// double so the h^2 divisor does not amplify rounding noise past the 1e-6
// comparison tolerance.
namespace tztest {

inline long double eval_ld(const tz::detail::ExprNode &node,
                           const std::vector<long double> &p) {
  using tz::detail::NodeKind;
  switch (node.kind) {
  case NodeKind::Constant:
    return node.value;
  case NodeKind::Variable:
    return p[static_cast<std::size_t>(node.index - 1)];
  case NodeKind::Negate:
    return -eval_ld(*node.a, p);
  case NodeKind::Add:
    return eval_ld(*node.a, p) + eval_ld(*node.b, p);
  case NodeKind::Subtract:
    return eval_ld(*node.a, p) - eval_ld(*node.b, p);
  case NodeKind::Multiply:
    return eval_ld(*node.a, p) * eval_ld(*node.b, p);
  case NodeKind::Divide: {
    long double denominator = eval_ld(*node.b, p);
    if (denominator == 0.0L)
      throw std::domain_error("oracle: division by zero");
    return eval_ld(*node.a, p) / denominator;
  }
  case NodeKind::Power: {
    long double base = eval_ld(*node.a, p);
    if (node.exponent == 0)
      return 1.0L;
    long double magnitude = 1.0L;
    for (int i = 0; i < std::abs(node.exponent); ++i)
      magnitude *= base;
    if (node.exponent > 0)
      return magnitude;
    if (magnitude == 0.0L)
      throw std::domain_error("oracle: zero to a negative power");
    return 1.0L / magnitude;
  }
  case NodeKind::Sqrt: {
    long double inner = eval_ld(*node.a, p);
    if (inner < 0.0L)
      throw std::domain_error("oracle: sqrt of a negative value");
    return sqrtl(inner);
  }
  case NodeKind::Abs:
    return fabsl(eval_ld(*node.a, p));
  }
  throw std::logic_error("oracle: unreachable node kind");
}

inline std::vector<long double> to_ld(const tz::Point &p) {
  std::vector<long double> coords(static_cast<std::size_t>(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i)
    coords[static_cast<std::size_t>(i)] = p[i];
  return coords;
}

inline Eigen::VectorXd fd_gradient(const tz::Expr &field, const tz::Point &p,
                                   double h = 1e-5) {
  const auto &root = *field.root();
  std::vector<long double> coords = to_ld(p);
  Eigen::VectorXd gradient(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const std::size_t c = static_cast<std::size_t>(i);
    const long double original = coords[c];
    coords[c] = original + h;
    long double forward = eval_ld(root, coords);
    coords[c] = original - h;
    long double backward = eval_ld(root, coords);
    coords[c] = original;
    gradient[i] = static_cast<double>((forward - backward) / (2.0L * h));
  }
  return gradient;
}

inline Eigen::MatrixXd fd_hessian(const tz::Expr &field, const tz::Point &p,
                                  double h = 1e-5) {
  const auto &root = *field.root();
  const Eigen::Index m = p.size();
  std::vector<long double> coords = to_ld(p);
  const long double center = eval_ld(root, coords);
  Eigen::MatrixXd hessian(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::size_t ci = static_cast<std::size_t>(i);
    const long double oi = coords[ci];
    coords[ci] = oi + h;
    long double forward = eval_ld(root, coords);
    coords[ci] = oi - h;
    long double backward = eval_ld(root, coords);
    coords[ci] = oi;
    hessian(i, i) = static_cast<double>(
        (forward - 2.0L * center + backward) / (static_cast<long double>(h) * h));
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const std::size_t cj = static_cast<std::size_t>(j);
      const long double oj = coords[cj];
      coords[ci] = oi + h;
      coords[cj] = oj + h;
      long double pp = eval_ld(root, coords);
      coords[cj] = oj - h;
      long double pm = eval_ld(root, coords);
      coords[ci] = oi - h;
      coords[cj] = oj + h;
      long double mp = eval_ld(root, coords);
      coords[cj] = oj - h;
      long double mm = eval_ld(root, coords);
      coords[ci] = oi;
      coords[cj] = oj;
      hessian(i, j) = static_cast<double>(
          (pp - pm - mp + mm) / (4.0L * static_cast<long double>(h) * h));
      hessian(j, i) = hessian(i, j);
    }
  }
  return hessian;
}

/// Entrywise |a - b| <= tol * max(1, largest |b| entry).
template <typename A, typename B>
bool close_to_scale(const A &a, const B &b, double tol) {
  double scale = 1.0;
  for (Eigen::Index i = 0; i < b.size(); ++i)
    scale = std::max(scale, std::abs(b(i)));
  return ((a - b).cwiseAbs().maxCoeff() <= tol * scale);
}

} // namespace tztest

#endif // TZ_TESTS_FINITE_DIFF_HPP
