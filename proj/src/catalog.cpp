#include "tz/catalog.hpp"

#include "tz/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace tz {

namespace {

constexpr int kMaxDimension = 16;

void check_n(int n) {
  if (n < 1 || n > kMaxDimension)
    throw std::invalid_argument("hypersurface dimension n must be in 1..16");
}

Expr radial_square(int n) {
  Expr sum = pow(Expr::variable(1), 2);
  for (int i = 2; i <= n; ++i)
    sum = sum + pow(Expr::variable(i), 2);
  return sum;
}

} // namespace

SurfaceSpec new_hypersurface(int n, Branch branch) {
  check_n(n);
  SurfaceSpec spec;
  spec.name = "tzitzeica";
  spec.n = n;
  spec.field =
      pow(Expr::variable(n + 1), 2) * pow(radial_square(n), n) -
      Expr::constant(1.0);
  // Signed under PaperNormal: -n^n / (n+1)^(n+1) for every n; the closed
  // form (-n)^n / (n+1)^(n+1) gives the magnitude.
  spec.expected = -(Rational::integer_power(n, static_cast<unsigned>(n)) /
                    Rational::integer_power(n + 1, static_cast<unsigned>(n) + 1));
  double sheet = branch == Branch::Positive ? 1.0 : -1.0;
  spec.sampler = [n, sheet](std::uint64_t seed, std::uint64_t index) {
    SampleStream rng(seed, index);
    double r = rng.uniform(0.3, 3.0);
    Point direction = unit_direction(rng, n);
    Point p(n + 1);
    p.head(n) = r * direction;
    p[n] = sheet * std::pow(r, -static_cast<double>(n));
    return p;
  };
  spec.sample_domain =
      std::string("radius r in [0.3, 3], uniform direction in R^n, ") +
      (branch == Branch::Positive ? "positive" : "negative") +
      " sheet x" + std::to_string(n + 1) + " = " +
      (branch == Branch::Positive ? "" : "-") + "r^-" + std::to_string(n);
  return spec;
}

SurfaceSpec classical_bowl() {
  SurfaceSpec spec;
  spec.name = "bowl";
  spec.n = 2;
  spec.field = Expr::variable(3) *
                   (pow(Expr::variable(1), 2) + pow(Expr::variable(2), 2)) -
               Expr::constant(1.0);
  spec.expected = Rational(-4, 27);
  spec.sampler = [](std::uint64_t seed, std::uint64_t index) {
    SampleStream rng(seed, index);
    double r = rng.uniform(0.3, 3.0);
    Point direction = unit_direction(rng, 2);
    Point p(3);
    p.head(2) = r * direction;
    p[2] = 1.0 / (r * r);
    return p;
  };
  spec.sample_domain = "radius r in [0.3, 3], uniform direction, x3 = r^-2";
  return spec;
}

SurfaceSpec calabi(int n) {
  check_n(n);
  SurfaceSpec spec;
  spec.name = "calabi";
  spec.n = n;
  Expr product = Expr::variable(1);
  for (int i = 2; i <= n + 1; ++i)
    product = product * Expr::variable(i);
  spec.field = product - Expr::constant(1.0);
  Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
  spec.expected =
      sign / Rational::integer_power(n + 1, static_cast<unsigned>(n) + 1);
  spec.sampler = [n](std::uint64_t seed, std::uint64_t index) {
    SampleStream rng(seed, index);
    Point p(n + 1);
    double product = 1.0;
    for (int i = 0; i < n; ++i) {
      p[i] = rng.uniform(0.5, 2.0);
      product *= p[i];
    }
    p[n] = 1.0 / product;
    return p;
  };
  spec.sample_domain = "x1..xn in [0.5, 2], last coordinate 1/(x1*...*xn)";
  return spec;
}

SurfaceSpec unit_sphere(int n) {
  check_n(n);
  SurfaceSpec spec;
  spec.name = "sphere";
  spec.n = n;
  spec.field = radial_square(n + 1) - Expr::constant(1.0);
  spec.expected = Rational(1);
  spec.sampler = [n](std::uint64_t seed, std::uint64_t index) {
    SampleStream rng(seed, index);
    return unit_direction(rng, n + 1);
  };
  spec.sample_domain = "uniform direction on the unit sphere of R^(n+1)";
  return spec;
}

std::vector<SurfaceSpec> vrancken_surfaces() {
  std::vector<SurfaceSpec> specs(2);

  // (x2^2 - x3^2 - x4^2)^3 * x1^2 = 1 in R^4. The quadratic q is kept above
  // 1/4 to stay on one connected sheet.
  SurfaceSpec &cubic = specs[0];
  cubic.name = "vrancken3";
  cubic.n = 3;
  cubic.field =
      pow(pow(Expr::variable(2), 2) - pow(Expr::variable(3), 2) -
              pow(Expr::variable(4), 2),
          3) *
          pow(Expr::variable(1), 2) -
      Expr::constant(1.0);
  cubic.sampler = [](std::uint64_t seed, std::uint64_t index) {
    SampleStream rng(seed, index);
    double q = rng.uniform(0.5, 2.0);
    double z = rng.uniform(-1.0, 1.0);
    double w = rng.uniform(-1.0, 1.0);
    Point p(4);
    p[0] = std::pow(q, -1.5);
    p[1] = std::sqrt(q + z * z + w * w);
    p[2] = z;
    p[3] = w;
    return p;
  };
  cubic.sample_domain =
      "q = x2^2-x3^2-x4^2 in [0.5, 2], x3, x4 in [-1, 1], x1 = q^-3/2 > 0";

  // (x2^2 - x3^2 - x4^2 - x5^2)^2 * x1 = 1 in R^5. A 4-dimensional
  // hypersurface, occasionally labeled 5-dimensional after its ambient space.
  SurfaceSpec &quartic = specs[1];
  quartic.name = "vrancken4";
  quartic.n = 4;
  quartic.field =
      pow(pow(Expr::variable(2), 2) - pow(Expr::variable(3), 2) -
              pow(Expr::variable(4), 2) - pow(Expr::variable(5), 2),
          2) *
          Expr::variable(1) -
      Expr::constant(1.0);
  quartic.sampler = [](std::uint64_t seed, std::uint64_t index) {
    SampleStream rng(seed, index);
    double q = rng.uniform(0.5, 2.0);
    double z = rng.uniform(-1.0, 1.0);
    double w = rng.uniform(-1.0, 1.0);
    double t = rng.uniform(-1.0, 1.0);
    Point p(5);
    p[0] = 1.0 / (q * q);
    p[1] = std::sqrt(q + z * z + w * w + t * t);
    p[2] = z;
    p[3] = w;
    p[4] = t;
    return p;
  };
  quartic.sample_domain =
      "q = x2^2-x3^2-x4^2-x5^2 in [0.5, 2], x3..x5 in [-1, 1], x1 = q^-2";

  return specs;
}

std::vector<SurfaceSpec> default_catalog() {
  std::vector<SurfaceSpec> specs;
  for (int n = 1; n <= 6; ++n)
    specs.push_back(unit_sphere(n));
  specs.push_back(classical_bowl());
  for (int n = 1; n <= 6; ++n)
    specs.push_back(new_hypersurface(n));
  for (int n = 1; n <= 6; ++n)
    specs.push_back(calabi(n));
  for (SurfaceSpec &spec : vrancken_surfaces())
    specs.push_back(std::move(spec));
  return specs;
}

Point rotation_chart(const ChartParams &params) {
  const Eigen::Index n = params.u.size();
  if (n < 1)
    throw std::invalid_argument("chart needs at least one parameter");
  if (params.profile.dimension() != 1)
    throw std::invalid_argument("chart profile must be univariate");
  double un = params.u[n - 1];
  if (un <= 0.0)
    throw std::invalid_argument("chart parameter u^n must be positive");

  // D sums only u^1..u^(n-1): the scaled inverse stereographic chart of the
  // (n-1)-sphere, which is what makes sum (x^i)^2 = (u^n)^2 hold.
  double delta = 1.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    delta += params.u[i] * params.u[i];

  Point p(n + 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    p[i] = 2.0 * un * params.u[i] / delta;
  p[n - 1] = un * (delta - 2.0) / delta;
  Point t(1);
  t[0] = un;
  p[n] = eval_value(params.profile, t);
  return p;
}

Expr profile_field(int n, const Expr &profile) {
  if (n < 1)
    throw std::invalid_argument("profile field needs n >= 1");
  if (profile.dimension() != 1)
    throw std::invalid_argument("profile must be univariate");
  Expr radius = sqrt(radial_square(n));
  return compose1(profile, radius) - Expr::variable(n + 1);
}

} // namespace tz
