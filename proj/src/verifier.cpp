#include "tz/verifier.hpp"

#include "tz/detail/format.hpp"
#include "tz/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace tz {

using detail::format_g17;

std::size_t InvariantReport::skipped_total() const {
  std::size_t total = 0;
  for (const SkipCount &entry : skipped)
    total += entry.count;
  return total;
}

InvariantReport verify_constancy(const SurfaceSpec &spec, std::size_t count,
                                 std::uint64_t seed, Orientation o, double tol,
                                 const KernelOptions &options) {
  if (count < 2)
    throw std::invalid_argument("constancy verification needs count >= 2");
  if (!spec.sampler)
    throw std::invalid_argument("surface spec has no sampler");

  InvariantReport report;
  report.name = spec.name;
  report.n = spec.n;
  report.orientation = o;
  report.seed = seed;
  report.sample_count = count;
  report.tolerance = tol;
  report.expected = spec.expected;

  std::map<std::string, std::size_t> skipped;
  for (std::size_t index = 0; index < count; ++index) {
    Point p = spec.sampler(seed, index);
    try {
      report.values.push_back(tzitzeica_invariant(spec.field, p, o, options));
    } catch (const NotImmersedError &) {
      ++skipped["not_immersed"];
    } catch (const OffSurfaceError &) {
      ++skipped["off_surface"];
    } catch (const TangentThroughOriginError &) {
      ++skipped["tangent_through_origin"];
    } catch (const EvalDomainError &) {
      ++skipped["domain_error"];
    }
  }
  for (const auto &[reason, n] : skipped)
    report.skipped.push_back({reason, n});

  if (report.values.empty())
    throw AllPointsDegenerateError(
        "every sampled point of '" + spec.name + "' was degenerate");

  double sum = 0.0;
  for (const InvariantSample &sample : report.values)
    sum += sample.tzitzeica;
  report.mean = sum / static_cast<double>(report.values.size());
  for (const InvariantSample &sample : report.values)
    report.max_abs_deviation = std::max(report.max_abs_deviation,
                                        std::abs(sample.tzitzeica - report.mean));

  report.pass =
      report.max_abs_deviation <= tol * std::max(1.0, std::abs(report.mean));
  if (report.expected) {
    double expected = report.expected->to_double();
    report.pass = report.pass && std::abs(report.mean - expected) <=
                                     tol * std::max(1.0, std::abs(expected));
  }
  return report;
}

double condition_residual(const Expr &field, const Point &p,
                          const Rational &target,
                          const KernelOptions &options) {
  // Gate exactly like the invariant; throws when the point is degenerate.
  tzitzeica_invariant(field, p, Orientation::PaperNormal, options);
  Jet2 jet = eval_jet2(field, p);
  double det = determinant(bordered_hessian(jet));
  const Eigen::Index m = p.size();
  double support = std::abs(jet.gradient.dot(p));
  double rhs =
      target.to_double() * std::pow(support, static_cast<double>(m + 1));
  return (det + rhs) / std::max({std::abs(det), std::abs(rhs), 1.0});
}

double ode_residual(int n, const Expr &profile, double t,
                    const Rational &target) {
  if (n < 1)
    throw std::invalid_argument("ode residual needs n >= 1");
  if (!(t > 0.0))
    throw std::invalid_argument("ode residual abscissa must be positive");
  if (profile.dimension() != 1)
    throw std::invalid_argument("profile must be univariate");
  Point at(1);
  at[0] = t;
  Jet2 jet = eval_jet2(profile, at);
  double f = jet.value;
  double fp = jet.gradient[0];
  double fpp = jet.hessian(0, 0);
  double lhs = fpp * std::pow(fp, n - 1);
  double rhs = target.to_double() * std::pow(t, n - 1) *
               std::pow(std::abs(t * fp - f), n + 2);
  return (lhs + rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

Rational solve_exponent(int n) {
  if (n < 1)
    throw std::invalid_argument("exponent equation needs n >= 1");
  // a - 2 + (a - 1)(n - 1) = n - 1 + a(n + 2), linear in a with exact
  // integer coefficients: collect both sides and divide.
  Rational lhs_slope = Rational(1) + Rational(n - 1);
  Rational lhs_offset = Rational(-2) - Rational(n - 1);
  Rational rhs_slope(n + 2);
  Rational rhs_offset(n - 1);
  return (rhs_offset - lhs_offset) / (lhs_slope - rhs_slope);
}

Rational tz_closed_form(int n) {
  if (n < 1 || n > 200)
    throw std::invalid_argument("closed form supports n in 1..200");
  return Rational::integer_power(-n, static_cast<unsigned>(n)) /
         Rational::integer_power(n + 1, static_cast<unsigned>(n) + 1);
}

const char *orientation_name(Orientation o) {
  return o == Orientation::PaperNormal ? "paper" : "opposite";
}

std::string to_json(const InvariantReport &report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["n"] = report.n;
  j["orientation"] = orientation_name(report.orientation);
  j["seed"] = report.seed;
  j["count"] = report.sample_count;
  j["mean"] = report.mean;
  j["maxAbsDeviation"] = report.max_abs_deviation;
  if (report.expected)
    j["expected"] = report.expected->str();
  else
    j["expected"] = nullptr;
  j["pass"] = report.pass;
  nlohmann::ordered_json skips = nlohmann::ordered_json::array();
  for (const SkipCount &entry : report.skipped)
    skips.push_back({{"reason", entry.reason}, {"count", entry.count}});
  j["skipped"] = std::move(skips);
  return j.dump();
}

std::string to_csv(const InvariantReport &report) {
  std::string out;
  const int m = report.n + 1;
  for (int i = 1; i <= m; ++i) {
    out += 'x';
    out += std::to_string(i);
    out += ',';
  }
  out += "K,d,tz\n";
  for (const InvariantSample &sample : report.values) {
    for (Eigen::Index i = 0; i < sample.point.size(); ++i) {
      out += format_g17(sample.point[i]);
      out += ',';
    }
    out += format_g17(sample.curvature);
    out += ',';
    out += format_g17(sample.distance);
    out += ',';
    out += format_g17(sample.tzitzeica);
    out += '\n';
  }
  return out;
}

} // namespace tz
