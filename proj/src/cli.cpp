#include "tz/cli.hpp"

#include "tz/catalog.hpp"
#include "tz/detail/format.hpp"
#include "tz/errors.hpp"
#include "tz/field.hpp"
#include "tz/kernel.hpp"
#include "tz/mesh.hpp"
#include "tz/rational.hpp"
#include "tz/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <vector>

namespace tz::cli {

namespace {

using detail::format_g17;

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;

/// Bad flag values or inconsistent flag combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string &text, char separator) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = text.find(separator, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string::npos)
      return parts;
    start = end + 1;
  }
}

double parse_double(const std::string &token, const std::string &what) {
  double value = 0.0;
  const char *begin = token.data();
  const char *end = begin + token.size();
  auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end || !std::isfinite(value))
    throw UsageError("malformed " + what + " '" + token + "'");
  return value;
}

Point parse_point(const std::string &text) {
  std::vector<std::string> parts = split(text, ',');
  Point p(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    p[static_cast<Eigen::Index>(i)] = parse_double(parts[i], "coordinate");
  return p;
}

Orientation to_orientation(const std::string &name) {
  return name == "opposite" ? Orientation::Opposite : Orientation::PaperNormal;
}

struct KernelFlags {
  double gradient_eps = KernelOptions{}.gradient_epsilon;
  double distance_eps = KernelOptions{}.distance_epsilon;
  double surface_tol = KernelOptions{}.on_surface_tolerance;

  void attach(CLI::App *cmd) {
    cmd->add_option("--gradient-eps", gradient_eps,
                    "immersion threshold for |grad F|");
    cmd->add_option("--distance-eps", distance_eps,
                    "support distance below which the invariant is undefined");
    cmd->add_option("--surface-tol", surface_tol,
                    "largest |F(p)| accepted as on-surface");
  }

  KernelOptions options() const {
    return {gradient_eps, distance_eps, surface_tol};
  }
};

// ---------------------------------------------------------------- eval ----

struct EvalConfig {
  std::string field;
  std::string point;
  std::string orientation = "paper";
  std::string output = "text";
  KernelFlags kernel;
};

int do_eval(const EvalConfig &config, std::ostream &out) {
  Expr field = parse_field(config.field);
  Point p = parse_point(config.point);
  if (p.size() != field.dimension())
    throw UsageError("point has " + std::to_string(p.size()) +
                     " coordinates but the field uses x1..x" +
                     std::to_string(field.dimension()));
  InvariantSample sample =
      tzitzeica_invariant(field, p, to_orientation(config.orientation),
                          config.kernel.options());
  if (config.output == "json") {
    nlohmann::ordered_json j;
    j["K"] = sample.curvature;
    j["d"] = sample.distance;
    j["tz"] = sample.tzitzeica;
    out << j.dump() << "\n";
  } else if (config.output == "csv") {
    out << "K,d,tz\n"
        << format_g17(sample.curvature) << ',' << format_g17(sample.distance)
        << ',' << format_g17(sample.tzitzeica) << "\n";
  } else {
    out << "K = " << format_g17(sample.curvature) << "\n"
        << "d = " << format_g17(sample.distance) << "\n"
        << "tz = " << format_g17(sample.tzitzeica) << "\n";
  }
  return kOk;
}

// -------------------------------------------------------------- verify ----

struct VerifyConfig {
  std::string surface;
  std::optional<int> n;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string orientation = "paper";
  std::string output = "text";
  std::string points_file;
  std::string branch = "positive";
  KernelFlags kernel;
};

int require_n(const std::optional<int> &n, const std::string &surface) {
  if (!n)
    throw UsageError("surface '" + surface + "' needs --n");
  if (*n < 1 || *n > 16)
    throw UsageError("--n must be in 1..16");
  return *n;
}

void forbid_n_mismatch(const std::optional<int> &n, int fixed,
                       const std::string &surface) {
  if (n && *n != fixed)
    throw UsageError("surface '" + surface + "' is fixed at n = " +
                     std::to_string(fixed));
}

std::optional<SurfaceSpec> resolve_catalog_surface(const VerifyConfig &config) {
  const std::string &name = config.surface;
  Branch branch =
      config.branch == "negative" ? Branch::Negative : Branch::Positive;
  if (name == "tzitzeica")
    return new_hypersurface(require_n(config.n, name), branch);
  if (branch == Branch::Negative)
    throw UsageError("--branch negative applies to the tzitzeica family only");
  if (name == "sphere")
    return unit_sphere(require_n(config.n, name));
  if (name == "calabi")
    return calabi(require_n(config.n, name));
  if (name == "bowl") {
    forbid_n_mismatch(config.n, 2, name);
    return classical_bowl();
  }
  if (name == "vrancken3" || name == "vrancken4") {
    std::vector<SurfaceSpec> specs = vrancken_surfaces();
    SurfaceSpec spec = name == "vrancken3" ? specs[0] : specs[1];
    forbid_n_mismatch(config.n, spec.n, name);
    return spec;
  }
  return std::nullopt;
}

std::vector<Point> read_points(const std::string &path, int dimension) {
  std::ifstream file(path);
  if (!file)
    throw UsageError("cannot read points file '" + path + "'");
  std::vector<Point> points;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    Point p = parse_point(line);
    if (p.size() != dimension)
      throw UsageError("line " + std::to_string(line_number) + " of '" + path +
                       "' has " + std::to_string(p.size()) +
                       " coordinates, expected " + std::to_string(dimension));
    points.push_back(std::move(p));
  }
  return points;
}

void print_text_report(const InvariantReport &report, std::ostream &out) {
  out << "surface: " << report.name << " (n = " << report.n << ")\n"
      << "orientation: " << orientation_name(report.orientation) << "\n"
      << "seed: " << report.seed << "  samples: " << report.sample_count
      << "  computed: " << report.values.size()
      << "  skipped: " << report.skipped_total() << "\n";
  for (const SkipCount &entry : report.skipped)
    out << "  skipped " << entry.count << " (" << entry.reason << ")\n";
  out << "mean tz: " << format_g17(report.mean) << "\n"
      << "max |tz - mean|: " << format_g17(report.max_abs_deviation) << "\n";
  if (report.expected)
    out << "expected: " << report.expected->str() << "\n";
  out << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
}

int do_verify(const VerifyConfig &config, std::ostream &out) {
  SurfaceSpec spec;
  std::size_t count = config.count;
  if (std::optional<SurfaceSpec> catalog_spec = resolve_catalog_surface(config)) {
    if (!config.points_file.empty())
      throw UsageError("--points applies to expression surfaces only");
    spec = std::move(*catalog_spec);
  } else {
    // Expression surface: there is no sampler for a user field, so points
    // must be supplied explicitly.
    Expr field = parse_field(config.surface);
    if (field.dimension() < 2)
      throw UsageError("an expression surface needs at least two variables");
    if (config.points_file.empty())
      throw UsageError("expression surfaces need --points FILE "
                       "(one comma-separated point per line)");
    auto points = std::make_shared<std::vector<Point>>(
        read_points(config.points_file, field.dimension()));
    if (points->size() < 2)
      throw UsageError("points file must contain at least two points");
    spec.name = "user";
    spec.n = field.dimension() - 1;
    spec.field = field;
    spec.sampler = [points](std::uint64_t, std::uint64_t index) {
      return (*points)[index];
    };
    spec.sample_domain = "user-supplied points";
    count = points->size();
  }

  InvariantReport report =
      verify_constancy(spec, count, config.seed,
                       to_orientation(config.orientation), config.tol,
                       config.kernel.options());
  if (config.output == "json")
    out << to_json(report) << "\n";
  else if (config.output == "csv")
    out << to_csv(report);
  else
    print_text_report(report, out);
  return report.pass ? kOk : kVerifyFail;
}

// ----------------------------------------------------------- ode-check ----

struct OdeConfig {
  int n = 2;
  std::string profile;
  std::string t_range = "0.5:5:10";
  std::string target;
  double tol = 1e-8;
  std::string output = "text";
};

std::vector<double> parse_t_range(const std::string &text) {
  std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3)
    throw UsageError("--t-range must be formatted a:b:steps");
  double a = parse_double(parts[0], "t-range start");
  double b = parse_double(parts[1], "t-range end");
  long steps = 0;
  try {
    steps = std::stol(parts[2]);
  } catch (const std::exception &) {
    throw UsageError("malformed t-range step count '" + parts[2] + "'");
  }
  if (!(a > 0.0) || b < a || steps < 1)
    throw UsageError("--t-range needs 0 < a <= b and steps >= 1");
  std::vector<double> ts;
  if (steps == 1) {
    ts.push_back(a);
    return ts;
  }
  for (long k = 0; k < steps; ++k)
    ts.push_back(a + (b - a) * static_cast<double>(k) /
                         static_cast<double>(steps - 1));
  return ts;
}

int do_ode_check(const OdeConfig &config, std::ostream &out) {
  Expr profile = parse_field(config.profile, 1);
  Rational target = config.target.empty() ? tz_closed_form(config.n)
                                          : Rational::from_string(config.target);
  std::vector<double> ts = parse_t_range(config.t_range);
  double max_abs = 0.0;
  std::vector<std::pair<double, double>> residuals;
  for (double t : ts) {
    double residual = ode_residual(config.n, profile, t, target);
    residuals.emplace_back(t, residual);
    max_abs = std::max(max_abs, std::abs(residual));
  }
  bool pass = max_abs <= config.tol;
  if (config.output == "json") {
    nlohmann::ordered_json j;
    j["n"] = config.n;
    j["profile"] = to_text(profile);
    j["target"] = target.str();
    j["tolerance"] = config.tol;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto &[t, residual] : residuals)
      list.push_back({{"t", t}, {"residual", residual}});
    j["residuals"] = std::move(list);
    j["maxAbsResidual"] = max_abs;
    j["pass"] = pass;
    out << j.dump() << "\n";
  } else {
    out << "profile: " << to_text(profile) << "  n = " << config.n
        << "  target = " << target.str() << "\n";
    for (const auto &[t, residual] : residuals)
      out << "t = " << format_g17(t) << "  residual = " << format_g17(residual)
          << "\n";
    out << "max |residual| = " << format_g17(max_abs) << "\n"
        << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------- mesh ----

struct MeshCliConfig {
  std::string range = "-5:5:-5:5";
  int resolution = 120;
  double z_clip = 10.0;
  double exclusion = 0.15;
  std::string format = "obj";
  std::string out_path;
};

int do_mesh(const MeshCliConfig &config, std::ostream &out) {
  std::vector<std::string> parts = split(config.range, ':');
  if (parts.size() != 4)
    throw UsageError("--range must be formatted umin:umax:vmin:vmax");
  MeshConfig mesh_config;
  mesh_config.umin = parse_double(parts[0], "range bound");
  mesh_config.umax = parse_double(parts[1], "range bound");
  mesh_config.vmin = parse_double(parts[2], "range bound");
  mesh_config.vmax = parse_double(parts[3], "range bound");
  mesh_config.resolution = config.resolution;
  mesh_config.z_clip = config.z_clip;
  mesh_config.exclusion_radius = config.exclusion;
  MeshFormat format =
      config.format == "csv" ? MeshFormat::CSV : MeshFormat::OBJ;
  Mesh mesh = generate_mesh(mesh_config);
  write_mesh(mesh, format, config.out_path);
  out << "wrote " << mesh.vertices.size() << " vertices, "
      << mesh.triangles.size() << " triangles to " << config.out_path << "\n";
  return kOk;
}

// ------------------------------------------------------------- catalog ----

int do_catalog(std::ostream &out) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const SurfaceSpec &spec : default_catalog()) {
    nlohmann::ordered_json entry;
    entry["name"] = spec.name;
    entry["n"] = spec.n;
    entry["field"] = to_text(spec.field);
    if (spec.expected)
      entry["expected"] = spec.expected->str();
    else
      entry["expected"] = nullptr;
    list.push_back(std::move(entry));
  }
  out << list.dump() << "\n";
  return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"centroaffine Tzitzeica invariant toolkit"};
  app.name("tz");
  app.require_subcommand(1);

  const auto output_formats = CLI::IsMember({"text", "json", "csv"});
  const auto orientations = CLI::IsMember({"paper", "opposite"});

  EvalConfig eval_config;
  CLI::App *eval_cmd = app.add_subcommand(
      "eval", "evaluate K, d and the Tzitzeica invariant at one point");
  eval_cmd->add_option("--field", eval_config.field, "defining function F")
      ->required();
  eval_cmd
      ->add_option("--point", eval_config.point,
                   "comma-separated point coordinates")
      ->required();
  eval_cmd->add_option("--orientation", eval_config.orientation, "normal choice")
      ->check(orientations);
  eval_cmd->add_option("--output", eval_config.output, "output format")
      ->check(output_formats);
  eval_config.kernel.attach(eval_cmd);

  VerifyConfig verify_config;
  CLI::App *verify_cmd = app.add_subcommand(
      "verify", "sample a surface and verify invariant constancy");
  verify_cmd
      ->add_option("--surface", verify_config.surface,
                   "catalog name (sphere, bowl, tzitzeica, calabi, vrancken3, "
                   "vrancken4) or a defining expression")
      ->required();
  verify_cmd->add_option("--n", verify_config.n, "hypersurface dimension");
  verify_cmd->add_option("--count", verify_config.count, "sample count")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  verify_cmd->add_option("--seed", verify_config.seed, "sampling seed");
  verify_cmd->add_option("--tol", verify_config.tol, "relative tolerance");
  verify_cmd
      ->add_option("--orientation", verify_config.orientation, "normal choice")
      ->check(orientations);
  verify_cmd->add_option("--output", verify_config.output, "output format")
      ->check(output_formats);
  verify_cmd->add_option("--points", verify_config.points_file,
                         "points file for expression surfaces");
  verify_cmd->add_option("--branch", verify_config.branch,
                         "sheet of the tzitzeica family")
      ->check(CLI::IsMember({"positive", "negative"}));
  verify_config.kernel.attach(verify_cmd);

  OdeConfig ode_config;
  CLI::App *ode_cmd = app.add_subcommand(
      "ode-check", "residual of the reduced profile equation");
  ode_cmd->add_option("--n", ode_config.n, "hypersurface dimension")
      ->required()
      ->check(CLI::Range(1, 200));
  ode_cmd->add_option("--profile", ode_config.profile, "univariate profile in x1")
      ->required();
  ode_cmd->add_option("--t-range", ode_config.t_range, "grid a:b:steps");
  ode_cmd->add_option("--target", ode_config.target,
                      "target constant as a rational (default: closed form)");
  ode_cmd->add_option("--tol", ode_config.tol, "pass threshold");
  ode_cmd->add_option("--output", ode_config.output, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  int exponent_n = 0;
  CLI::App *exponent_cmd = app.add_subcommand(
      "exponent", "solve the degree-matching equation for the profile power");
  exponent_cmd->add_option("--n", exponent_n, "hypersurface dimension")
      ->required()
      ->check(CLI::Range(1, 1000000));

  int constant_n = 0;
  CLI::App *constant_cmd = app.add_subcommand(
      "constant", "exact closed-form invariant of the rotation family");
  constant_cmd->add_option("--n", constant_n, "hypersurface dimension")
      ->required()
      ->check(CLI::Range(1, 200));

  MeshCliConfig mesh_config;
  CLI::App *mesh_cmd =
      app.add_subcommand("mesh", "triangulate the bowl z = 1/(x^2+y^2)");
  mesh_cmd->add_option("--range", mesh_config.range, "grid umin:umax:vmin:vmax");
  mesh_cmd->add_option("--res", mesh_config.resolution, "grid points per axis")
      ->check(CLI::Range(2, 100000));
  mesh_cmd->add_option("--clip", mesh_config.z_clip, "maximum height");
  mesh_cmd->add_option("--exclude", mesh_config.exclusion,
                       "exclusion radius around the singularity");
  mesh_cmd->add_option("--format", mesh_config.format, "obj or csv")
      ->check(CLI::IsMember({"obj", "csv"}));
  mesh_cmd->add_option("--out", mesh_config.out_path, "destination path")
      ->required();

  CLI::App *catalog_cmd =
      app.add_subcommand("catalog", "list built-in surfaces as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*eval_cmd)
      return do_eval(eval_config, out);
    if (*verify_cmd)
      return do_verify(verify_config, out);
    if (*ode_cmd)
      return do_ode_check(ode_config, out);
    if (*exponent_cmd) {
      out << solve_exponent(exponent_n).str() << "\n";
      return kOk;
    }
    if (*constant_cmd) {
      out << tz_closed_form(constant_n).str() << "\n";
      return kOk;
    }
    if (*mesh_cmd)
      return do_mesh(mesh_config, out);
    if (*catalog_cmd)
      return do_catalog(out);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}

} // namespace tz::cli
