#include "tz/field.hpp"

#include "tz/errors.hpp"
#include "tz/sampling.hpp"
#include "support/finite_diff.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace tz;

namespace {

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords)
    p[i++] = c;
  return p;
}

} // namespace

TEST_CASE("parser accepts the grammar") {
  Expr circle = parse_field("x1^2 + x2^2 - 1", 2);
  Expr expected = pow(Expr::variable(1), 2) + pow(Expr::variable(2), 2) -
                  Expr::constant(1.0);
  CHECK(circle == expected.with_dimension(2));

  Expr quartic = parse_field("x3^2*(x1^2+x2^2)^2 - 1", 3);
  CHECK(eval_value(quartic, make_point({1, 0, 1})) == 0.0);
  CHECK(eval_value(quartic, make_point({0, 2, 0.25})) == 0.0);

  CHECK(eval_value(parse_field("sqrt(x1)", 1), make_point({4})) == 2.0);
  CHECK(eval_value(parse_field("abs(-x1)", 1), make_point({-3})) == 3.0);
  CHECK(eval_value(parse_field("x1^-2", 1), make_point({2})) == 0.25);
  CHECK(eval_value(parse_field("2e2 + x1", 1), make_point({1})) == 201.0);
  CHECK(eval_value(parse_field(" sqrt ( x1 ) ", 1), make_point({9})) == 3.0);
  // '-' binds tighter than '^' in this grammar.
  CHECK(eval_value(parse_field("-x1^2", 1), make_point({2})) == 4.0);
  CHECK(eval_value(parse_field("0-x1^2", 1), make_point({2})) == -4.0);
}

TEST_CASE("parser reports errors with their position") {
  CHECK_THROWS_AS(parse_field("x1^2 + @", 2), ParseError);
  try {
    parse_field("x1^2 + @", 2);
  } catch (const ParseError &e) {
    CHECK(e.offset() == 7);
  }

  CHECK_THROWS_AS(parse_field("x3", 2), ParseError);        // index range
  CHECK_THROWS_AS(parse_field("x0", 2), ParseError);        // no x0
  CHECK_THROWS_AS(parse_field("", 1), ParseError);          // empty
  CHECK_THROWS_AS(parse_field("x1^65", 1), ParseError);     // exponent cap
  CHECK_THROWS_AS(parse_field("x1^2^3", 1), ParseError);    // no power chains
  CHECK_THROWS_AS(parse_field("2x1", 1), ParseError);       // no implied *
  CHECK_THROWS_AS(parse_field("y1", 1), ParseError);        // unknown ident
  CHECK_THROWS_AS(parse_field("sqrt(x1", 1), ParseError);   // missing paren
  CHECK_THROWS_AS(parse_field("x1^2.5", 1), ParseError);    // integer powers
  CHECK_THROWS_AS(parse_field("x", 1), ParseError);         // bare x
  CHECK_THROWS_AS(parse_field("x1", 0), std::invalid_argument);
}

TEST_CASE("dimension handling") {
  CHECK(parse_field("x2*x5").dimension() == 5);
  CHECK(parse_field("3").dimension() == 1);
  CHECK(parse_field("x1", 4).dimension() == 4);
  CHECK(parse_field("x1", 4) != parse_field("x1", 3));
  CHECK_THROWS_AS(parse_field("x1+x2", 2).with_dimension(1),
                  std::invalid_argument);
}

TEST_CASE("printer round-trips through the parser") {
  for (const std::string &text : {
           std::string("x1^2 + x2^2 - 1"),
           std::string("x3^2*(x1^2+x2^2)^2-1"),
           std::string("-x1^2"),
           std::string("x1-(x2-x3)"),
           std::string("x1/(x2/x3)"),
           std::string("x1/x2/x3"),
           std::string("(x1+x2)*(x1-x2)"),
           std::string("sqrt(abs(x1*x2))-x3^-4"),
           std::string("1.5e-3*x1 + 2.25"),
           std::string("--x1"),
           std::string("-3^2"),
           std::string("x1^-64 + x2^64"),
       }) {
    Expr parsed = parse_field(text, 3);
    Expr reparsed = parse_field(to_text(parsed), 3);
    CAPTURE(text);
    CAPTURE(to_text(parsed));
    CHECK(parsed == reparsed);
  }
}

namespace {

// Random well-formed trees for the round-trip property.
Expr random_tree(SampleStream &rng, int dim, int depth) {
  const double constants[] = {0.0, 1.0, 2.5, -3.0, 0.5, 100.0, 1e-3};
  if (depth <= 0 || rng.next_unit() < 0.25) {
    if (rng.next_unit() < 0.5)
      return Expr::constant(
          constants[rng.next_u64() % (sizeof(constants) / sizeof(double))]);
    return Expr::variable(1 + static_cast<int>(rng.next_u64() %
                                               static_cast<unsigned>(dim)));
  }
  switch (rng.next_u64() % 9) {
  case 0:
    return random_tree(rng, dim, depth - 1) + random_tree(rng, dim, depth - 1);
  case 1:
    return random_tree(rng, dim, depth - 1) - random_tree(rng, dim, depth - 1);
  case 2:
    return random_tree(rng, dim, depth - 1) * random_tree(rng, dim, depth - 1);
  case 3:
    return random_tree(rng, dim, depth - 1) / random_tree(rng, dim, depth - 1);
  case 4:
    return -random_tree(rng, dim, depth - 1);
  case 5:
    return pow(random_tree(rng, dim, depth - 1),
               static_cast<int>(rng.next_u64() % 9) - 4);
  case 6:
    return sqrt(random_tree(rng, dim, depth - 1));
  case 7:
    return abs(random_tree(rng, dim, depth - 1));
  default:
    return pow(random_tree(rng, dim, depth - 1), 2);
  }
}

} // namespace

TEST_CASE("canonical printing is idempotent on random trees") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    SampleStream rng(2024, i);
    Expr tree = random_tree(rng, 3, 4).with_dimension(3);
    std::string printed = to_text(tree);
    CAPTURE(printed);
    Expr reparsed = parse_field(printed, 3);
    CHECK(tree == reparsed);
    CHECK(to_text(reparsed) == printed);
  }
}

TEST_CASE("jet of a quadratic") {
  Expr field = parse_field("x1^2 + x2^2", 2);
  Jet2 jet = eval_jet2(field, make_point({1, 2}));
  CHECK(jet.value == 5.0);
  CHECK(jet.gradient[0] == 2.0);
  CHECK(jet.gradient[1] == 4.0);
  CHECK(jet.hessian(0, 0) == 2.0);
  CHECK(jet.hessian(1, 1) == 2.0);
  CHECK(jet.hessian(0, 1) == 0.0);
}

TEST_CASE("jet of the monomial x1*x2*x3 at all-ones") {
  Expr field = parse_field("x1*x2*x3", 3);
  Jet2 jet = eval_jet2(field, make_point({1, 1, 1}));
  CHECK(jet.value == 1.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(jet.gradient[i] == 1.0);
    CHECK(jet.hessian(i, i) == 0.0);
    for (int j = 0; j < 3; ++j)
      if (i != j)
        CHECK(jet.hessian(i, j) == 1.0);
  }
}

TEST_CASE("jet of an inverse square against hand values and differences") {
  Expr field = parse_field("(x1^2+x2^2)^-1", 2);
  Point p = make_point({1, 0});
  Jet2 jet = eval_jet2(field, p);
  CHECK(jet.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jet.gradient[0] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(jet.gradient[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(jet.hessian(0, 0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(jet.hessian(1, 1) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(jet.hessian(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(tztest::close_to_scale(jet.gradient, tztest::fd_gradient(field, p),
                               1e-6));
  CHECK(tztest::close_to_scale(jet.hessian.reshaped(),
                               tztest::fd_hessian(field, p).reshaped(), 1e-6));
}

TEST_CASE("jets match central differences on assorted fields") {
  const std::vector<std::string> fields = {
      "x1^2*x2 - x3/x2 + sqrt(x1^2+2)",
      "abs(x1*x2) + x1^4 - x3^-2",
      "(x1+x2+x3)^3/(1+x1^2)",
      "sqrt(x1^2+x2^2+x3^2)",
      "x1*x2*x3 - 1",
  };
  for (const std::string &text : fields) {
    Expr field = parse_field(text, 3);
    std::uint64_t accepted = 0;
    for (std::uint64_t index = 0; accepted < 25 && index < 200; ++index) {
      SampleStream rng(7, index);
      Point p = make_point({rng.uniform(0.4, 2.0), rng.uniform(0.4, 2.0),
                            rng.uniform(0.4, 2.0)});
      Jet2 jet;
      try {
        jet = eval_jet2(field, p);
      } catch (const EvalDomainError &) {
        continue;
      }
      ++accepted;
      CAPTURE(text);
      CHECK(tztest::close_to_scale(jet.gradient, tztest::fd_gradient(field, p),
                                   1e-6));
      CHECK(tztest::close_to_scale(jet.hessian.reshaped(),
                                   tztest::fd_hessian(field, p).reshaped(),
                                   1e-6));
    }
    CHECK(accepted == 25);
  }
}

TEST_CASE("hessian symmetry is bit-exact") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    SampleStream rng(99, i);
    Expr tree = random_tree(rng, 3, 4).with_dimension(3);
    Point p = make_point(
        {rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0)});
    try {
      Jet2 jet = eval_jet2(tree, p);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          CHECK(jet.hessian(r, c) == jet.hessian(c, r));
    } catch (const EvalDomainError &) {
      // fine: random trees may leave their domain
    }
  }
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(eval_value(parse_field("1/x1", 1), make_point({0})),
                  EvalDomainError);
  CHECK_THROWS_AS(eval_value(parse_field("sqrt(x1)", 1), make_point({-1})),
                  EvalDomainError);
  CHECK_THROWS_AS(eval_value(parse_field("x1^-1", 1), make_point({0})),
                  EvalDomainError);

  // Value-only evaluation tolerates sqrt(0) and abs(0); jets do not.
  CHECK(eval_value(parse_field("sqrt(x1)", 1), make_point({0})) == 0.0);
  CHECK(eval_value(parse_field("abs(x1)", 1), make_point({0})) == 0.0);
  CHECK_THROWS_AS(eval_jet2(parse_field("sqrt(x1)", 1), make_point({0})),
                  EvalDomainError);
  CHECK_THROWS_AS(eval_jet2(parse_field("abs(x1)", 1), make_point({0})),
                  EvalDomainError);

  // abs propagates sign(u) * u' away from zero.
  Jet2 jet = eval_jet2(parse_field("abs(x1)", 1), make_point({-2}));
  CHECK(jet.value == 2.0);
  CHECK(jet.gradient[0] == -1.0);

  CHECK(eval_value(parse_field("x1^0", 1), make_point({0})) == 1.0);

  CHECK_THROWS_AS(eval_value(parse_field("x1+x2", 2), make_point({1})),
                  std::invalid_argument);
  Point bad = make_point({1, 2});
  bad[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(eval_value(parse_field("x1+x2", 2), bad),
                  std::invalid_argument);
}

TEST_CASE("univariate profiles compose into radial fields") {
  Expr profile = parse_field("x1^-2", 1);
  Expr radius = sqrt(pow(Expr::variable(1), 2) + pow(Expr::variable(2), 2));
  Expr composed = compose1(profile, radius);
  CHECK(composed.dimension() == 2);
  Expr direct = parse_field("(x1^2+x2^2)^-1", 2);
  for (std::uint64_t i = 0; i < 20; ++i) {
    SampleStream rng(5, i);
    Point p = make_point({rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0)});
    CHECK(eval_value(composed, p) ==
          doctest::Approx(eval_value(direct, p)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(compose1(parse_field("x1+x2", 2), radius),
                  std::invalid_argument);
}
