#ifndef TZ_FIELD_HPP
#define TZ_FIELD_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <string_view>

namespace tz {

/// Ambient coordinates of a point, x1..xm.
using Point = Eigen::VectorXd;

/// Second-order jet of a scalar field at a point: value, gradient and
/// symmetric Hessian. All derivatives are exact up to rounding.
struct Jet2 {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

namespace detail {

enum class NodeKind {
  Constant,
  Variable,
  Negate,
  Add,
  Subtract,
  Multiply,
  Divide,
  Power,
  Sqrt,
  Abs,
};

/// Internal tree node. Nodes are immutable and shared between trees.
struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0; // Constant
  int index = 0;      // Variable, 1-based
  int exponent = 0;   // Power
  std::shared_ptr<const ExprNode> a;
  std::shared_ptr<const ExprNode> b;
};

using ExprNodeRef = std::shared_ptr<const ExprNode>;

} // namespace detail

/// Immutable expression tree for a scalar field F: R^m -> R over the ambient
/// coordinates x1..xm. Supported nodes: constants, variables, negation, sum,
/// difference, product, quotient, integer powers with |exponent| <= 64,
/// square root and absolute value.
///
/// Expressions are values: copying is cheap (shared subtrees) and every
/// operation on them is thread-safe.
class Expr {
public:
  /// Finite constant. Negating a constant folds into the constant itself.
  static Expr constant(double value);

  /// Coordinate x_index (1-based). The natural ambient dimension of the
  /// resulting expression is `index`; binary operations take the maximum.
  static Expr variable(int index);

  /// Declared ambient dimension m. Evaluation requires a point of exactly
  /// this length.
  int dimension() const noexcept { return dim_; }

  /// Rebinds the declared ambient dimension. `m` must cover every variable
  /// used in the tree.
  Expr with_dimension(int m) const;

  const detail::ExprNodeRef &root() const noexcept { return root_; }

  Expr(detail::ExprNodeRef root, int dim) : root_(std::move(root)), dim_(dim) {}

private:
  detail::ExprNodeRef root_;
  int dim_ = 1;
};

Expr operator-(const Expr &e);
Expr operator+(const Expr &lhs, const Expr &rhs);
Expr operator-(const Expr &lhs, const Expr &rhs);
Expr operator*(const Expr &lhs, const Expr &rhs);
Expr operator/(const Expr &lhs, const Expr &rhs);

/// e^exponent for integer exponents, |exponent| <= 64. pow(e, 0) is the
/// constant 1.
Expr pow(const Expr &e, int exponent);
Expr sqrt(const Expr &e);
Expr abs(const Expr &e);

/// Structural equality (same tree shape and payloads, same declared
/// dimension).
bool operator==(const Expr &lhs, const Expr &rhs);
inline bool operator!=(const Expr &lhs, const Expr &rhs) {
  return !(lhs == rhs);
}

/// Parses expression text over variables x1..xm.
///
/// Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
/// factor)*; factor := base ('^' integer)?; base := number | ident |
/// '(' expr ')' | 'sqrt(' expr ')' | 'abs(' expr ')' | '-' base;
/// ident := 'x' positive-integer. Whitespace is insignificant.
///
/// Throws ParseError on malformed input or a variable index above
/// `dimension`; std::invalid_argument when dimension < 1.
Expr parse_field(std::string_view text, int dimension);

/// Same, with the dimension inferred as the largest variable index used
/// (1 for constant expressions).
Expr parse_field(std::string_view text);

/// Canonical printer. parse_field(to_text(e), e.dimension()) reproduces e
/// exactly.
std::string to_text(const Expr &e);

/// Evaluates the field value only. sqrt(0) and abs(0) are fine here; they
/// only fail when derivatives are requested.
double eval_value(const Expr &field, const Point &p);

/// Evaluates value, gradient and Hessian by forward propagation of
/// second-order jets through the tree. No truncation error: results are
/// exact up to floating-point rounding, and the Hessian is symmetric
/// bit-exactly.
///
/// Throws EvalDomainError when evaluation leaves the field's domain.
Jet2 eval_jet2(const Expr &field, const Point &p);

/// Substitutes `inner` for x1 in the univariate expression `profile`.
/// The result has the declared dimension of `inner`.
Expr compose1(const Expr &profile, const Expr &inner);

} // namespace tz

#endif // TZ_FIELD_HPP
