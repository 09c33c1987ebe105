#include "tz/field.hpp"

#include "tz/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <utility>

namespace tz {

using detail::ExprNode;
using detail::ExprNodeRef;
using detail::NodeKind;

namespace {

constexpr int kMaxPowerMagnitude = 64;
constexpr int kMaxParseDepth = 256;

ExprNodeRef make_node(ExprNode node) {
  return std::make_shared<const ExprNode>(std::move(node));
}

ExprNodeRef make_constant(double value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("field constant must be finite");
  ExprNode node;
  node.value = value;
  return make_node(std::move(node));
}

ExprNodeRef make_variable(int index) {
  if (index < 1)
    throw std::invalid_argument("variable index must be positive");
  ExprNode node;
  node.kind = NodeKind::Variable;
  node.index = index;
  return make_node(std::move(node));
}

ExprNodeRef make_unary(NodeKind kind, ExprNodeRef a) {
  ExprNode node;
  node.kind = kind;
  node.a = std::move(a);
  return make_node(std::move(node));
}

// Negation of a constant folds so that "-3" prints and reparses as itself.
ExprNodeRef make_negate(ExprNodeRef a) {
  if (a->kind == NodeKind::Constant)
    return make_constant(-a->value);
  return make_unary(NodeKind::Negate, std::move(a));
}

ExprNodeRef make_binary(NodeKind kind, ExprNodeRef a, ExprNodeRef b) {
  ExprNode node;
  node.kind = kind;
  node.a = std::move(a);
  node.b = std::move(b);
  return make_node(std::move(node));
}

// u^1 folds to u itself.
ExprNodeRef make_power(ExprNodeRef a, int exponent) {
  if (std::abs(exponent) > kMaxPowerMagnitude)
    throw std::invalid_argument("power exponent magnitude exceeds 64");
  if (exponent == 1)
    return a;
  ExprNode node;
  node.kind = NodeKind::Power;
  node.exponent = exponent;
  node.a = std::move(a);
  return make_node(std::move(node));
}

int max_variable_index(const ExprNode &node) {
  switch (node.kind) {
  case NodeKind::Constant:
    return 0;
  case NodeKind::Variable:
    return node.index;
  default: {
    int m = node.a ? max_variable_index(*node.a) : 0;
    if (node.b)
      m = std::max(m, max_variable_index(*node.b));
    return m;
  }
  }
}

} // namespace

Expr Expr::constant(double value) { return Expr(make_constant(value), 1); }

Expr Expr::variable(int index) {
  return Expr(make_variable(index), std::max(index, 1));
}

Expr Expr::with_dimension(int m) const {
  if (m < 1)
    throw std::invalid_argument("field dimension must be >= 1");
  if (max_variable_index(*root_) > m)
    throw std::invalid_argument("field uses a variable above the dimension");
  return Expr(root_, m);
}

Expr operator-(const Expr &e) {
  return Expr(make_negate(e.root()), e.dimension());
}

namespace {
Expr binary(NodeKind kind, const Expr &lhs, const Expr &rhs) {
  return Expr(make_binary(kind, lhs.root(), rhs.root()),
              std::max(lhs.dimension(), rhs.dimension()));
}
} // namespace

Expr operator+(const Expr &lhs, const Expr &rhs) {
  return binary(NodeKind::Add, lhs, rhs);
}
Expr operator-(const Expr &lhs, const Expr &rhs) {
  return binary(NodeKind::Subtract, lhs, rhs);
}
Expr operator*(const Expr &lhs, const Expr &rhs) {
  return binary(NodeKind::Multiply, lhs, rhs);
}
Expr operator/(const Expr &lhs, const Expr &rhs) {
  return binary(NodeKind::Divide, lhs, rhs);
}

Expr pow(const Expr &e, int exponent) {
  return Expr(make_power(e.root(), exponent), e.dimension());
}

Expr sqrt(const Expr &e) {
  return Expr(make_unary(NodeKind::Sqrt, e.root()), e.dimension());
}

Expr abs(const Expr &e) {
  return Expr(make_unary(NodeKind::Abs, e.root()), e.dimension());
}

namespace {

bool node_equal(const ExprNode &lhs, const ExprNode &rhs) {
  if (lhs.kind != rhs.kind)
    return false;
  switch (lhs.kind) {
  case NodeKind::Constant:
    return lhs.value == rhs.value;
  case NodeKind::Variable:
    return lhs.index == rhs.index;
  case NodeKind::Power:
    return lhs.exponent == rhs.exponent && node_equal(*lhs.a, *rhs.a);
  case NodeKind::Negate:
  case NodeKind::Sqrt:
  case NodeKind::Abs:
    return node_equal(*lhs.a, *rhs.a);
  default:
    return node_equal(*lhs.a, *rhs.a) && node_equal(*lhs.b, *rhs.b);
  }
}

} // namespace

bool operator==(const Expr &lhs, const Expr &rhs) {
  return lhs.dimension() == rhs.dimension() &&
         node_equal(*lhs.root(), *rhs.root());
}

// --------------------------------------------------------------------------
// Parser
// --------------------------------------------------------------------------

namespace {

class Parser {
public:
  Parser(std::string_view text, int max_dimension)
      : text_(text), max_dimension_(max_dimension) {}

  ExprNodeRef parse() {
    ExprNodeRef e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing input", pos_);
    return e;
  }

  int max_index_seen() const { return max_index_seen_; }

private:
  ExprNodeRef parse_expr() {
    DepthGuard guard(*this);
    ExprNodeRef lhs = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+'))
        lhs = make_binary(NodeKind::Add, std::move(lhs), parse_term());
      else if (eat('-'))
        lhs = make_binary(NodeKind::Subtract, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  ExprNodeRef parse_term() {
    DepthGuard guard(*this);
    ExprNodeRef lhs = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        lhs = make_binary(NodeKind::Multiply, std::move(lhs), parse_factor());
      else if (eat('/'))
        lhs = make_binary(NodeKind::Divide, std::move(lhs), parse_factor());
      else
        return lhs;
    }
  }

  ExprNodeRef parse_factor() {
    DepthGuard guard(*this);
    ExprNodeRef base = parse_base();
    skip_ws();
    if (eat('^'))
      return make_power(std::move(base), parse_exponent());
    return base;
  }

  ExprNodeRef parse_base() {
    DepthGuard guard(*this);
    skip_ws();
    if (pos_ >= text_.size())
      fail("expected expression", pos_);
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make_negate(parse_base());
    }
    if (c == '(') {
      ++pos_;
      ExprNodeRef inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return make_constant(parse_number());
    if (std::isalpha(static_cast<unsigned char>(c)))
      return parse_ident();
    fail("expected expression", pos_);
  }

  ExprNodeRef parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "sqrt" || word == "abs") {
      skip_ws();
      expect('(');
      ExprNodeRef inner = parse_expr();
      expect(')');
      return make_unary(word == "sqrt" ? NodeKind::Sqrt : NodeKind::Abs,
                        std::move(inner));
    }
    if (word == "x") {
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected variable index after 'x'", pos_);
      long index = parse_digits();
      if (index < 1)
        fail("variable index must be positive", start);
      if (index > max_dimension_)
        fail("variable index out of range", start);
      max_index_seen_ = std::max(max_index_seen_, static_cast<int>(index));
      return make_variable(static_cast<int>(index));
    }
    fail("unknown identifier '" + std::string(word) + "'", start);
  }

  double parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
        ++pos_;
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        pos_ = mark; // the 'e' belongs to something else; not ours
      } else {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }
    }
    double value = 0.0;
    auto result =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (result.ec != std::errc() || result.ptr != text_.data() + pos_)
      fail("malformed number", start);
    return value;
  }

  long parse_digits() {
    long value = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > std::numeric_limits<int>::max())
        fail("integer too large", start);
      ++pos_;
    }
    return value;
  }

  int parse_exponent() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent", pos_);
    long magnitude = parse_digits();
    if (magnitude > kMaxPowerMagnitude)
      fail("exponent magnitude exceeds 64", start);
    return static_cast<int>(negative ? -magnitude : magnitude);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!eat(c))
      fail(std::string("expected '") + c + "'", pos_);
  }

  [[noreturn]] void fail(const std::string &message, std::size_t at) {
    throw ParseError("syntax error: " + message, at);
  }

  struct DepthGuard {
    explicit DepthGuard(Parser &p) : parser(p) {
      if (++parser.depth_ > kMaxParseDepth)
        parser.fail("expression nested too deeply", parser.pos_);
    }
    ~DepthGuard() { --parser.depth_; }
    Parser &parser;
  };

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  int max_dimension_;
  int max_index_seen_ = 0;
};

} // namespace

Expr parse_field(std::string_view text, int dimension) {
  if (dimension < 1)
    throw std::invalid_argument("field dimension must be >= 1");
  Parser parser(text, dimension);
  ExprNodeRef root = parser.parse();
  return Expr(std::move(root), dimension);
}

Expr parse_field(std::string_view text) {
  Parser parser(text, std::numeric_limits<int>::max());
  ExprNodeRef root = parser.parse();
  return Expr(std::move(root), std::max(parser.max_index_seen(), 1));
}

// --------------------------------------------------------------------------
// Canonical printer
// --------------------------------------------------------------------------

namespace {

// Binding strength as seen by the grammar: +,- chains bind loosest, then
// *,/, then ^, then unary minus; atoms never need parentheses.
int node_precedence(const ExprNode &node) {
  switch (node.kind) {
  case NodeKind::Add:
  case NodeKind::Subtract:
    return 1;
  case NodeKind::Multiply:
  case NodeKind::Divide:
    return 2;
  case NodeKind::Power:
    return 3;
  case NodeKind::Negate:
    return 4;
  case NodeKind::Constant:
    return node.value < 0 ? 4 : 5;
  default:
    return 5;
  }
}

void print_number(std::string &out, double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, result.ptr);
}

void print_node(std::string &out, const ExprNode &node, int min_precedence) {
  if (node_precedence(node) < min_precedence) {
    out += '(';
    print_node(out, node, 0);
    out += ')';
    return;
  }
  switch (node.kind) {
  case NodeKind::Constant:
    print_number(out, node.value);
    break;
  case NodeKind::Variable:
    out += 'x';
    out += std::to_string(node.index);
    break;
  case NodeKind::Negate:
    out += '-';
    print_node(out, *node.a, 4);
    break;
  case NodeKind::Add:
  case NodeKind::Subtract:
    print_node(out, *node.a, 1);
    out += node.kind == NodeKind::Add ? '+' : '-';
    print_node(out, *node.b, 2);
    break;
  case NodeKind::Multiply:
  case NodeKind::Divide:
    print_node(out, *node.a, 2);
    out += node.kind == NodeKind::Multiply ? '*' : '/';
    print_node(out, *node.b, 3);
    break;
  case NodeKind::Power:
    print_node(out, *node.a, 4);
    out += '^';
    out += std::to_string(node.exponent);
    break;
  case NodeKind::Sqrt:
  case NodeKind::Abs:
    out += node.kind == NodeKind::Sqrt ? "sqrt(" : "abs(";
    print_node(out, *node.a, 0);
    out += ')';
    break;
  }
}

} // namespace

std::string to_text(const Expr &e) {
  std::string out;
  print_node(out, *e.root(), 0);
  return out;
}

// --------------------------------------------------------------------------
// Evaluation
// --------------------------------------------------------------------------

namespace {

[[noreturn]] void domain_error(const char *what) {
  throw EvalDomainError(std::string("field domain error: ") + what);
}

double eval_node(const ExprNode &node, const Point &p) {
  switch (node.kind) {
  case NodeKind::Constant:
    return node.value;
  case NodeKind::Variable:
    return p[node.index - 1];
  case NodeKind::Negate:
    return -eval_node(*node.a, p);
  case NodeKind::Add:
    return eval_node(*node.a, p) + eval_node(*node.b, p);
  case NodeKind::Subtract:
    return eval_node(*node.a, p) - eval_node(*node.b, p);
  case NodeKind::Multiply:
    return eval_node(*node.a, p) * eval_node(*node.b, p);
  case NodeKind::Divide: {
    double denominator = eval_node(*node.b, p);
    if (denominator == 0.0)
      domain_error("division by zero");
    return eval_node(*node.a, p) / denominator;
  }
  case NodeKind::Power: {
    double base = eval_node(*node.a, p);
    int k = node.exponent;
    if (k == 0)
      return 1.0;
    double magnitude = 1.0;
    for (int i = 0; i < std::abs(k); ++i)
      magnitude *= base;
    if (k > 0)
      return magnitude;
    if (magnitude == 0.0)
      domain_error("zero raised to a negative power");
    return 1.0 / magnitude;
  }
  case NodeKind::Sqrt: {
    double inner = eval_node(*node.a, p);
    if (inner < 0.0)
      domain_error("sqrt of a negative value");
    return std::sqrt(inner);
  }
  case NodeKind::Abs:
    return std::abs(eval_node(*node.a, p));
  }
  throw std::logic_error("unreachable node kind");
}

Jet2 jet_constant(double value, Eigen::Index m) {
  return {value, Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m)};
}

Jet2 jet_negate(Jet2 a) {
  a.value = -a.value;
  a.gradient = -a.gradient;
  a.hessian = -a.hessian;
  return a;
}

Jet2 jet_add(Jet2 a, const Jet2 &b) {
  a.value += b.value;
  a.gradient += b.gradient;
  a.hessian += b.hessian;
  return a;
}

Jet2 jet_subtract(Jet2 a, const Jet2 &b) {
  a.value -= b.value;
  a.gradient -= b.gradient;
  a.hessian -= b.hessian;
  return a;
}

Jet2 jet_multiply(const Jet2 &a, const Jet2 &b) {
  Jet2 r;
  r.value = a.value * b.value;
  r.gradient = a.gradient * b.value + b.gradient * a.value;
  r.hessian = a.hessian * b.value + b.hessian * a.value +
              a.gradient * b.gradient.transpose() +
              b.gradient * a.gradient.transpose();
  return r;
}

// q = a / b: q' = (a' - q b') / b and
// q_ij = (a_ij - q b_ij - q_i b_j - q_j b_i) / b.
Jet2 jet_divide(const Jet2 &a, const Jet2 &b) {
  if (b.value == 0.0)
    domain_error("division by zero");
  Jet2 r;
  r.value = a.value / b.value;
  r.gradient = (a.gradient - r.value * b.gradient) / b.value;
  r.hessian = (a.hessian - r.value * b.hessian -
               r.gradient * b.gradient.transpose() -
               b.gradient * r.gradient.transpose()) /
              b.value;
  return r;
}

// Repeated multiplication keeps the domain as wide as the base's; negative
// exponents go through one reciprocal at the end.
Jet2 jet_power(const Jet2 &a, int k, Eigen::Index m) {
  if (k == 0)
    return jet_constant(1.0, m);
  int magnitude = std::abs(k);
  if (k < 0 && a.value == 0.0)
    domain_error("zero raised to a negative power");
  Jet2 r = a;
  for (int i = 1; i < magnitude; ++i)
    r = jet_multiply(r, a);
  if (k < 0)
    r = jet_divide(jet_constant(1.0, m), r);
  return r;
}

// s = sqrt(u): s_i = u_i / (2s), s_ij = (u_ij - 2 s_i s_j) / (2s).
Jet2 jet_sqrt(const Jet2 &a) {
  if (a.value < 0.0)
    domain_error("sqrt of a negative value");
  if (a.value == 0.0)
    domain_error("sqrt differentiated at zero");
  Jet2 r;
  r.value = std::sqrt(a.value);
  double half_inv = 1.0 / (2.0 * r.value);
  r.gradient = a.gradient * half_inv;
  r.hessian =
      (a.hessian - 2.0 * r.gradient * r.gradient.transpose()) * half_inv;
  return r;
}

Jet2 jet_abs(Jet2 a) {
  if (a.value == 0.0)
    domain_error("abs differentiated at zero");
  if (a.value < 0.0)
    return jet_negate(std::move(a));
  return a;
}

Jet2 jet_node(const ExprNode &node, const Point &p) {
  const Eigen::Index m = p.size();
  switch (node.kind) {
  case NodeKind::Constant:
    return jet_constant(node.value, m);
  case NodeKind::Variable: {
    Jet2 r = jet_constant(p[node.index - 1], m);
    r.gradient[node.index - 1] = 1.0;
    return r;
  }
  case NodeKind::Negate:
    return jet_negate(jet_node(*node.a, p));
  case NodeKind::Add:
    return jet_add(jet_node(*node.a, p), jet_node(*node.b, p));
  case NodeKind::Subtract:
    return jet_subtract(jet_node(*node.a, p), jet_node(*node.b, p));
  case NodeKind::Multiply:
    return jet_multiply(jet_node(*node.a, p), jet_node(*node.b, p));
  case NodeKind::Divide:
    return jet_divide(jet_node(*node.a, p), jet_node(*node.b, p));
  case NodeKind::Power:
    return jet_power(jet_node(*node.a, p), node.exponent, m);
  case NodeKind::Sqrt:
    return jet_sqrt(jet_node(*node.a, p));
  case NodeKind::Abs:
    return jet_abs(jet_node(*node.a, p));
  }
  throw std::logic_error("unreachable node kind");
}

void check_point(const Expr &field, const Point &p) {
  if (p.size() != field.dimension())
    throw std::invalid_argument("point length does not match field dimension");
  if (!p.allFinite())
    throw std::invalid_argument("point has non-finite coordinates");
}

} // namespace

double eval_value(const Expr &field, const Point &p) {
  check_point(field, p);
  return eval_node(*field.root(), p);
}

Jet2 eval_jet2(const Expr &field, const Point &p) {
  check_point(field, p);
  Jet2 jet = jet_node(*field.root(), p);
  // The propagation rules are symmetric term by term; mirroring the lower
  // triangle makes the stored invariant bit-exact unconditionally.
  jet.hessian = jet.hessian.selfadjointView<Eigen::Lower>();
  return jet;
}

namespace {

ExprNodeRef substitute_x1(const ExprNodeRef &node, const ExprNodeRef &inner) {
  switch (node->kind) {
  case NodeKind::Constant:
    return node;
  case NodeKind::Variable:
    if (node->index != 1)
      throw std::invalid_argument("profile expression must be univariate");
    return inner;
  default: {
    ExprNode copy = *node;
    if (copy.a)
      copy.a = substitute_x1(copy.a, inner);
    if (copy.b)
      copy.b = substitute_x1(copy.b, inner);
    return make_node(std::move(copy));
  }
  }
}

} // namespace

Expr compose1(const Expr &profile, const Expr &inner) {
  return Expr(substitute_x1(profile.root(), inner.root()), inner.dimension());
}

} // namespace tz
