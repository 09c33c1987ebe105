#ifndef TZ_RATIONAL_HPP
#define TZ_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tz {

/// Exact rational with arbitrary-precision integer numerator and denominator,
/// always stored reduced with a positive denominator. Closed-form constants
/// like (-n)^n / (n+1)^(n+1) stay exact for any n in range.
class Rational {
public:
  Rational() : value_(0) {}
  Rational(long long value) : value_(static_cast<long>(value)) {}
  Rational(long long numerator, long long denominator);

  /// base^exponent as an exact integer (exponent >= 0).
  static Rational integer_power(long long base, unsigned exponent);

  /// Parses "p", "-p" or "p/q" in base 10. Throws std::invalid_argument on
  /// malformed text or zero denominator.
  static Rational from_string(std::string_view text);

  Rational operator-() const;
  Rational operator+(const Rational &rhs) const;
  Rational operator-(const Rational &rhs) const;
  Rational operator*(const Rational &rhs) const;
  Rational operator/(const Rational &rhs) const; // throws on rhs == 0

  bool operator==(const Rational &rhs) const { return value_ == rhs.value_; }
  bool operator!=(const Rational &rhs) const { return value_ != rhs.value_; }
  bool operator<(const Rational &rhs) const { return value_ < rhs.value_; }

  int sign() const { return sgn(value_); }

  /// Nearest double, correct even when numerator and denominator separately
  /// overflow the double range.
  double to_double() const { return value_.get_d(); }

  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  std::string numerator_str() const { return value_.get_num().get_str(); }
  std::string denominator_str() const { return value_.get_den().get_str(); }

private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}
  mpq_class value_;
};

} // namespace tz

#endif // TZ_RATIONAL_HPP
