#include "tz/rational.hpp"

#include <stdexcept>

namespace tz {

Rational::Rational(long long numerator, long long denominator)
    : value_(static_cast<long>(numerator), static_cast<long>(denominator)) {
  if (denominator == 0)
    throw std::invalid_argument("rational denominator must be nonzero");
  value_.canonicalize();
}

Rational Rational::integer_power(long long base, unsigned exponent) {
  mpz_class result;
  mpz_class b(static_cast<long>(base));
  mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
  return Rational(mpq_class(result));
}

Rational Rational::from_string(std::string_view text) {
  mpq_class value;
  if (value.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("malformed rational literal");
  if (value.get_den() == 0)
    throw std::invalid_argument("rational denominator must be nonzero");
  value.canonicalize();
  return Rational(std::move(value));
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational Rational::operator+(const Rational &rhs) const {
  return Rational(mpq_class(value_ + rhs.value_));
}

Rational Rational::operator-(const Rational &rhs) const {
  return Rational(mpq_class(value_ - rhs.value_));
}

Rational Rational::operator*(const Rational &rhs) const {
  return Rational(mpq_class(value_ * rhs.value_));
}

Rational Rational::operator/(const Rational &rhs) const {
  if (rhs.value_ == 0)
    throw std::invalid_argument("rational division by zero");
  return Rational(mpq_class(value_ / rhs.value_));
}

std::string Rational::str() const {
  if (value_.get_den() == 1)
    return value_.get_num().get_str();
  return value_.get_str();
}

} // namespace tz
