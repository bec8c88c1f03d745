#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kronlab {

using Integer = boost::multiprecision::cpp_int;

// Exact fraction in lowest terms with a positive denominator.
//
// Rationals are immutable values: every operation returns a new value, so
// they can be shared between threads freely.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}

  template <std::integral T>
  Rational(T value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& value) : num_(value), den_(1) {}  // NOLINT

  // Throws InvalidInput if `den` is zero.
  Rational(Integer num, Integer den);

  // Accepts "p/q", "p", and decimal text such as "-0.125" or "2.5e-3". Decimal
  // text is converted exactly. Throws InvalidInput on anything else.
  static Rational parse(std::string_view text);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  Rational operator-() const;
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  // Throws InvalidInput on division by zero.
  friend Rational operator/(const Rational& x, const Rational& y);

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

  // "p/q", or "p" when the value is an integer.
  std::string str() const;
  // Always "p/q", including "p/1" for integers. Used for CSV cells.
  std::string fraction_str() const;
  // Decimal rendering with `significant_digits` digits, rounded half-to-even.
  // For display only; never compare these strings.
  std::string decimal(int significant_digits = 12) const;

  std::size_t hash() const;

 private:
  struct Canonical {};
  Rational(Integer num, Integer den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  Integer num_;
  Integer den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& x);
const Rational& min(const Rational& x, const Rational& y);
const Rational& max(const Rational& x, const Rational& y);

// Integer parsing with the same error contract as Rational::parse.
Integer parse_integer(std::string_view text);

}  // namespace kronlab

template <>
struct std::hash<kronlab::Rational> {
  std::size_t operator()(const kronlab::Rational& r) const noexcept { return r.hash(); }
};
