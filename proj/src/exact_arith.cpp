#include "kronlab/exact_arith.hpp"

#include <numeric>
#include <string>

#include "kronlab/errors.hpp"

namespace kronlab {

Integer floor(const Rational& u) {
  Integer q, r;
  boost::multiprecision::divide_qr(u.num(), u.den(), q, r);
  if (r < 0) --q;
  return q;
}

Integer ceil(const Rational& u) {
  Integer q, r;
  boost::multiprecision::divide_qr(u.num(), u.den(), q, r);
  if (r > 0) ++q;
  return q;
}

Integer nearest_integer(const Rational& u) { return ceil(u - Rational(1, 2)); }

Rational fractional_part(const Rational& u) { return u - Rational(floor(u)); }

Rational nearest_int_distance(const Rational& u) {
  Rational f = fractional_part(u);
  Rational g = Rational(1) - f;
  return g < f ? g : f;
}

Rational angular_norm(std::span<const Rational> v) {
  if (v.empty()) throw InvalidInput("angular_norm of an empty vector");
  Rational best = nearest_int_distance(v.front());
  for (const Rational& component : v.subspan(1)) {
    Rational d = nearest_int_distance(component);
    if (best < d) best = std::move(d);
  }
  return best;
}

Bezout bezout_coprime(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw InvalidInput("bezout_coprime needs positive arguments");
  if (std::gcd(a, b) != 1) {
    throw NotCoprime("gcd(" + std::to_string(a) + ", " + std::to_string(b) + ") != 1");
  }
  if (b == 1) return {1, a - 1};

  // Extended Euclid on (a mod b, b) for the inverse of a modulo b.
  Integer old_r = a % b, r = b;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer next_r = old_r - q * r;
    old_r = r;
    r = next_r;
    Integer next_s = old_s - q * s;
    old_s = s;
    s = next_s;
  }
  Integer g = old_s % b;
  if (g <= 0) g += b;
  const Integer h = (Integer(a) * g - 1) / b;
  return {static_cast<std::int64_t>(g), static_cast<std::int64_t>(h)};
}

std::int64_t mod_floor(const Integer& value, std::int64_t m) {
  Integer r = value % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace kronlab
