#pragma once

#include <cstdint>
#include <span>

#include "kronlab/rational.hpp"

namespace kronlab {

Integer floor(const Rational& u);
Integer ceil(const Rational& u);

// Nearest integer to u; exact half-integers round down, so the result is the
// smaller of the two candidates.
Integer nearest_integer(const Rational& u);

// u - floor(u), in [0, 1).
Rational fractional_part(const Rational& u);

// <u>: distance from u to the nearest integer, in [0, 1/2].
Rational nearest_int_distance(const Rational& u);

// max_j <v_j>. Throws InvalidInput on an empty vector.
Rational angular_norm(std::span<const Rational> v);

// Coefficients with a*g - b*h = 1 for coprime positive a, b.
//
// g is the least positive solution of a*g = 1 (mod b), so 1 <= g <= b for
// b > 1; b == 1 yields (1, a - 1). Throws NotCoprime when gcd(a, b) != 1 and
// InvalidInput for non-positive arguments.
struct Bezout {
  std::int64_t g;
  std::int64_t h;
};
Bezout bezout_coprime(std::int64_t a, std::int64_t b);

// Residue in [0, m) for m > 0.
std::int64_t mod_floor(const Integer& value, std::int64_t m);

}  // namespace kronlab
