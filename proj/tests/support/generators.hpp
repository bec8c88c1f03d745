#pragma once

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "kronlab/rational.hpp"

namespace kronlab::testing {

// Small hand-rolled generators over a fixed-seed engine; every property test
// owns its own Gen so failures reproduce from the seed alone.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  bool coin() { return integer(0, 1) == 1; }

  // p/q with 1 <= q <= max_den, p in [0, q).
  Rational unit_rational(std::int64_t max_den) {
    const std::int64_t q = integer(1, max_den);
    return Rational(integer(0, q - 1), q);
  }

  // p/q with 1 <= q <= max_den and |p/q| <= bound.
  Rational signed_rational(std::int64_t max_den, std::int64_t bound) {
    const std::int64_t q = integer(1, max_den);
    return Rational(integer(-bound * q, bound * q), q);
  }

  std::pair<std::int64_t, std::int64_t> coprime_pair(std::int64_t max_b) {
    for (;;) {
      const std::int64_t b = integer(2, max_b);
      const std::int64_t a = integer(1, b - 1);
      if (std::gcd(a, b) == 1) return {a, b};
    }
  }

  std::vector<std::int64_t> spectrum(std::size_t size, std::int64_t max_value) {
    std::vector<std::int64_t> out;
    while (out.size() < size) {
      const std::int64_t v = integer(1, max_value);
      bool fresh = true;
      for (auto w : out) fresh = fresh && w != v;
      if (fresh) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Rational> targets(std::size_t size, std::int64_t max_den) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < size; ++i) out.push_back(unit_rational(max_den));
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace kronlab::testing
