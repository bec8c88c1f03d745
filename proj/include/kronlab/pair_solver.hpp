#pragma once

#include <cstdint>

#include "kronlab/exact_arith.hpp"
#include "kronlab/rational.hpp"

namespace kronlab {

// Two-frequency problem {a, b} with targets (t1, t2). Requires a < b and
// gcd(a, b) = 1; the constructor throws InvalidInput / NotCoprime otherwise.
class PairProblem {
 public:
  PairProblem(std::int64_t a, std::int64_t b, Rational t1, Rational t2);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  const Rational& t1() const { return t1_; }
  const Rational& t2() const { return t2_; }

 private:
  std::int64_t a_;
  std::int64_t b_;
  Rational t1_;
  Rational t2_;
};

// A point x with integers (k1, k2) at which the residuals of a and b are
// balanced with opposite signs:
//
//   a*x - (t1 + k1) = -(b*x - (t2 + k2)),   lambda = |a*x - (t1 + k1)|.
//
// `sign` is the sign of a*x - (t1 + k1); it is +1 when lambda is zero.
struct BalancedApprox {
  Rational x;
  Integer k1;
  Integer k2;
  Rational lambda;
  int sign = 1;
};

// mu_{a,b}(t1, t2) = min over m in {floor(D), floor(D) + 1} of |D - m|/(a + b),
// where D = a*t2 - b*t1.
Rational mu_pair(const PairProblem& p);

// Best balanced approximate. Ties between the two integer choices go to
// floor(D); among the equivalent (k1, k2) the one with the smallest |k1| is
// returned (non-negative k1 on a tie).
BalancedApprox best_pair_approx(const PairProblem& p);

// The balanced approximate with the complementary cost 1/(a+b) - lambda,
// obtained by shifting (k1, k2) by the Bezout pair of (a, b). For a best
// approximate with sign +1 the shift is (k1 - h, k2 - g) and
// x - x' = (g + h)/(a + b); with sign -1 the shift runs the other way.
BalancedApprox second_best_approx(const PairProblem& p, const BalancedApprox& best);

// True when (x, k1, k2) satisfies the balance identity for p.
bool is_balanced(const PairProblem& p, const BalancedApprox& approx);

}  // namespace kronlab
