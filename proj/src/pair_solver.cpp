#include "kronlab/pair_solver.hpp"

#include <string>
#include <utility>

#include "kronlab/errors.hpp"

namespace kronlab {
namespace {

Rational imbalance(const PairProblem& p) { return Rational(p.a()) * p.t2() - Rational(p.b()) * p.t1(); }

// Builds the balanced approximate whose integers satisfy b*k1 - a*k2 = m.
BalancedApprox balanced_from_m(const PairProblem& p, const Integer& m) {
  const auto [g, h] = bezout_coprime(p.a(), p.b());
  // b*(-h*m) - a*(-g*m) = m*(a*g - b*h) = m.
  Integer k1 = -Integer(h) * m;
  Integer k2 = -Integer(g) * m;

  // Shift along (a, b) to the representative with the smallest |k1|.
  const Integer shift = nearest_integer(Rational(-k1, p.a()));
  k1 += shift * p.a();
  k2 += shift * p.b();
  if (k1 < 0 && -k1 == k1 + p.a()) {
    k1 += p.a();
    k2 += p.b();
  }

  BalancedApprox out;
  out.x = (p.t1() + Rational(k1) + p.t2() + Rational(k2)) / Rational(p.a() + p.b());
  const Rational residual = Rational(p.a()) * out.x - p.t1() - Rational(k1);
  out.lambda = abs(residual);
  out.sign = residual.sign() < 0 ? -1 : 1;
  out.k1 = std::move(k1);
  out.k2 = std::move(k2);
  return out;
}

}  // namespace

PairProblem::PairProblem(std::int64_t a, std::int64_t b, Rational t1, Rational t2)
    : a_(a), b_(b), t1_(std::move(t1)), t2_(std::move(t2)) {
  if (a <= 0 || b <= 0) throw InvalidInput("pair frequencies must be positive");
  if (a >= b) {
    throw InvalidInput("pair needs a < b, got a=" + std::to_string(a) + " b=" + std::to_string(b));
  }
  bezout_coprime(a, b);  // throws NotCoprime
}

Rational mu_pair(const PairProblem& p) {
  const Rational d = imbalance(p);
  const Rational below = fractional_part(d);
  const Rational above = Rational(1) - below;
  return min(below, above) / Rational(p.a() + p.b());
}

BalancedApprox best_pair_approx(const PairProblem& p) {
  const Rational d = imbalance(p);
  Integer m = floor(d);
  const Rational below = d - Rational(m);
  if (Rational(1) - below < below) ++m;
  return balanced_from_m(p, m);
}

BalancedApprox second_best_approx(const PairProblem& p, const BalancedApprox& best) {
  const auto [g, h] = bezout_coprime(p.a(), p.b());
  const int direction = best.sign;
  BalancedApprox out;
  out.k1 = best.k1 - direction * Integer(h);
  out.k2 = best.k2 - direction * Integer(g);
  out.x = (p.t1() + Rational(out.k1) + p.t2() + Rational(out.k2)) / Rational(p.a() + p.b());
  const Rational residual = Rational(p.a()) * out.x - p.t1() - Rational(out.k1);
  out.lambda = abs(residual);
  out.sign = residual.sign() < 0 ? -1 : 1;
  return out;
}

bool is_balanced(const PairProblem& p, const BalancedApprox& approx) {
  const Rational ra = Rational(p.a()) * approx.x - p.t1() - Rational(approx.k1);
  const Rational rb = Rational(p.b()) * approx.x - p.t2() - Rational(approx.k2);
  return ra == -rb && approx.lambda == abs(ra) &&
         approx.sign == (ra.sign() < 0 ? -1 : 1);
}

}  // namespace kronlab
