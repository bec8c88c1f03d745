#include "kronlab/closed_form.hpp"

#include <numeric>
#include <string>

#include "kronlab/errors.hpp"
#include "kronlab/exact_arith.hpp"

namespace kronlab {
namespace {

Rational ratio(const Integer& num, const Integer& den) { return Rational(num, den); }

// The four-case value E_n, keyed on R.
FormulaValue alpha_value(std::int64_t a, std::int64_t b, std::int64_t n, std::int64_t R) {
  const Integer A = a, B = b, N = n, RR = R;
  if (R < a) return {ratio(N + A * A + A * B - A * RR, 2 * (A + B) * (A + N)), "R<a"};
  if (R == a) return {ratio(N + A * B, 2 * (A * N + B * N + A * B)), "R=a"};
  if (R <= 2 * a) return {ratio(N + B * RR, 2 * (A + B) * (B + N)), "a<R<=2a"};
  return {ratio(N + 2 * A * A + 2 * A * B - A * RR, 2 * (A + B) * (A + N)), "R>2a"};
}

bool regime_holds(std::int64_t a, std::int64_t b, std::int64_t n, const Rational& e_n) {
  const Rational pair_bound(1, a + b);
  return Rational(3 * b - a, 2 * n) <= e_n &&
         pair_bound - ln_value(a, b, n) > Rational(b - a, 2 * n) && e_n < pair_bound;
}

}  // namespace

void validate_triple(std::int64_t a, std::int64_t b, std::int64_t n) {
  if (a <= 0 || b <= 0 || n <= 0) throw InvalidInput("frequencies must be positive");
  if (!(a < b && b < n)) {
    throw InvalidInput("need a < b < n, got (" + std::to_string(a) + ", " + std::to_string(b) +
                       ", " + std::to_string(n) + ")");
  }
  if (std::gcd(a, b) != 1) {
    throw NotCoprime("gcd(" + std::to_string(a) + ", " + std::to_string(b) + ") != 1");
  }
}

CongruenceData congruence_data(std::int64_t a, std::int64_t b, std::int64_t n) {
  validate_triple(a, b, n);
  CongruenceData c;
  const std::int64_t m = a + b;
  c.r = n % m;
  c.T = bezout_coprime(a, m).g % m;
  c.R = mod_floor(Integer(c.r) * c.T, m);
  c.r2 = n % (2 * m);
  if (b % 2 != 0) {
    const auto [G, H] = bezout_coprime(2 * a, b);
    c.g = 2 * G;
    c.h = H;
    c.parity_case = ParityCase::b_odd;
  } else {
    const auto [G, H] = bezout_coprime(a, 2 * b);
    c.g = G;
    c.h = 2 * H;
    c.parity_case = ParityCase::b_even;
  }
  c.S = mod_floor(Integer(c.g + c.h) * c.r2, 2 * m);
  return c;
}

Rational ln_value(std::int64_t a, std::int64_t b, std::int64_t n) {
  validate_triple(a, b, n);
  const Integer A = a, B = b, N = n;
  return ratio(N + A * B, 2 * (A * N + B * N + A * B));
}

FormulaValue alpha_formula(std::int64_t a, std::int64_t b, std::int64_t n) {
  const CongruenceData c = congruence_data(a, b, n);
  FormulaValue out = alpha_value(a, b, n, c.R);
  out.regime_ok = regime_holds(a, b, n, out.value);
  return out;
}

FormulaValue beta_formula(std::int64_t a, std::int64_t b, std::int64_t n) {
  const CongruenceData c = congruence_data(a, b, n);
  const FormulaValue alpha = alpha_value(a, b, n, c.R);
  const bool regime = regime_holds(a, b, n, alpha.value);
  if (c.R != a) return {alpha.value, alpha.case_label, regime};
  const Integer A = a, B = b, N = n;
  return {ratio(N + A * B, 2 * (A + B) * (A + N)), "R=a (binary)", regime};
}

std::array<Rational, 2> canonical_binary_pair(std::int64_t a, std::int64_t b) {
  (void)a;
  if (b % 2 != 0) return {Rational(1, 2), Rational(0)};
  return {Rational(0), Rational(1, 2)};
}

FormulaValue binary_mu(std::int64_t a, std::int64_t b, std::int64_t n, const Rational& t3) {
  const bool half = t3 == Rational(1, 2);
  if (!half && t3 != Rational(0)) throw InvalidInput("binary_mu needs t3 in {0, 1/2}");
  const CongruenceData c = congruence_data(a, b, n);
  const Integer A = a, B = b, N = n, S = c.S;
  const std::int64_t s = c.S;
  const std::int64_t ab = a + b;
  const Rational pair_value(1, 2 * ab);

  FormulaValue out;
  if (!half) {
    if (s == 0 || s == 1 || s == 2 * ab - 1) {
      out = {pair_value, "t3=0 type1: S in {0,1,2a+2b-1}"};
    } else if (s <= 2 * a) {
      out = {ratio(N + B * S, 2 * (A + B) * (B + N)), "t3=0 type3: 2<=S<=2a"};
    } else {
      out = {ratio(N + 2 * A * A + 2 * A * B - A * S, 2 * (A + B) * (A + N)),
             "t3=0 type2: 2a<S<=2a+2b-2"};
    }
  } else {
    if (s == ab - 1 || s == ab || s == ab + 1) {
      out = {pair_value, "t3=1/2 type1: S in {a+b-1,a+b,a+b+1}"};
    } else if (s < ab - 1) {
      out = {ratio(N + A * A + A * B - A * S, 2 * (A + B) * (A + N)), "t3=1/2 type2: 0<=S<a+b-1"};
    } else if (s <= 3 * a + b) {
      out = {ratio(N - A * B - B * B + B * S, 2 * (A + B) * (B + N)),
             "t3=1/2 type3: a+b+1<S<=3a+b"};
    } else {
      out = {ratio(N + 3 * A * A + 3 * A * B - A * S, 2 * (A + B) * (A + N)),
             "t3=1/2 type2: 3a+b<S<2a+2b"};
    }
  }
  out.regime_ok = regime_holds(a, b, n, alpha_value(a, b, n, c.R).value);
  return out;
}

bool in_asymptotic_regime(std::int64_t a, std::int64_t b, std::int64_t n) {
  return alpha_formula(a, b, n).regime_ok;
}

Rational asymptotic_envelope(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= a) throw InvalidInput("asymptotic_envelope needs 0 < a < b");
  const Integer A = a, B = b;
  const Integer twice = 2 * (A + B);
  Rational c = ratio(A * (A + B - 1), twice);                             // R < a
  c = max(c, ratio(A * B * (A + B - 1), twice * (A + B)));                // R = a
  c = max(c, ratio(B * (2 * A - 1), twice));                              // a < R <= 2a
  c = max(c, ratio(A * (2 * B - 2), twice));                              // R > 2a
  return c;
}

std::vector<Rational> toggle_reduce(std::span<const std::int64_t> spectrum,
                                    std::span<const Rational> targets) {
  if (spectrum.size() != targets.size()) throw InvalidInput("spectrum/target size mismatch");
  const Rational half(1, 2);
  std::vector<Rational> out;
  out.reserve(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (targets[j] != Rational(0) && targets[j] != half) {
      throw InvalidInput("toggle_reduce needs binary targets, got " + targets[j].str());
    }
    out.push_back(spectrum[j] % 2 == 0 ? targets[j] : half - targets[j]);
  }
  return out;
}

AlphaWitness alpha_witness(std::int64_t a, std::int64_t b, std::int64_t n) {
  const CongruenceData c = congruence_data(a, b, n);
  AlphaWitness w;
  if (c.R == a) {
    const Integer A = a, B = b, N = n;
    const Rational ln = ln_value(a, b, n);
    const Rational t2 = Rational(a + b, a) * (Rational(1, a + b) - ln);
    w.t3_raw = ratio((A + N) * (N + A * B), 2 * A * (A * N + B * N + A * B));
    w.targets = {Rational(0), fractional_part(t2), fractional_part(w.t3_raw)};
    w.expected_mu = ln;
    w.binary = false;
    return w;
  }
  const auto pair = canonical_binary_pair(a, b);
  const Rational at_zero = binary_mu(a, b, n, Rational(0)).value;
  const Rational at_half = binary_mu(a, b, n, Rational(1, 2)).value;
  const Rational t3 = at_zero < at_half ? Rational(1, 2) : Rational(0);
  w.targets = {pair[0], pair[1], t3};
  w.t3_raw = t3;
  w.expected_mu = max(at_zero, at_half);
  w.binary = true;
  return w;
}

const char* to_string(ParityCase c) { return c == ParityCase::b_odd ? "b-odd" : "b-even"; }

}  // namespace kronlab
