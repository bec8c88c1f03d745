#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kronlab/rational.hpp"

namespace kronlab {

enum class ParityCase { b_odd, b_even };

// Residues that select the closed-form case for the triple {a, b, n}.
//
//   a*T = 1 (mod a+b), n = r (mod a+b), R = r*T (mod a+b)
//   n = r2 (mod 2a+2b), S = (g+h)*r2 (mod 2a+2b)
//
// (g, h) satisfy a*g - b*h = 1 and come from the parity-specific Bezout
// construction: 2a*G - b*H = 1 with (g, h) = (2G, H) when b is odd, and
// a*G - 2b*H = 1 with (g, h) = (G, 2H) when b is even.
struct CongruenceData {
  std::int64_t r = 0;
  std::int64_t T = 0;
  std::int64_t R = 0;
  std::int64_t r2 = 0;
  std::int64_t S = 0;
  std::int64_t g = 0;
  std::int64_t h = 0;
  ParityCase parity_case = ParityCase::b_odd;
};

// Validates a < b < n, all positive, gcd(a, b) = 1. Throws InvalidInput or
// NotCoprime.
void validate_triple(std::int64_t a, std::int64_t b, std::int64_t n);

CongruenceData congruence_data(std::int64_t a, std::int64_t b, std::int64_t n);

// A closed-form value together with the table row that produced it.
// `regime_ok` is false when the triple fails the sufficient large-n
// conditions, in which case the value is unverified and must not be treated
// as the true constant.
struct FormulaValue {
  Rational value;
  std::string case_label;
  bool regime_ok = false;
};

FormulaValue alpha_formula(std::int64_t a, std::int64_t b, std::int64_t n);
FormulaValue beta_formula(std::int64_t a, std::int64_t b, std::int64_t n);

// L_n = (n + ab) / (2(an + bn + ab)).
Rational ln_value(std::int64_t a, std::int64_t b, std::int64_t n);

// Exact cost of the binary target (t1, t2, t3), with (t1, t2) the canonical
// pair (1/2, 0) for odd b and (0, 1/2) for even b. `t3` must be 0 or 1/2.
FormulaValue binary_mu(std::int64_t a, std::int64_t b, std::int64_t n, const Rational& t3);

// The canonical binary (t1, t2) for the pair (a, b).
std::array<Rational, 2> canonical_binary_pair(std::int64_t a, std::int64_t b);

// Sufficient large-n conditions used by the upper-bound construction:
//   (3b-a)/(2n) <= E_n,  1/(a+b) - L_n > (b-a)/(2n),  E_n < 1/(a+b).
// They are not known to be necessary; the oracle stays authoritative.
bool in_asymptotic_regime(std::int64_t a, std::int64_t b, std::int64_t n);

// C(a, b) with |alpha_formula(a, b, n) - 1/(2(a+b))| <= C/n for every n,
// taken as the largest bound over the four cases of the formula.
Rational asymptotic_envelope(std::int64_t a, std::int64_t b);

// Toggles binary targets at odd frequencies: t_j -> 1/2 - t_j. Cost preserving.
// Throws InvalidInput if sizes differ or an entry is not 0 or 1/2.
std::vector<Rational> toggle_reduce(std::span<const std::int64_t> spectrum,
                                    std::span<const Rational> targets);

// A target at which the cost equals alpha_formula.
//
// For R = a the targets come from the explicit lower-bound construction;
// `t3_raw` keeps the unreduced third target and `targets` holds everything
// reduced mod 1. Otherwise the canonical binary pair is used with the t3 in
// {0, 1/2} maximising binary_mu (0 on a tie).
struct AlphaWitness {
  std::array<Rational, 3> targets;
  Rational t3_raw;
  Rational expected_mu;
  bool binary = false;
};
AlphaWitness alpha_witness(std::int64_t a, std::int64_t b, std::int64_t n);

const char* to_string(ParityCase c);

}  // namespace kronlab
