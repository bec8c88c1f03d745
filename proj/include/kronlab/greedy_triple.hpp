#pragma once

#include <array>
#include <cstdint>

#include "kronlab/pair_solver.hpp"
#include "kronlab/rational.hpp"

namespace kronlab {

// Three-frequency problem {a, b, n} with targets (t1, t2, t3).
// Requires 0 < a < b < n and gcd(a, b) = 1.
class TripleProblem {
 public:
  TripleProblem(std::int64_t a, std::int64_t b, std::int64_t n, Rational t1, Rational t2,
                Rational t3);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t n() const { return n_; }
  const Rational& t1() const { return t_[0]; }
  const Rational& t2() const { return t_[1]; }
  const Rational& t3() const { return t_[2]; }
  const std::array<Rational, 3>& targets() const { return t_; }
  std::array<std::int64_t, 3> spectrum() const { return {a_, b_, n_}; }

  PairProblem pair() const { return PairProblem(a_, b_, t_[0], t_[1]); }
  TripleProblem negated() const;

 private:
  std::int64_t a_;
  std::int64_t b_;
  std::int64_t n_;
  std::array<Rational, 3> t_;
};

enum class CertificateMethod { small_lambda, greedy_window, oracle };

// An approximate x_star with its exact cost for the problem it was built for.
// `negated` records that the construction ran on -t; x_star and k are
// already mapped back to the original targets.
struct Certificate {
  Rational x_star;
  std::array<Integer, 3> k;
  Rational cost;
  CertificateMethod method = CertificateMethod::greedy_window;
  bool negated = false;
};

// Evaluates x against p from scratch: k_j is the nearest integer to
// n_j*x - t_j and cost is the exact angular norm.
Certificate certify(const TripleProblem& p, const Rational& x, CertificateMethod method,
                    bool negated = false);

enum class WindowCase { positive_sign, negative_sign };

// Interval of alignment points z (n*z = t3 mod 1) for which moving x by the
// balancing delta keeps every residual at most E.
struct ZWindow {
  Rational lo;
  Rational hi;
  WindowCase case_tag = WindowCase::positive_sign;
  Rational anchor_x;
  Rational E;
  Rational lambda;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& z) const { return lo <= z && z <= hi; }
};

struct ZWindowPair {
  ZWindow positive;  // [z1, z2], for a*x - t1 - k1 = +lambda
  ZWindow negative;  // [z3, z4], for a*x - t1 - k1 = -lambda
};

// Throws EmptyWindow when E < lambda and NotApplicable when
// lambda <= (b-a)/(2n).
ZWindowPair z_windows(const BalancedApprox& approx, const Rational& E, const TripleProblem& p);

// E(lambda) = (n(a+b)*lambda + ab) / (2ab + an + bn); both windows then have
// width exactly 1/n.
Rational balanced_window_bound(const TripleProblem& p, const Rational& lambda);

// Used when lambda <= (b-a)/(2n): snap x to z = (t3 + k3)/n with k3 the
// nearest integer to n*x - t3. Throws NotApplicable otherwise.
Certificate small_lambda_certificate(const TripleProblem& p, const BalancedApprox& approx);

// Moves x towards the alignment point z by the balancing delta; x is kept
// when |n*x - n*z| <= lambda. Throws InvalidInput when n*z != t3 (mod 1) or
// |n*z - n*x| > 1, and NotApplicable when lambda <= (b-a)/(2n).
Certificate modify(const BalancedApprox& approx, const Rational& z, const TripleProblem& p);

// As above, additionally checking that z lies in `window` and that the
// window matches the approximate's sign. Throws WindowViolation otherwise.
Certificate modify(const BalancedApprox& approx, const Rational& z, const TripleProblem& p,
                   const ZWindow& window);

// Certificate with cost <= max(E(mu_pair), (3b-a)/(2n)).
Certificate greedy_bound(const TripleProblem& p);

enum class GreedyStatus { certified, not_in_asymptotic_regime };

struct GreedyOutcome {
  Certificate certificate;
  GreedyStatus status = GreedyStatus::certified;
};

// Certificate with cost <= E_n, built from the best and second-best pair
// approximates. When no alignment point fits either window, or the final
// cost exceeds E_n, the status is not_in_asymptotic_regime and the
// certificate is the greedy_bound fallback.
GreedyOutcome greedy_en_certificate(const TripleProblem& p);

const char* to_string(CertificateMethod m);
const char* to_string(WindowCase c);

}  // namespace kronlab
