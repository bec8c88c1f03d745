#include "kronlab/greedy_triple.hpp"

#include <optional>
#include <utility>

#include "kronlab/closed_form.hpp"
#include "kronlab/errors.hpp"
#include "kronlab/exact_arith.hpp"

namespace kronlab {
namespace {

Rational small_lambda_threshold(const TripleProblem& p) { return Rational(p.b() - p.a(), 2 * p.n()); }

// k3 with (t3 + k3)/n in the window, closest to n*anchor - t3; smaller k3 on
// a tie.
std::optional<Integer> alignment_index(const ZWindow& w, const TripleProblem& p) {
  const Rational n(p.n());
  const Integer lowest = ceil(n * w.lo - p.t3());
  const Integer highest = floor(n * w.hi - p.t3());
  if (highest < lowest) return std::nullopt;
  Integer k3 = nearest_integer(n * w.anchor_x - p.t3());
  if (k3 < lowest) k3 = lowest;
  if (k3 > highest) k3 = highest;
  return k3;
}

Rational alignment_point(const Integer& k3, const TripleProblem& p) {
  return (p.t3() + Rational(k3)) / Rational(p.n());
}

std::optional<Certificate> certify_in_window(const BalancedApprox& approx, const ZWindow& w,
                                             const TripleProblem& p) {
  const auto k3 = alignment_index(w, p);
  if (!k3) return std::nullopt;
  return modify(approx, alignment_point(*k3, p), p, w);
}

Certificate map_back(const TripleProblem& original, const Certificate& c, bool negated) {
  if (!negated) return c;
  return certify(original, -c.x_star, c.method, true);
}

}  // namespace

TripleProblem::TripleProblem(std::int64_t a, std::int64_t b, std::int64_t n, Rational t1,
                             Rational t2, Rational t3)
    : a_(a), b_(b), n_(n), t_{std::move(t1), std::move(t2), std::move(t3)} {
  validate_triple(a, b, n);
}

TripleProblem TripleProblem::negated() const {
  return TripleProblem(a_, b_, n_, -t_[0], -t_[1], -t_[2]);
}

Certificate certify(const TripleProblem& p, const Rational& x, CertificateMethod method,
                    bool negated) {
  Certificate c;
  c.x_star = x;
  c.method = method;
  c.negated = negated;
  const auto spectrum = p.spectrum();
  for (std::size_t j = 0; j < 3; ++j) {
    const Rational u = Rational(spectrum[j]) * x - p.targets()[j];
    c.k[j] = nearest_integer(u);
    const Rational residual = abs(u - Rational(c.k[j]));
    if (j == 0 || c.cost < residual) c.cost = residual;
  }
  return c;
}

Rational balanced_window_bound(const TripleProblem& p, const Rational& lambda) {
  const Integer A = p.a(), B = p.b(), N = p.n();
  return (Rational(N * (A + B)) * lambda + Rational(A * B)) / Rational(2 * A * B + A * N + B * N);
}

ZWindowPair z_windows(const BalancedApprox& approx, const Rational& E, const TripleProblem& p) {
  if (E < approx.lambda) {
    throw EmptyWindow("E = " + E.str() + " is below lambda = " + approx.lambda.str());
  }
  if (approx.lambda <= small_lambda_threshold(p)) {
    throw NotApplicable("z-windows need lambda > (b-a)/(2n)");
  }
  const Rational a(p.a()), b(p.b()), n(p.n());
  const Rational& x = approx.x;
  const Rational n_lambda = n * approx.lambda;

  ZWindowPair out;
  out.positive = {x + (n_lambda - (b + n) * E) / (b * n), x + ((a + n) * E - n_lambda) / (a * n),
                  WindowCase::positive_sign, x, E, approx.lambda};
  out.negative = {x + (n_lambda - (a + n) * E) / (a * n), x + ((b + n) * E - n_lambda) / (b * n),
                  WindowCase::negative_sign, x, E, approx.lambda};
  return out;
}

Certificate small_lambda_certificate(const TripleProblem& p, const BalancedApprox& approx) {
  if (approx.lambda > small_lambda_threshold(p)) {
    throw NotApplicable("small-lambda construction needs lambda <= (b-a)/(2n)");
  }
  const Integer k3 = nearest_integer(Rational(p.n()) * approx.x - p.t3());
  return certify(p, alignment_point(k3, p), CertificateMethod::small_lambda);
}

Certificate modify(const BalancedApprox& approx, const Rational& z, const TripleProblem& p) {
  const Rational n(p.n());
  if (!fractional_part(n * z - p.t3()).num().is_zero()) {
    throw InvalidInput("alignment point must satisfy n*z = t3 (mod 1)");
  }
  const Rational gap = abs(n * approx.x - n * z);
  if (gap > Rational(1)) throw InvalidInput("alignment point must satisfy |n*z - n*x| <= 1");
  if (approx.lambda <= small_lambda_threshold(p)) {
    throw NotApplicable("modify needs lambda > (b-a)/(2n)");
  }

  if (gap <= approx.lambda) return certify(p, approx.x, CertificateMethod::greedy_window);

  // Below x we balance against the component that grows when x decreases
  // (b for sign +1, a for sign -1); above x against the other one.
  const Rational excess = gap - approx.lambda;
  const bool left = z <= approx.x;
  const bool balance_with_b = (approx.sign > 0) == left;
  const Rational delta = excess / Rational((balance_with_b ? p.b() : p.a()) + p.n());
  const Rational x_star = left ? approx.x - delta : approx.x + delta;
  return certify(p, x_star, CertificateMethod::greedy_window);
}

Certificate modify(const BalancedApprox& approx, const Rational& z, const TripleProblem& p,
                   const ZWindow& window) {
  const WindowCase expected =
      approx.sign > 0 ? WindowCase::positive_sign : WindowCase::negative_sign;
  if (window.case_tag != expected || window.anchor_x != approx.x ||
      window.lambda != approx.lambda) {
    throw WindowViolation("window was not built for this approximate");
  }
  if (!window.contains(z)) {
    throw WindowViolation("z = " + z.str() + " outside [" + window.lo.str() + ", " +
                          window.hi.str() + "]");
  }
  return modify(approx, z, p);
}

Certificate greedy_bound(const TripleProblem& p) {
  const BalancedApprox best = best_pair_approx(p.pair());
  if (best.lambda.sign() == 0 || best.lambda <= small_lambda_threshold(p)) {
    return small_lambda_certificate(p, best);
  }
  const ZWindowPair windows = z_windows(best, balanced_window_bound(p, best.lambda), p);
  const ZWindow& w = best.sign > 0 ? windows.positive : windows.negative;
  auto cert = certify_in_window(best, w, p);
  if (!cert) throw InvariantBreach("window of width 1/n holds no alignment point");
  return *cert;
}

GreedyOutcome greedy_en_certificate(const TripleProblem& p) {
  // Work with targets whose best pair approximate has a*x - t1 - k1 >= 0.
  bool negated = false;
  TripleProblem work = p;
  BalancedApprox best = best_pair_approx(work.pair());
  if (best.sign < 0) {
    work = p.negated();
    negated = true;
    best = best_pair_approx(work.pair());
  }

  const Rational e_n = alpha_formula(p.a(), p.b(), p.n()).value;
  const Rational l_n = ln_value(p.a(), p.b(), p.n());
  const Rational pair_gap = Rational(1, p.a() + p.b());

  std::optional<Certificate> found;
  try {
    if (best.lambda.sign() == 0 || best.lambda <= small_lambda_threshold(work)) {
      found = small_lambda_certificate(work, best);
    } else if (best.lambda <= pair_gap - l_n) {
      found = certify_in_window(best, z_windows(best, l_n, work).positive, work);
    } else {
      const BalancedApprox second = second_best_approx(work.pair(), best);
      auto from_best = certify_in_window(best, z_windows(best, e_n, work).positive, work);
      auto from_second = certify_in_window(second, z_windows(second, e_n, work).negative, work);
      if (from_best && (!from_second || from_best->cost <= from_second->cost)) {
        found = std::move(from_best);
      } else {
        found = std::move(from_second);
      }
    }
  } catch (const NotApplicable&) {
    found.reset();
  } catch (const EmptyWindow&) {
    found.reset();
  }

  if (found && found->cost <= e_n) {
    return {map_back(p, *found, negated), GreedyStatus::certified};
  }
  Certificate fallback = greedy_bound(p);
  if (found) {
    Certificate mapped = map_back(p, *found, negated);
    if (mapped.cost < fallback.cost) fallback = std::move(mapped);
  }
  return {std::move(fallback), GreedyStatus::not_in_asymptotic_regime};
}

const char* to_string(CertificateMethod m) {
  switch (m) {
    case CertificateMethod::small_lambda:
      return "small-lambda";
    case CertificateMethod::greedy_window:
      return "greedy-window";
    case CertificateMethod::oracle:
      return "oracle";
  }
  return "unknown";
}

const char* to_string(WindowCase c) {
  return c == WindowCase::positive_sign ? "positive-sign (i)" : "negative-sign (ii)";
}

}  // namespace kronlab
