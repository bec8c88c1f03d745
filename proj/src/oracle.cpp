#include "kronlab/oracle.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "kronlab/errors.hpp"
#include "kronlab/exact_arith.hpp"
#include "kronlab/parallel.hpp"

namespace kronlab {
namespace {

Integer mod_positive(const Integer& value, const Integer& m) {
  Integer r = value % m;
  if (r < 0) r += m;
  return r;
}

Integer ceil_div(const Integer& num, const Integer& den) { return ceil(Rational(num, den)); }

void validate_spectrum(std::span<const std::int64_t> spectrum) {
  if (spectrum.empty()) throw InvalidInput("spectrum must be non-empty");
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    if (spectrum[j] <= 0) throw InvalidInput("spectrum entries must be positive");
    if (j > 0 && spectrum[j] <= spectrum[j - 1]) {
      throw InvalidInput("spectrum must be strictly increasing");
    }
  }
}

}  // namespace

SpectrumProblem::SpectrumProblem(std::vector<std::int64_t> spectrum, std::vector<Rational> targets)
    : spectrum_(std::move(spectrum)), targets_(std::move(targets)) {
  validate_spectrum(spectrum_);
  if (targets_.size() != spectrum_.size()) {
    throw InvalidInput("expected " + std::to_string(spectrum_.size()) + " targets, got " +
                       std::to_string(targets_.size()));
  }
}

OracleResult mu_exact(const SpectrumProblem& p) {
  const std::size_t d = p.size();
  const auto& n = p.spectrum();

  // Common denominator Q: t_j = P_j / Q.
  Integer Q = 1;
  for (const Rational& t : p.targets()) Q = boost::multiprecision::lcm(Q, t.den());
  std::vector<Integer> P(d);
  for (std::size_t j = 0; j < d; ++j) P[j] = p.targets()[j].num() * (Q / p.targets()[j].den());

  bool have_best = false;
  Integer best_m, best_den, best_x;
  std::uint64_t examined = 0;
  std::vector<Integer> residue(d), step(d);

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      // Candidates x = X / B with X = P_i + P_j + s*Q and B = Q*(n_i + n_j).
      // Residual k of such a candidate is (n_k*X - P_k*(n_i + n_j)) / B.
      const Integer pair_sum = n[i] + n[j];
      const Integer B = Q * pair_sum;
      const Integer base = P[i] + P[j];
      Integer X = base + ceil_div(-base, Q) * Q;
      for (std::size_t k = 0; k < d; ++k) {
        residue[k] = mod_positive(n[k] * X - P[k] * pair_sum, B);
        step[k] = mod_positive(n[k] * Q, B);
      }
      for (; X < B; X += Q) {
        ++examined;
        Integer m = 0;
        for (std::size_t k = 0; k < d; ++k) {
          const Integer other = B - residue[k];
          const Integer& dist = residue[k] < other ? residue[k] : other;
          if (dist > m) m = dist;
        }
        bool better = !have_best;
        if (!better) {
          const Integer lhs = m * best_den;
          const Integer rhs = best_m * B;
          better = lhs < rhs || (lhs == rhs && X * best_den < best_x * B);
        }
        if (better) {
          have_best = true;
          best_m = m;
          best_den = B;
          best_x = X;
        }
        for (std::size_t k = 0; k < d; ++k) {
          residue[k] += step[k];
          if (residue[k] >= B) residue[k] -= B;
        }
      }
    }
  }
  if (!have_best) throw InvariantBreach("oracle found no candidate");

  OracleResult out;
  out.value = Rational(best_m, best_den);
  out.x_star = Rational(best_x, best_den);
  out.k_star.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.k_star.push_back(nearest_integer(Rational(n[j]) * out.x_star - p.targets()[j]));
  }
  out.candidates_examined = examined;
  return out;
}

std::uint64_t candidate_budget(std::span<const std::int64_t> spectrum) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    for (std::size_t j = i; j < spectrum.size(); ++j) {
      total += static_cast<std::uint64_t>(spectrum[i] + spectrum[j]) + 1;
    }
  }
  return total;
}

TargetOptimum beta_exact(std::span<const std::int64_t> spectrum, const BinaryOptions& options) {
  validate_spectrum(spectrum);
  const std::size_t d = spectrum.size();
  if (d > options.max_size) {
    throw TooLarge("beta_exact limited to " + std::to_string(options.max_size) +
                   " frequencies, got " + std::to_string(d));
  }

  // Bit (d-1-j) of a mask selects t_j = 1/2, so increasing masks are in
  // lexicographic order.
  const auto target_of = [&](std::uint64_t mask) {
    std::vector<Rational> t(d);
    for (std::size_t j = 0; j < d; ++j) {
      if ((mask >> (d - 1 - j)) & 1u) t[j] = Rational(1, 2);
    }
    return t;
  };
  std::uint64_t odd_mask = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (spectrum[j] % 2 != 0) odd_mask |= std::uint64_t{1} << (d - 1 - j);
  }

  // Toggling pairs mask with mask ^ odd_mask at equal cost; evaluate the
  // smaller member of each pair only.
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    if (options.use_toggling && (mask ^ odd_mask) < mask) continue;
    masks.push_back(mask);
  }

  const std::vector<std::int64_t> freqs(spectrum.begin(), spectrum.end());
  std::vector<Rational> values(masks.size());
  parallel_for(masks.size(), options.jobs, [&](std::size_t i) {
    values[i] = mu_exact(SpectrumProblem(freqs, target_of(masks[i]))).value;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < masks.size(); ++i) {
    if (values[best] < values[i]) best = i;
  }
  return {values[best], target_of(masks[best])};
}

TargetOptimum alpha_grid_lower_bound(std::span<const std::int64_t> spectrum, std::int64_t D,
                                     unsigned jobs, std::uint64_t max_targets) {
  validate_spectrum(spectrum);
  if (D < 2) throw InvalidInput("grid resolution D must be at least 2");
  const std::size_t d = spectrum.size();

  std::uint64_t count = 1;
  for (std::size_t j = 1; j < d; ++j) {
    if (count > max_targets / static_cast<std::uint64_t>(D)) {
      throw TooLarge("grid has more than " + std::to_string(max_targets) + " targets");
    }
    count *= static_cast<std::uint64_t>(D);
  }

  // Index i enumerates (t_2, ..., t_d) in lexicographic order.
  const auto target_of = [&](std::uint64_t index) {
    std::vector<Rational> t(d);
    for (std::size_t j = d; j-- > 1;) {
      t[j] = Rational(static_cast<std::int64_t>(index % static_cast<std::uint64_t>(D)), D);
      index /= static_cast<std::uint64_t>(D);
    }
    return t;
  };

  const std::vector<std::int64_t> freqs(spectrum.begin(), spectrum.end());
  std::vector<Rational> values(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    values[i] = mu_exact(SpectrumProblem(freqs, target_of(i))).value;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (values[best] < values[i]) best = i;
  }
  return {values[best], target_of(best)};
}

}  // namespace kronlab
