#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kronlab/rational.hpp"

namespace kronlab {

// Distinct positive frequencies in increasing order, with one target each.
class SpectrumProblem {
 public:
  SpectrumProblem(std::vector<std::int64_t> spectrum, std::vector<Rational> targets);

  const std::vector<std::int64_t>& spectrum() const { return spectrum_; }
  const std::vector<Rational>& targets() const { return targets_; }
  std::size_t size() const { return spectrum_.size(); }

 private:
  std::vector<std::int64_t> spectrum_;
  std::vector<Rational> targets_;
};

struct OracleResult {
  Rational value;
  Rational x_star;  // in [0, 1)
  std::vector<Integer> k_star;
  std::uint64_t candidates_examined = 0;
};

// Exact mu_S(t) = min over x in [0, 1) of max_j <n_j*x - t_j>.
//
// The objective is piecewise linear, so its minimum sits at a vertex: either
// a crossing where two residuals balance with opposite signs,
// x = (t_i + t_j + s)/(n_i + n_j), or a breakpoint of a single residual,
// x = (2t_j + s)/(2n_j). Both families are enumerated (the second is the
// i == j case of the first). Ties go to the smallest x.
OracleResult mu_exact(const SpectrumProblem& p);

// Number of candidates mu_exact examines for a spectrum: the sum over pairs
// i <= j of n_i + n_j, up to one extra per pair from rounding.
std::uint64_t candidate_budget(std::span<const std::int64_t> spectrum);

struct BinaryOptions {
  std::size_t max_size = 12;
  unsigned jobs = 1;
  bool use_toggling = true;
};

struct TargetOptimum {
  Rational value;
  std::vector<Rational> argmax;
};

// max of mu_exact over all targets in {0, 1/2}^d. The argmax is the
// lexicographically smallest maximiser (0 before 1/2). Throws TooLarge when d
// exceeds options.max_size.
TargetOptimum beta_exact(std::span<const std::int64_t> spectrum, const BinaryOptions& options = {});

// Lower bound for alpha(S): max of mu_exact over targets with t_1 = 0 and
// t_j in {0, 1/D, ..., (D-1)/D} for j >= 2. Throws InvalidInput for D < 2 and
// TooLarge when the grid has more than `max_targets` points.
TargetOptimum alpha_grid_lower_bound(std::span<const std::int64_t> spectrum, std::int64_t D,
                                     unsigned jobs = 1, std::uint64_t max_targets = 10'000'000);

}  // namespace kronlab
