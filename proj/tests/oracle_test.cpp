#include "kronlab/oracle.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "kronlab/errors.hpp"
#include "kronlab/exact_arith.hpp"
#include "kronlab/pair_solver.hpp"
#include "support/generators.hpp"
#include "support/segment_oracle.hpp"

namespace kronlab {
namespace {

using Spectrum = std::vector<std::int64_t>;
using Targets = std::vector<Rational>;

Rational mu(const Spectrum& s, const Targets& t) { return mu_exact(SpectrumProblem(s, t)).value; }

TEST(OracleTest, RejectsMalformedProblems) {
  EXPECT_THROW(SpectrumProblem({}, {}), InvalidInput);
  EXPECT_THROW(SpectrumProblem({2, 1}, {0, 0}), InvalidInput);
  EXPECT_THROW(SpectrumProblem({2, 2}, {0, 0}), InvalidInput);
  EXPECT_THROW(SpectrumProblem({0, 2}, {0, 0}), InvalidInput);
  EXPECT_THROW(SpectrumProblem({1, 2}, {0}), InvalidInput);
}

TEST(OracleTest, Examples) {
  const OracleResult single = mu_exact(SpectrumProblem({7}, {Rational(3, 5)}));
  EXPECT_EQ(single.value, Rational(0));
  EXPECT_EQ(single.x_star, Rational(3, 35));

  EXPECT_EQ(mu({2, 3}, {Rational(1, 2), 0}), Rational(1, 10));
  EXPECT_EQ(mu({1, 2, 100}, {0, Rational(149, 302), Rational(17, 302)}), Rational(51, 302));
  EXPECT_EQ(mu({1, 2, 100}, {0, Rational(1, 2), Rational(1, 2)}), Rational(1, 6));
  EXPECT_EQ(mu({2, 5}, {Rational(1, 3), 0}), Rational(1, 21));
}

TEST(OracleTest, ResultIsSelfConsistent) {
  testing::Gen gen(61);
  for (int i = 0; i < 300; ++i) {
    const auto s = gen.spectrum(static_cast<std::size_t>(gen.integer(1, 4)), 40);
    const auto t = gen.targets(s.size(), 24);
    const OracleResult r = mu_exact(SpectrumProblem(s, t));
    EXPECT_LE(Rational(0), r.x_star);
    EXPECT_LT(r.x_star, Rational(1));
    EXPECT_EQ(r.value, testing::direct_cost(s, t, r.x_star));
    ASSERT_EQ(r.k_star.size(), s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      EXPECT_LE(abs(Rational(s[j]) * r.x_star - t[j] - Rational(r.k_star[j])), r.value);
    }
    EXPECT_LE(r.candidates_examined, candidate_budget(s));
  }
}

TEST(OracleTest, AgreesWithSegmentScan) {
  testing::Gen gen(62);
  for (int i = 0; i < 250; ++i) {
    const auto s = gen.spectrum(static_cast<std::size_t>(gen.integer(1, 4)), 60);
    const auto t = gen.targets(s.size(), 24);
    EXPECT_EQ(mu(s, t), testing::segment_scan_mu(s, t));
  }
}

TEST(OracleTest, BalanceStructureAtOptimum) {
  testing::Gen gen(63);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.spectrum(3, 50);
    const auto t = gen.targets(3, 24);
    const OracleResult r = mu_exact(SpectrumProblem(s, t));
    if (r.value.sign() == 0 || r.value == Rational(1, 2)) continue;
    bool plus = false, minus = false;
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Rational residual = Rational(s[j]) * r.x_star - t[j] - Rational(r.k_star[j]);
      plus = plus || residual == r.value;
      minus = minus || residual == -r.value;
    }
    EXPECT_TRUE(plus && minus);
  }
}

TEST(OracleTest, TranslationAndNegationInvariance) {
  testing::Gen gen(64);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.spectrum(static_cast<std::size_t>(gen.integer(1, 3)), 40);
    const auto t = gen.targets(s.size(), 20);
    const Rational c = gen.signed_rational(30, 3);
    Targets shifted, negated;
    for (std::size_t j = 0; j < s.size(); ++j) {
      shifted.push_back(fractional_part(t[j] + c * Rational(s[j])));
      negated.push_back(-t[j]);
    }
    const Rational v = mu(s, t);
    EXPECT_EQ(v, mu(s, shifted));
    EXPECT_EQ(v, mu(s, negated));
  }
}

TEST(OracleTest, PairAgreement) {
  testing::Gen gen(65);
  for (int i = 0; i < 300; ++i) {
    const auto [a, b] = gen.coprime_pair(30);
    const Targets t = gen.targets(2, 50);
    EXPECT_EQ(mu({a, b}, t), mu_pair(PairProblem(a, b, t[0], t[1])));
  }
}

TEST(OracleTest, BetaExamples) {
  const TargetOptimum pair = beta_exact(Spectrum{1, 2});
  EXPECT_EQ(pair.value, Rational(1, 6));
  EXPECT_EQ(pair.argmax, (Targets{0, Rational(1, 2)}));
  EXPECT_EQ(beta_exact(Spectrum{1, 2, 100}).value, Rational(17, 101));
  EXPECT_EQ(beta_exact(Spectrum{2, 3, 300}).value, Rational(31, 302));
  EXPECT_THROW(beta_exact(Spectrum{1, 2, 3}, {.max_size = 2}), TooLarge);
}

TEST(OracleTest, TogglingDoesNotChangeBeta) {
  testing::Gen gen(66);
  for (int i = 0; i < 60; ++i) {
    const auto s = gen.spectrum(static_cast<std::size_t>(gen.integer(1, 4)), 40);
    BinaryOptions plain;
    plain.use_toggling = false;
    BinaryOptions threaded;
    threaded.jobs = 3;
    const TargetOptimum full = beta_exact(s, plain);
    const TargetOptimum fast = beta_exact(s, threaded);
    EXPECT_EQ(full.value, fast.value);
    EXPECT_EQ(full.value, mu(s, fast.argmax));
  }
}

TEST(OracleTest, GridLowerBound) {
  EXPECT_EQ(alpha_grid_lower_bound(Spectrum{1, 2}, 6).value, Rational(1, 6));
  EXPECT_EQ(alpha_grid_lower_bound(Spectrum{1, 2}, 2).value, Rational(1, 6));
  EXPECT_THROW(alpha_grid_lower_bound(Spectrum{1, 2}, 1), InvalidInput);
  EXPECT_THROW(alpha_grid_lower_bound(Spectrum{1, 2, 3}, 1000, 1, 1000), TooLarge);
  testing::Gen gen(67);
  for (int i = 0; i < 20; ++i) {
    const auto s = gen.spectrum(3, 20);
    const TargetOptimum g = alpha_grid_lower_bound(s, gen.integer(2, 6), 2);
    EXPECT_LE(g.value, Rational(1, 2));
    EXPECT_EQ(g.argmax.front(), Rational(0));
    EXPECT_EQ(g.value, mu(s, g.argmax));
    const std::int64_t D = gen.integer(2, 4);
    EXPECT_LE(alpha_grid_lower_bound(s, D).value, alpha_grid_lower_bound(s, 2 * D).value);
  }
}

TEST(OracleTest, CandidateBudget) {
  EXPECT_EQ(candidate_budget(Spectrum{7}), 15u);
  const OracleResult r = mu_exact(SpectrumProblem({1, 2, 100}, {0, Rational(1, 2), Rational(1, 2)}));
  EXPECT_LE(r.candidates_examined, candidate_budget(Spectrum{1, 2, 100}));
}

}  // namespace
}  // namespace kronlab
