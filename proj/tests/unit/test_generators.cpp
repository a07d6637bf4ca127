#include <algorithm>
#include <bit>
#include <cmath>

#include <gtest/gtest.h>

#include "montest/errors.hpp"
#include "montest/exact_oracles.hpp"
#include "montest/generators.hpp"
#include "montest/stats.hpp"

namespace montest {
namespace {

TEST(Bernoulli, Extremes) {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    EXPECT_TRUE(sample_bernoulli_subset(40, 0.0, rng).empty());
    EXPECT_EQ(sample_bernoulli_subset(70, 1.0, rng).size(), 70u);
  }
  EXPECT_THROW(sample_bernoulli_subset(4, 1.5, rng), PreconditionError);
  EXPECT_THROW(sample_bernoulli_subset(4, -0.1, rng), PreconditionError);
}

TEST(Bernoulli, MeanSize) {
  Rng rng(32);
  const std::size_t n = 10000;
  const int draws = 1000;
  double total = 0;
  for (int i = 0; i < draws; ++i) total += static_cast<double>(sample_bernoulli_subset(n, 0.1, rng).size());
  // Standard error of the mean of Binomial(n, 0.1) sizes.
  const double se = std::sqrt(n * 0.1 * 0.9 / draws);
  EXPECT_NEAR(total / draws, 1000.0, 3 * se);
}

TEST(Talagrand, WidthAndCount) {
  EXPECT_EQ(talagrand_width(16), 4u);
  EXPECT_EQ(talagrand_clause_count(16, kDefaultClauseCap), 16u);
  EXPECT_EQ(talagrand_width(64), 8u);
  EXPECT_EQ(talagrand_clause_count(64, kDefaultClauseCap), 256u);
  EXPECT_EQ(talagrand_width(20), 4u);  // round(4.47)
  EXPECT_EQ(talagrand_width(21), 5u);  // round(4.58)
  EXPECT_EQ(talagrand_clause_count(1024, kDefaultClauseCap), kDefaultClauseCap);
  EXPECT_EQ(talagrand_clause_count(64, 10), 10u);
  Rng rng(33);
  const auto f = sample_talagrand_dnf(16, kDefaultClauseCap, rng);
  EXPECT_EQ(f->width(), 4u);
  EXPECT_EQ(f->clause_count(), 16u);
}

TEST(Talagrand, EntryMarginalIsUniform) {
  Rng rng(34);
  std::vector<std::uint64_t> counts(16, 0);
  std::uint64_t entries = 0;
  while (entries < 100000) {
    const auto f = sample_talagrand_dnf(16, kDefaultClauseCap, rng);
    for (const auto& c : f->clauses()) {
      for (Coord v : c) {
        ++counts[v - 1];
        ++entries;
      }
    }
  }
  EXPECT_GT(chi_square_uniform_pvalue(counts), 0.001);
}

TEST(TalPm, ShiftSizeAndMonotoneWhenEmpty) {
  Rng rng(35);
  const std::size_t n = 16;
  double total = 0;
  const int draws = 4000;
  int empty = 0;
  for (int i = 0; i < draws; ++i) {
    const auto g = sample_shifted_talagrand(n, kDefaultClauseCap, rng);
    total += static_cast<double>(g->shift_set().size());
    if (g->shift_set().empty()) {
      ++empty;
      EXPECT_TRUE(check_monotone(TruthTable::tabulate(*g)).monotone);
    }
  }
  // S ~ B(16, 1/4): mean 4, variance 3.
  EXPECT_NEAR(total / draws, 4.0, 3 * std::sqrt(3.0 / draws));
  EXPECT_GT(empty, 0);
}

TEST(TalPm, HitsClauseVariablesAtComputedRate) {
  // For each drawn f, Pr[S ∩ vars(f) ≠ ∅] = 1 - (1 - 1/sqrt n)^|vars(f)|.
  // Sum the indicator minus that probability over many samples.
  const std::size_t n = 16;
  Rng rng(36);
  const int draws = 20000;
  double excess = 0;
  double variance = 0;
  for (int i = 0; i < draws; ++i) {
    const auto g = sample_shifted_talagrand(n, kDefaultClauseCap, rng);
    const auto* inner = dynamic_cast<const TalagrandDnf*>(g->inner().get());
    ASSERT_NE(inner, nullptr);
    const VarSet vars = inner->variables();
    const double p = 1.0 - std::pow(0.75, static_cast<double>(vars.size()));
    const bool hit = (g->shift_set().words()[0] & vars.words()[0]) != 0;
    excess += (hit ? 1.0 : 0.0) - p;
    variance += p * (1 - p);
  }
  EXPECT_LE(std::abs(excess), 3 * std::sqrt(variance));
}

TEST(Ltf, DefaultDistributionsAndValidation) {
  EXPECT_THROW(WeightDistribution({}), PreconditionError);
  EXPECT_THROW(WeightDistribution({{1.0, 0.5}, {2.0, 0.4}}), PreconditionError);
  EXPECT_THROW(WeightDistribution({{1.0, -0.5}, {2.0, 1.5}}), PreconditionError);
  EXPECT_NO_THROW(WeightDistribution({{1.0, 0.5}, {2.0, 0.5 + 1e-13}}));
  const auto yes = WeightDistribution::default_yes();
  EXPECT_DOUBLE_EQ(yes.max_abs(), 2.0);
  EXPECT_DOUBLE_EQ(yes.min_abs(), 1.0);
  const auto no = WeightDistribution::default_no();
  EXPECT_DOUBLE_EQ(no.max_abs(), 3.0);
  Rng rng(38);
  int neg = 0;
  for (int i = 0; i < 4000; ++i) {
    const double v = no.sample(rng);
    ASSERT_TRUE(v == -1.0 || v == 3.0);
    neg += v < 0 ? 1 : 0;
  }
  EXPECT_NEAR(neg / 4000.0, 0.5, 3 * std::sqrt(0.25 / 4000));
}

TEST(Ltf, PointMassIsMajority) {
  Rng rng(39);
  const auto f = sample_ltf(5, WeightDistribution::point_mass(1.0), rng);
  const TruthTable t = TruthTable::tabulate(*f);
  EXPECT_TRUE(check_monotone(t).monotone);
  for (std::uint64_t x = 0; x < 32; ++x) EXPECT_EQ(t.at(x), std::popcount(x) >= 3);
}

TEST(Ltf, YesSamplesMonotoneAndRegular) {
  Rng rng(40);
  const auto yes = WeightDistribution::default_yes();
  for (std::size_t n : {4u, 9u, 16u}) {
    for (int rep = 0; rep < (n == 16 ? 3 : 20); ++rep) {
      const auto f = sample_ltf(n, yes, rng);
      EXPECT_DOUBLE_EQ(f->threshold(), 0.0);
      EXPECT_TRUE(check_monotone(TruthTable::tabulate(*f)).monotone);
      const double bound = yes.max_abs() / (yes.min_abs() * std::sqrt(double(n)));
      EXPECT_LE(regularity_parameter(f->weights()), bound + 1e-12);
    }
  }
  const auto no = WeightDistribution::default_no();
  for (int rep = 0; rep < 50; ++rep) {
    const auto f = sample_ltf(64, no, rng);
    EXPECT_LE(regularity_parameter(f->weights()), no.max_abs() / (no.min_abs() * 8.0) + 1e-12);
  }
}

TEST(Ltf, NoEnsembleMedianDistanceAtLeastOnePercent) {
  Rng rng(41);
  const auto no = WeightDistribution::default_no();
  std::vector<double> fractions;
  for (int rep = 0; rep < 21; ++rep) {
    const auto f = sample_ltf(16, no, rng);
    const TruthTable t = TruthTable::tabulate(*f);
    fractions.push_back(static_cast<double>(distance_to_monotone(t)) / static_cast<double>(t.size()));
  }
  std::nth_element(fractions.begin(), fractions.begin() + 10, fractions.end());
  EXPECT_GE(fractions[10], 0.01);
}

TEST(Samplers, DeterministicForEqualSeeds) {
  for (std::uint64_t seed : {1ULL, 99ULL, 123456789ULL}) {
    Rng a(seed), b(seed);
    EXPECT_EQ(serialize(*sample_talagrand_dnf(25, 100, a)), serialize(*sample_talagrand_dnf(25, 100, b)));
    EXPECT_EQ(serialize(*sample_shifted_talagrand(25, 100, a)), serialize(*sample_shifted_talagrand(25, 100, b)));
    EXPECT_EQ(serialize(*sample_ltf(30, WeightDistribution::default_no(), a)),
              serialize(*sample_ltf(30, WeightDistribution::default_no(), b)));
    EXPECT_EQ(sample_monotone_table(8, 0.1, a), sample_monotone_table(8, 0.1, b));
    EXPECT_EQ(sample_random_table(8, a), sample_random_table(8, b));
    EXPECT_EQ(sample_bernoulli_subset(200, 0.3, a), sample_bernoulli_subset(200, 0.3, b));
  }
}

TEST(Samplers, MonotoneTablesAreMonotone) {
  Rng rng(42);
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_TRUE(check_monotone(sample_monotone_table(n, 0.05, rng)).monotone);
  }
}

}  // namespace
}  // namespace montest
