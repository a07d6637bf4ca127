#pragma once

#include <cstdint>
#include <span>

namespace montest {

// z for a two-sided 99% normal interval.
inline constexpr double kZ99 = 2.5758293035489004;

struct Estimate {
  double value = 0.0;
  double half_width = 0.0;  // 99% normal-approximation half-width
  std::uint64_t trials = 0;

  double lower() const { return value - half_width; }
  double upper() const { return value + half_width; }
};

// Frequency estimate from `successes` out of `trials` (trials >= 1).
Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials);

// Chi-square goodness-of-fit p-value of observed counts against the given
// expected probabilities (renormalised). Cells with zero expectation must
// have zero counts.
double chi_square_gof_pvalue(std::span<const std::uint64_t> counts, std::span<const double> probabilities);
double chi_square_uniform_pvalue(std::span<const std::uint64_t> counts);

// Two-sample chi-square test of homogeneity; cells empty in both samples
// are dropped.
double chi_square_homogeneity_pvalue(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// Ordinary least squares slope/intercept of y on x.
struct LineFit {
  double intercept;
  double slope;
};
LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace montest
