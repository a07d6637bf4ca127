#include "montest/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <vector>

#include "montest/errors.hpp"

namespace montest {

namespace {

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw PreconditionError("an estimate needs at least one trial");
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, kZ99 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

double chi_square_gof_pvalue(std::span<const std::uint64_t> counts, std::span<const double> probabilities) {
  if (counts.size() != probabilities.size()) throw PreconditionError("chi-square: size mismatch");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  const double mass = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (total == 0 || mass <= 0) return 1.0;
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = total * probabilities[i] / mass;
    if (expected == 0.0) {
      if (counts[i] != 0) return 0.0;
      continue;
    }
    const double diff = static_cast<double>(counts[i]) - expected;
    stat += diff * diff / expected;
    ++cells;
  }
  return chi_square_sf(stat, static_cast<double>(cells) - 1.0);
}

double chi_square_uniform_pvalue(std::span<const std::uint64_t> counts) {
  std::vector<double> p(counts.size(), 1.0);
  return chi_square_gof_pvalue(counts, p);
}

double chi_square_homogeneity_pvalue(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw PreconditionError("chi-square: size mismatch");
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  if (na == 0 || nb == 0) return 1.0;
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double col = static_cast<double>(a[i] + b[i]);
    if (col == 0) continue;
    const double ea = col * na / (na + nb);
    const double eb = col * nb / (na + nb);
    stat += (static_cast<double>(a[i]) - ea) * (static_cast<double>(a[i]) - ea) / ea;
    stat += (static_cast<double>(b[i]) - eb) * (static_cast<double>(b[i]) - eb) / eb;
    ++cells;
  }
  return chi_square_sf(stat, static_cast<double>(cells) - 1.0);
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("least_squares needs two or more points");
  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw PreconditionError("least_squares: x values are all equal");
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

}  // namespace montest
