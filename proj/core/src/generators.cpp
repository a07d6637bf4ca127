#include "montest/generators.hpp"

#include <algorithm>
#include <cmath>

#include "montest/errors.hpp"

namespace montest {

WeightDistribution::WeightDistribution(std::vector<WeightAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw PreconditionError("weight distribution needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.probability >= 0.0) || !std::isfinite(a.value)) {
      throw PreconditionError("weight atoms need finite values and nonnegative probabilities");
    }
    total += a.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("weight atom probabilities must sum to 1");
}

WeightDistribution WeightDistribution::default_yes() { return WeightDistribution({{1.0, 0.5}, {2.0, 0.5}}); }

WeightDistribution WeightDistribution::default_no() { return WeightDistribution({{-1.0, 0.5}, {3.0, 0.5}}); }

WeightDistribution WeightDistribution::point_mass(double value) { return WeightDistribution({{value, 1.0}}); }

double WeightDistribution::sample(Rng& rng) const {
  if (atoms_.size() == 1) return atoms_.front().value;
  const double u = rng.unit();
  double acc = 0.0;
  for (const auto& a : atoms_) {
    acc += a.probability;
    if (u < acc) return a.value;
  }
  return atoms_.back().value;
}

double WeightDistribution::max_abs() const {
  double m = 0.0;
  for (const auto& a : atoms_) {
    if (a.probability > 0.0) m = std::max(m, std::abs(a.value));
  }
  return m;
}

double WeightDistribution::min_abs() const {
  double m = INFINITY;
  for (const auto& a : atoms_) {
    if (a.probability > 0.0) m = std::min(m, std::abs(a.value));
  }
  return m;
}

VarSet sample_bernoulli_subset(std::size_t n, double delta, Rng& rng) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw PreconditionError("B(n, delta) needs 0 <= delta <= 1");
  VarSet s(n);
  for (std::size_t i = 1; i <= n; ++i) {
    if (rng.bernoulli(delta)) s.set(static_cast<Coord>(i));
  }
  return s;
}

std::size_t talagrand_width(std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n)))));
}

std::size_t talagrand_clause_count(std::size_t n, std::uint64_t clause_cap) {
  const std::size_t w = talagrand_width(n);
  const std::uint64_t full = w >= 63 ? UINT64_MAX : (1ULL << w);
  return static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min(full, clause_cap)));
}

std::shared_ptr<const TalagrandDnf> sample_talagrand_dnf(std::size_t n, std::uint64_t clause_cap, Rng& rng) {
  if (n == 0) throw PreconditionError("sample_talagrand_dnf needs n >= 1");
  const std::size_t w = talagrand_width(n);
  const std::size_t m = talagrand_clause_count(n, clause_cap);
  std::vector<std::vector<Coord>> clauses(m, std::vector<Coord>(w));
  for (auto& c : clauses) {
    for (auto& v : c) v = static_cast<Coord>(rng.below(n) + 1);
  }
  return std::make_shared<TalagrandDnf>(n, std::move(clauses));
}

std::shared_ptr<const ShiftedFunction> sample_shifted_talagrand(std::size_t n, std::uint64_t clause_cap, Rng& rng) {
  auto inner = sample_talagrand_dnf(n, clause_cap, rng);
  VarSet s = sample_bernoulli_subset(n, 1.0 / std::sqrt(static_cast<double>(n)), rng);
  return std::make_shared<ShiftedFunction>(std::move(inner), std::move(s));
}

std::shared_ptr<const Ltf> sample_ltf(std::size_t n, const WeightDistribution& dist, Rng& rng, double threshold) {
  if (n == 0) throw PreconditionError("sample_ltf needs n >= 1");
  std::vector<double> w(n);
  for (auto& wi : w) wi = dist.sample(rng);
  return std::make_shared<Ltf>(std::move(w), threshold);
}

TruthTable sample_monotone_table(std::size_t n, double density, Rng& rng) {
  if (n > kMaxTableDimension) throw TableTooLarge("sample_monotone_table: n too large");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> v(size);
  for (auto& b : v) b = rng.bernoulli(density) ? 1 : 0;
  // Up-closure: f(x) |= f(x without i) for every i, swept in index order.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t x = 0; x < size; ++x) {
      if (x & bit) v[x] |= v[x ^ bit];
    }
  }
  return TruthTable(n, std::move(v));
}

TruthTable sample_random_table(std::size_t n, Rng& rng) {
  if (n > kMaxTableDimension) throw TableTooLarge("sample_random_table: n too large");
  return TruthTable::from_index_fn(n, [&](std::uint64_t) { return rng.coin(); });
}

}  // namespace montest
