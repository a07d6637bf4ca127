#include "montest/estimators.hpp"

#include "montest/errors.hpp"
#include "montest/generators.hpp"

namespace montest {

Estimate ns_monte_carlo(const BooleanFunction& f, double delta, std::uint64_t trials, Rng& rng) {
  if (trials == 0) throw PreconditionError("ns_monte_carlo needs trials >= 1");
  if (!(delta >= 0.0 && delta <= 1.0)) throw PreconditionError("noise rate must lie in [0, 1]");
  const std::size_t n = f.n();
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Point x = uniform_point(n, rng);
    const VarSet s = sample_bernoulli_subset(n, delta, rng);
    if (f.eval(x) != f.eval(shift(x, s))) ++hits;
  }
  return proportion_estimate(hits, trials);
}

Estimate shift_disagreement_rate(const BooleanFunction& f, const VarSet& s, std::uint64_t trials, Rng& rng) {
  if (trials == 0) throw PreconditionError("shift_disagreement_rate needs trials >= 1");
  if (s.n() != f.n()) throw DimensionMismatch(s.n(), f.n());
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Point x = uniform_point(f.n(), rng);
    if (f.eval(x) != f.eval(shift(x, s))) ++hits;
  }
  return proportion_estimate(hits, trials);
}

double shift_disagreement_exact(const TruthTable& f, const VarSet& s) {
  if (s.n() != f.n()) throw DimensionMismatch(s.n(), f.n());
  const std::uint64_t mask = f.n() == 0 ? 0 : s.words()[0];
  std::uint64_t hits = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (f.at(x) != f.at(x ^ mask)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(f.size());
}

void OutputHistogram::record(const RunRecord& rec) {
  if (rec.n != counts_.size()) throw DimensionMismatch(rec.n, counts_.size());
  ++total_;
  if (rec.terminal_variable) {
    ++counts_.at(*rec.terminal_variable - 1);
  } else {
    ++no_edge_;
  }
}

void OutputHistogram::merge(const OutputHistogram& other) {
  if (other.n() != n()) throw DimensionMismatch(other.n(), n());
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  no_edge_ += other.no_edge_;
  total_ += other.total_;
}

std::vector<double> OutputHistogram::conditional_probabilities() const {
  std::vector<double> p(counts_.size(), 0.0);
  const std::uint64_t edges = edge_total();
  if (edges == 0) return p;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(counts_[i]) / static_cast<double>(edges);
  return p;
}

OutputHistogram output_distribution(const BooleanFunction& f, double epsilon, std::uint64_t trials,
                                    std::uint64_t seed, BisectionOptions options) {
  if (trials == 0) throw PreconditionError("output_distribution needs trials >= 1");
  OutputHistogram hist(f.n());
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededSource src(Rng::derive(seed, t));
    hist.record(bisection_tester(f, epsilon, src, options));
  }
  return hist;
}

CoupledOutcome coupled_shift_run(const FunctionPtr& f, const VarSet& s, double epsilon, std::uint64_t seed,
                                 BisectionOptions options) {
  const ShiftedFunction g(f, s);
  SeededSource base_f(seed);
  SeededSource base_g(seed);
  ShiftedSource shifted(base_g, s);
  CoupledOutcome out{bisection_tester(*f, epsilon, base_f, options), bisection_tester(g, epsilon, shifted, options),
                     false};
  out.equivalent = out.on_f.terminal_variable == out.on_shifted.terminal_variable;
  return out;
}

bool coupled_shift_equivalence(const FunctionPtr& f, const VarSet& s, double epsilon, std::uint64_t seed,
                               BisectionOptions options) {
  return coupled_shift_run(f, s, epsilon, seed, options).equivalent;
}

}  // namespace montest
