#pragma once

// Monte-Carlo estimators and the bisection output distribution.

#include <cstdint>
#include <vector>

#include "montest/functions.hpp"
#include "montest/random.hpp"
#include "montest/stats.hpp"
#include "montest/testers.hpp"

namespace montest {

// Fraction of (x, S ~ B(n, delta)) pairs with f(x) != f(x^S).
Estimate ns_monte_carlo(const BooleanFunction& f, double delta, std::uint64_t trials, Rng& rng);

// Pr_x[f(x) != f(x^S)] for a fixed S. For monotone f, half of this is a lower
// bound on the distance fraction of x -> f(x^S) to monotone.
Estimate shift_disagreement_rate(const BooleanFunction& f, const VarSet& s, std::uint64_t trials, Rng& rng);

// Exact Pr_x[f(x) != f(x^S)] by enumeration; n <= 24.
double shift_disagreement_exact(const TruthTable& f, const VarSet& s);

class OutputHistogram {
 public:
  explicit OutputHistogram(std::size_t n) : counts_(n, 0) {}

  void record(const RunRecord& rec);
  void merge(const OutputHistogram& other);

  std::size_t n() const { return counts_.size(); }
  // Runs that ended on an edge in variable i (1-indexed).
  std::uint64_t count(Coord i) const { return counts_.at(i - 1); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t no_edge() const { return no_edge_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t edge_total() const { return total_ - no_edge_; }

  // p_i conditioned on the run ending on an edge; the unconditional p_i
  // are count(i) / total(). All zero when no run reached an edge.
  std::vector<double> conditional_probabilities() const;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t no_edge_ = 0;
  std::uint64_t total_ = 0;
};

// `trials` independent bisection-tester runs, trial t driven by
// Rng::derive(seed, t).
OutputHistogram output_distribution(const BooleanFunction& f, double epsilon, std::uint64_t trials,
                                    std::uint64_t seed, BisectionOptions options = {});

struct CoupledOutcome {
  RunRecord on_f;
  RunRecord on_shifted;
  bool equivalent;
};

// Runs the bisection tester on f with stream R and on g(x) = f(x^S) with the
// S-shifted transcript of R; equivalent iff both end in the same variable or
// both end without an edge.
CoupledOutcome coupled_shift_run(const FunctionPtr& f, const VarSet& s, double epsilon, std::uint64_t seed,
                                 BisectionOptions options = {});
bool coupled_shift_equivalence(const FunctionPtr& f, const VarSet& s, double epsilon, std::uint64_t seed,
                               BisectionOptions options = {});

}  // namespace montest
