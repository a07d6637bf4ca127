#pragma once

// Samplers for B(n, delta), Talagrand DNFs, shifted Talagrand DNFs (Tal±)
// and LTFs with i.i.d. weights from a finite-atom distribution.

#include <cstdint>
#include <memory>
#include <vector>

#include "montest/functions.hpp"
#include "montest/random.hpp"

namespace montest {

inline constexpr std::uint64_t kDefaultClauseCap = 1ULL << 16;

struct WeightAtom {
  double value;
  double probability;
};

class WeightDistribution {
 public:
  // Throws PreconditionError unless probabilities are nonnegative and sum to
  // 1 within 1e-12 and there is at least one atom.
  explicit WeightDistribution(std::vector<WeightAtom> atoms);

  // Uniform on {1, 2}: every weight positive.
  static WeightDistribution default_yes();
  // -1 or +3 with probability 1/2 each.
  static WeightDistribution default_no();
  static WeightDistribution point_mass(double value);

  double sample(Rng& rng) const;
  const std::vector<WeightAtom>& atoms() const { return atoms_; }
  double max_abs() const;
  double min_abs() const;

 private:
  std::vector<WeightAtom> atoms_;
};

VarSet sample_bernoulli_subset(std::size_t n, double delta, Rng& rng);

// Clause width round(sqrt(n)); clause count min(2^width, clause_cap).
std::size_t talagrand_width(std::size_t n);
std::size_t talagrand_clause_count(std::size_t n, std::uint64_t clause_cap);

std::shared_ptr<const TalagrandDnf> sample_talagrand_dnf(std::size_t n, std::uint64_t clause_cap, Rng& rng);

// x -> f(x^S) with f ~ Tal and S ~ B(n, 1/sqrt(n)).
std::shared_ptr<const ShiftedFunction> sample_shifted_talagrand(std::size_t n, std::uint64_t clause_cap, Rng& rng);

std::shared_ptr<const Ltf> sample_ltf(std::size_t n, const WeightDistribution& dist, Rng& rng,
                                      double threshold = 0.0);

// Up-closure of a random point set in which each point is a seed with
// probability `density`. Always monotone.
TruthTable sample_monotone_table(std::size_t n, double density, Rng& rng);

// Uniformly random table.
TruthTable sample_random_table(std::size_t n, Rng& rng);

}  // namespace montest
