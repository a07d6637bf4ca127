#pragma once

// Randomized bisection process: S_{k-1} is split into A_k, B_k by a fair
// coin per element and a strategy keeps one side.

#include <cstdint>
#include <functional>
#include <vector>

#include "montest/hypercube.hpp"
#include "montest/random.hpp"
#include "montest/stats.hpp"

namespace montest {

struct Strategy {
  enum class Kind { min, max, random, scripted };

  Kind kind = Kind::random;
  // Scripted choices, true = keep A_k. Consumed once per run, in order.
  std::vector<bool> script;

  static Strategy min() { return {Kind::min, {}}; }
  static Strategy max() { return {Kind::max, {}}; }
  static Strategy random() { return {Kind::random, {}}; }
  static Strategy scripted(std::vector<bool> choices) { return {Kind::scripted, std::move(choices)}; }
};

std::string_view to_string(Strategy::Kind kind);

struct SizeTrace {
  std::vector<std::uint64_t> sizes;  // |S_0|, |S_1|, ..., |S_steps|
};

// Size-level simulation: |A_k| ~ Binomial(|S_{k-1}|, 1/2) and
// |B_k| = |S_{k-1}| - |A_k|. min and max keep A_k on ties.
SizeTrace run_process(std::uint64_t initial_size, const Strategy& strategy, std::size_t steps, Rng& rng);

// Set-level simulation for adversaries that look at element identities.
// choose(A, B) returns true to keep A.
using SetChooser = std::function<bool(const VarSet& a, const VarSet& b, std::size_t step)>;
std::vector<VarSet> run_process_sets(const VarSet& initial, const SetChooser& choose, std::size_t steps, Rng& rng);

// floor(log2 size) for size >= 1.
std::size_t floor_log2(std::uint64_t size);

// (1/2)|S|/2^k < |S_k| < (3/2)|S|/2^k, evaluated exactly in integers.
bool within_bounds(std::uint64_t initial_size, std::size_t k, std::uint64_t size_k);

struct BoundsReport {
  Estimate fraction;
  bool meets_target;  // fraction >= 1 - delta
};

// Fraction of `trials` runs (run t driven by Rng::derive(seed, t)) whose
// trace stays within bounds for every k <= log2|S_0| - kappa.
BoundsReport verify_bounds(std::uint64_t initial_size, double delta, int kappa, std::uint64_t trials,
                           const Strategy& strategy, std::uint64_t seed);

struct CalibrationResult {
  double delta;
  std::uint64_t initial_size;
  std::uint64_t trials;
  int kappa;
  Estimate min_fraction;
  Estimate max_fraction;
};

// Smallest kappa for which both the min and the max strategy succeed with a
// 99% interval entirely above 1 - delta. kappa = floor(log2|S_0|) always
// qualifies (no constrained step beyond k = 0).
CalibrationResult calibrate_kappa(double delta, std::uint64_t initial_size, std::uint64_t trials, std::uint64_t seed);

}  // namespace montest
