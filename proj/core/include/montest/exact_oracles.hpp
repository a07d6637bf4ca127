#pragma once

// Ground truth on explicit truth tables.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "montest/functions.hpp"

namespace montest {

// Covering pair lower ⪯ upper at Hamming distance 1 with f(lower)=1, f(upper)=0.
struct ViolationEdge {
  Point lower;
  Point upper;

  // The single coordinate in which the endpoints differ.
  Coord variable() const;
};

// Comparable pair lower ⪯ upper with f(lower)=1 > f(upper)=0, not
// necessarily an edge.
struct ViolationPair {
  Point lower;
  Point upper;
};

bool is_violated(const BooleanFunction& f, const ViolationEdge& e);
bool is_violated(const BooleanFunction& f, const ViolationPair& p);

struct MonotoneCheck {
  bool monotone;
  std::optional<ViolationEdge> witness;
};

// Inspects the n*2^(n-1) covering edges.
MonotoneCheck check_monotone(const TruthTable& f);

inline constexpr std::size_t kMaxFlowDimension = 20;

struct Monotonization {
  std::uint64_t distance;
  // The monotone function realising the distance (indicator of an
  // upward-closed set).
  TruthTable closest;
};

// Minimum number of points whose value must change to make f monotone,
// via a minimum s-t cut over the covering-edge order (maximum-weight
// upward-closed set). n <= 20.
std::uint64_t distance_to_monotone(const TruthTable& f);
Monotonization monotonize(const TruthTable& f);

// In-place unnormalised Walsh-Hadamard transform; size must be a power of 2.
void walsh_hadamard(std::span<double> data);

// ±1 Fourier coefficients c(T) of (-1)^f, indexed like the table.
std::vector<double> fourier_coefficients(const TruthTable& f);

// NS_delta(f) = 1/2 - 1/2 * sum_T c(T)^2 (1-2 delta)^|T|.
double noise_sensitivity_exact(const TruthTable& f, double delta);

// For a non-constant LTF with sum_{w_i<0} |w_i| > max_i w_i, a comparable
// pair y ⪯ x with f(y)=1 > f(x)=0, found by walking the sub-cube where all
// negative-weight coordinates are +1 to a point just below the threshold
// and then setting those coordinates to -1. O(n) evaluations of the sum.
// Throws PreconditionError when the weight condition fails and
// ContractViolation when no such point exists (f constant).
ViolationPair negative_weight_witness(const Ltf& f);

// sum of |w_i| over negative weights > max_i w_i.
bool negative_weight_condition(std::span<const double> weights);

}  // namespace montest
