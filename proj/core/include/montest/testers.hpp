#pragma once

// Edge tester, bisection tester and modified bisection tester with run
// instrumentation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "montest/exact_oracles.hpp"
#include "montest/functions.hpp"
#include "montest/random.hpp"

namespace montest {

enum class Decision { accept, reject };

// Where a run ended.
enum class Phase {
  no_pair,         // no differently-valued pair found within the budget
  balance_accept,  // differing set above the (3/2) n / 2^k gate
  cap_accept,      // final sub-cube larger than hybrid_cap
  edge_check,      // an edge (or sub-cube) was examined
  not_applicable,  // k < 0 for this n
};

std::string_view to_string(Decision d);
std::string_view to_string(Phase p);
Phase phase_from_string(std::string_view s);

struct Verdict {
  Decision decision = Decision::accept;
  std::optional<ViolationEdge> witness;  // present iff reject, re-verified

  bool rejected() const { return decision == Decision::reject; }
};

struct RunRecord {
  Verdict verdict;
  std::size_t n = 0;
  std::uint64_t queries = 0;
  // Hamming-weight range of queried points; both 0 when nothing was queried.
  std::size_t min_weight = 0;
  std::size_t max_weight = 0;
  std::optional<Coord> terminal_variable;
  Phase phase = Phase::no_pair;
  std::size_t iterations = 0;       // hybrid halvings performed
  std::size_t final_distance = 0;   // |x △ y| when the loop ended
  std::size_t final_common_ones = 0;  // |x ∩ y| when the loop ended
  bool exclude_endpoints = true;
};

inline constexpr std::uint64_t kDefaultHybridCap = 1ULL << 16;

// ceil(8 / eps): pair budget shared by both bisection testers.
std::uint64_t pair_budget(double epsilon);

// Samples ceil(2n/eps) uniform covering edges; rejects on the first violated
// one.
RunRecord edge_tester(const BooleanFunction& f, double epsilon, RandomSource& rnd);

struct BisectionOptions {
  bool exclude_endpoints = true;
};

// Draw x, y until f(x)=0 and f(y)=1 (at most ceil(8/eps) pairs), then halve
// the differing set through uniform hybrid points until x, y form an edge;
// accept iff x ⪯ y.
RunRecord bisection_tester(const BooleanFunction& f, double epsilon, RandomSource& rnd,
                           BisectionOptions options = {});

struct Alg2Params {
  double epsilon = 0.1;
  double tau = 1.0;
  double kappa = 0.0;
  double c = 0.0;
  double zeta = 0.0;
  // Set in scaled mode; otherwise k is computed per n from c, zeta, tau, kappa.
  std::optional<int> fixed_k;
  std::uint64_t hybrid_cap = kDefaultHybridCap;
  bool exclude_endpoints = true;

  // c = eps^2 / (512 tau^2 ln(8/eps)), zeta = eps / sqrt(512 ln(8/eps)).
  static Alg2Params from_formula(double epsilon, double tau, double kappa,
                                 std::uint64_t hybrid_cap = kDefaultHybridCap);
  // Constants supplied directly; k fixed.
  static Alg2Params scaled(double epsilon, int k, std::uint64_t hybrid_cap = kDefaultHybridCap);

  // floor(log2(c n) - max(log2(8 tau / zeta), kappa)), or fixed_k. May be
  // negative.
  int iterations_for(std::size_t n) const;
  // ceil(8/eps) + 1 + k + hybrid_cap.
  std::uint64_t query_budget(std::size_t n) const;
};

RunRecord modified_bisection_tester(const BooleanFunction& f, const Alg2Params& params, RandomSource& rnd);

using Tester = std::function<RunRecord(const BooleanFunction&, RandomSource&)>;

struct AmplifiedVerdict {
  Verdict verdict;
  std::uint64_t queries = 0;
  std::size_t repetitions_run = 0;
};

// Reject iff any of `repetitions` independent runs rejects. Stops at the
// first rejection; queries sum over the runs performed.
AmplifiedVerdict amplify(const Tester& tester, std::size_t repetitions, const BooleanFunction& f, RandomSource& rnd);

// True iff every queried point satisfied |weight - n/2| <= band * sqrt(n).
bool balance_audit(const RunRecord& record, double band);
bool balance_audit(std::size_t n, std::size_t min_weight, std::size_t max_weight, double band);

}  // namespace montest
