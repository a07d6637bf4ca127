#include "montest/process_sim.hpp"

#include <bit>
#include <cmath>

#include "montest/errors.hpp"
#include "montest/parallel.hpp"

namespace montest {

namespace {

__extension__ typedef unsigned __int128 Wide;

// Binomial(m, 1/2) as the popcount of m fair bits.
std::uint64_t fair_binomial(std::uint64_t m, Rng& rng) {
  std::uint64_t count = 0;
  while (m >= 64) {
    count += static_cast<std::uint64_t>(std::popcount(rng.next()));
    m -= 64;
  }
  if (m > 0) count += static_cast<std::uint64_t>(std::popcount(rng.next() & ((1ULL << m) - 1)));
  return count;
}

bool keep_a(const Strategy& strategy, std::uint64_t a, std::uint64_t b, std::size_t step, Rng& rng) {
  switch (strategy.kind) {
    case Strategy::Kind::min:
      return a <= b;
    case Strategy::Kind::max:
      return a >= b;
    case Strategy::Kind::random:
      return rng.coin();
    case Strategy::Kind::scripted:
      return strategy.script[step];
  }
  return true;
}

// First step k in [1, last] at which the bounds fail, or last + 1.
std::size_t first_failure(std::uint64_t initial_size, const Strategy& strategy, std::size_t last, Rng& rng) {
  std::uint64_t size = initial_size;
  for (std::size_t k = 1; k <= last; ++k) {
    const std::uint64_t a = fair_binomial(size, rng);
    const std::uint64_t b = size - a;
    size = keep_a(strategy, a, b, k - 1, rng) ? a : b;
    if (!within_bounds(initial_size, k, size)) return k;
  }
  return last + 1;
}

}  // namespace

std::string_view to_string(Strategy::Kind kind) {
  switch (kind) {
    case Strategy::Kind::min:
      return "min";
    case Strategy::Kind::max:
      return "max";
    case Strategy::Kind::random:
      return "random";
    case Strategy::Kind::scripted:
      return "scripted";
  }
  return "unknown";
}

SizeTrace run_process(std::uint64_t initial_size, const Strategy& strategy, std::size_t steps, Rng& rng) {
  if (strategy.kind == Strategy::Kind::scripted && strategy.script.size() < steps) {
    throw PreconditionError("scripted strategy has fewer choices than steps");
  }
  SizeTrace trace;
  trace.sizes.reserve(steps + 1);
  trace.sizes.push_back(initial_size);
  std::uint64_t size = initial_size;
  for (std::size_t k = 0; k < steps; ++k) {
    const std::uint64_t a = fair_binomial(size, rng);
    const std::uint64_t b = size - a;
    size = keep_a(strategy, a, b, k, rng) ? a : b;
    trace.sizes.push_back(size);
  }
  return trace;
}

std::vector<VarSet> run_process_sets(const VarSet& initial, const SetChooser& choose, std::size_t steps, Rng& rng) {
  std::vector<VarSet> out{initial};
  VarSet current = initial;
  for (std::size_t k = 0; k < steps; ++k) {
    VarSet a(initial.n());
    VarSet b(initial.n());
    for (Coord i : current.members()) {
      if (rng.coin()) {
        a.set(i);
      } else {
        b.set(i);
      }
    }
    current = choose(a, b, k) ? std::move(a) : std::move(b);
    out.push_back(current);
  }
  return out;
}

std::size_t floor_log2(std::uint64_t size) {
  if (size == 0) throw PreconditionError("floor_log2 of zero");
  return static_cast<std::size_t>(std::bit_width(size) - 1);
}

bool within_bounds(std::uint64_t initial_size, std::size_t k, std::uint64_t size_k) {
  // |S|/2^(k+1) < |S_k| < 3|S|/2^(k+1), cross-multiplied.
  const Wide scaled = static_cast<Wide>(size_k) << (k + 1);
  return scaled > initial_size && scaled < 3 * static_cast<Wide>(initial_size);
}

BoundsReport verify_bounds(std::uint64_t initial_size, double delta, int kappa, std::uint64_t trials,
                           const Strategy& strategy, std::uint64_t seed) {
  if (kappa < 0) throw PreconditionError("kappa must be nonnegative");
  if (trials == 0) throw PreconditionError("verify_bounds needs trials >= 1");
  if (strategy.kind == Strategy::Kind::scripted) throw PreconditionError("verify_bounds needs a non-scripted strategy");
  const auto top = static_cast<long>(floor_log2(initial_size)) - kappa;
  const std::size_t last = top > 0 ? static_cast<std::size_t>(top) : 0;
  std::vector<std::uint8_t> ok(trials);
  parallel_for(trials, default_workers(), [&](std::uint64_t t) {
    Rng rng = Rng::derive(seed, t);
    ok[t] = first_failure(initial_size, strategy, last, rng) > last ? 1 : 0;
  });
  std::uint64_t successes = 0;
  for (auto v : ok) successes += v;
  const Estimate e = proportion_estimate(successes, trials);
  return {e, e.value >= 1.0 - delta};
}

CalibrationResult calibrate_kappa(double delta, std::uint64_t initial_size, std::uint64_t trials, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("calibrate_kappa needs 0 < delta < 1");
  if (trials == 0) throw PreconditionError("calibrate_kappa needs trials >= 1");
  const std::size_t top = floor_log2(initial_size);
  // One simulation per run; the first failing step decides every kappa.
  std::vector<std::uint32_t> fail_min(trials);
  std::vector<std::uint32_t> fail_max(trials);
  parallel_for(trials, default_workers(), [&](std::uint64_t t) {
    Rng rmin = Rng::derive(Rng::derive_seed(seed, 0), t);
    Rng rmax = Rng::derive(Rng::derive_seed(seed, 1), t);
    fail_min[t] = static_cast<std::uint32_t>(first_failure(initial_size, Strategy::min(), top, rmin));
    fail_max[t] = static_cast<std::uint32_t>(first_failure(initial_size, Strategy::max(), top, rmax));
  });
  auto fraction = [&](const std::vector<std::uint32_t>& fails, int kappa) {
    const std::size_t last = top - static_cast<std::size_t>(kappa);
    std::uint64_t ok = 0;
    for (auto f : fails) ok += f > last ? 1 : 0;
    return proportion_estimate(ok, trials);
  };
  const double target = 1.0 - delta;
  for (int kappa = 0; kappa <= static_cast<int>(top); ++kappa) {
    const Estimate lo = fraction(fail_min, kappa);
    const Estimate hi = fraction(fail_max, kappa);
    if (lo.lower() > target && hi.lower() > target) {
      return {delta, initial_size, trials, kappa, lo, hi};
    }
  }
  // Unreachable: kappa = top constrains nothing and both fractions are 1.
  throw ContractViolation("calibrate_kappa: no kappa qualified");
}

}  // namespace montest
