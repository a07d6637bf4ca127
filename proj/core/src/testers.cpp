#include "montest/testers.hpp"

#include <algorithm>
#include <cmath>

#include "montest/errors.hpp"

namespace montest {

namespace {

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw PreconditionError("epsilon must be positive");
}

void finish(RunRecord& rec, const QueryOracle& q) {
  rec.queries = q.queries();
  if (q.queries() > 0) {
    rec.min_weight = q.min_weight();
    rec.max_weight = q.max_weight();
  }
}

// Reject with a violated edge, re-verified on the uncounted function.
void reject_with(RunRecord& rec, const BooleanFunction& f, ViolationEdge edge) {
  if (!is_violated(f, edge)) throw ContractViolation("tester produced a witness edge that is not violated");
  rec.terminal_variable = edge.variable();
  rec.verdict = {Decision::reject, std::move(edge)};
}

}  // namespace

std::string_view to_string(Decision d) { return d == Decision::accept ? "accept" : "reject"; }

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::no_pair:
      return "no-pair";
    case Phase::balance_accept:
      return "balance-accept";
    case Phase::cap_accept:
      return "cap-accept";
    case Phase::edge_check:
      return "edge-check";
    case Phase::not_applicable:
      return "not-applicable";
  }
  return "unknown";
}

Phase phase_from_string(std::string_view s) {
  for (Phase p : {Phase::no_pair, Phase::balance_accept, Phase::cap_accept, Phase::edge_check,
                  Phase::not_applicable}) {
    if (to_string(p) == s) return p;
  }
  throw ParseError("unknown phase '" + std::string(s) + "'");
}

std::uint64_t pair_budget(double epsilon) {
  require_positive_epsilon(epsilon);
  return static_cast<std::uint64_t>(std::ceil(8.0 / epsilon));
}

RunRecord edge_tester(const BooleanFunction& f, double epsilon, RandomSource& rnd) {
  require_positive_epsilon(epsilon);
  const std::size_t n = f.n();
  const auto probes = static_cast<std::uint64_t>(std::ceil(2.0 * static_cast<double>(n) / epsilon));
  QueryOracle q(f);
  RunRecord rec;
  rec.n = n;
  rec.phase = Phase::edge_check;
  rec.exclude_endpoints = false;
  for (std::uint64_t t = 0; t < probes; ++t) {
    Point lower = rnd.uniform_point(n);
    const Coord i = rnd.uniform_coordinate(n);
    lower.set(i, false);
    Point upper = lower;
    upper.set(i, true);
    if (q(lower) && !q(upper)) {
      reject_with(rec, f, ViolationEdge{std::move(lower), std::move(upper)});
      break;
    }
  }
  finish(rec, q);
  return rec;
}

RunRecord bisection_tester(const BooleanFunction& f, double epsilon, RandomSource& rnd, BisectionOptions options) {
  const std::uint64_t budget = pair_budget(epsilon);
  const std::size_t n = f.n();
  QueryOracle q(f);
  RunRecord rec;
  rec.n = n;
  rec.exclude_endpoints = options.exclude_endpoints;

  Point x;
  Point y;
  bool found = false;
  for (std::uint64_t t = 0; t < budget && !found; ++t) {
    x = rnd.uniform_point(n);
    y = rnd.uniform_point(n);
    found = !q(x) && q(y);
  }
  if (!found) {
    rec.phase = Phase::no_pair;
    finish(rec, q);
    return rec;
  }

  std::size_t d = hamming_distance(x, y);
  while (d >= 2) {
    Point z = rnd.hybrid_point(x, y, options.exclude_endpoints);
    if (q(z)) {
      y = std::move(z);
    } else {
      x = std::move(z);
    }
    ++rec.iterations;
    d = hamming_distance(x, y);
  }
  rec.phase = Phase::edge_check;
  rec.final_distance = d;
  rec.final_common_ones = common_ones(x, y);
  // f(x)=0, f(y)=1 across a single edge.
  if (precedes(x, y)) {
    rec.terminal_variable = differing(x, y).members().front();
  } else {
    reject_with(rec, f, ViolationEdge{std::move(y), std::move(x)});
  }
  finish(rec, q);
  return rec;
}

Alg2Params Alg2Params::from_formula(double epsilon, double tau, double kappa, std::uint64_t hybrid_cap) {
  require_positive_epsilon(epsilon);
  if (!(tau > 0.0)) throw PreconditionError("tau must be positive");
  Alg2Params p;
  p.epsilon = epsilon;
  p.tau = tau;
  p.kappa = kappa;
  const double log_term = std::log(8.0 / epsilon);
  p.c = epsilon * epsilon / (512.0 * tau * tau * log_term);
  p.zeta = epsilon / std::sqrt(512.0 * log_term);
  p.hybrid_cap = hybrid_cap;
  return p;
}

Alg2Params Alg2Params::scaled(double epsilon, int k, std::uint64_t hybrid_cap) {
  require_positive_epsilon(epsilon);
  Alg2Params p;
  p.epsilon = epsilon;
  p.fixed_k = k;
  p.hybrid_cap = hybrid_cap;
  return p;
}

int Alg2Params::iterations_for(std::size_t n) const {
  if (fixed_k) return *fixed_k;
  if (!(c > 0.0) || !(zeta > 0.0)) throw PreconditionError("Alg2Params: c and zeta must be positive");
  const double cn = c * static_cast<double>(n);
  const double margin = std::max(std::log2(8.0 * tau / zeta), kappa);
  return static_cast<int>(std::floor(std::log2(cn) - margin));
}

std::uint64_t Alg2Params::query_budget(std::size_t n) const {
  const int k = std::max(0, iterations_for(n));
  return pair_budget(epsilon) + 1 + static_cast<std::uint64_t>(k) + hybrid_cap;
}

RunRecord modified_bisection_tester(const BooleanFunction& f, const Alg2Params& params, RandomSource& rnd) {
  const std::size_t n = f.n();
  const std::uint64_t budget = pair_budget(params.epsilon);
  RunRecord rec;
  rec.n = n;
  rec.exclude_endpoints = params.exclude_endpoints;
  const int k = params.iterations_for(n);
  if (k < 0) {
    rec.phase = Phase::not_applicable;
    return rec;
  }

  QueryOracle q(f);
  Point x = rnd.uniform_point(n);
  const bool fx = q(x);
  Point y;
  bool found = false;
  for (std::uint64_t t = 0; t < budget && !found; ++t) {
    y = rnd.uniform_point(n);
    found = q(y) != fx;
  }
  if (!found) {
    rec.phase = Phase::no_pair;
    finish(rec, q);
    return rec;
  }
  if (fx) std::swap(x, y);  // now f(x)=0, f(y)=1

  std::size_t d = hamming_distance(x, y);
  for (int step = 0; step < k && d >= 2; ++step) {
    Point z = rnd.hybrid_point(x, y, params.exclude_endpoints);
    if (q(z)) {
      y = std::move(z);
    } else {
      x = std::move(z);
    }
    ++rec.iterations;
    d = hamming_distance(x, y);
  }
  rec.final_distance = d;
  rec.final_common_ones = common_ones(x, y);

  const double gate = 1.5 * static_cast<double>(n) / std::ldexp(1.0, k);
  if (static_cast<double>(d) > gate) {
    rec.phase = Phase::balance_accept;
    finish(rec, q);
    return rec;
  }
  if (d >= 63 || (1ULL << d) > params.hybrid_cap) {
    rec.phase = Phase::cap_accept;
    finish(rec, q);
    return rec;
  }

  rec.phase = Phase::edge_check;
  const std::vector<Coord> free = differing(x, y).members();
  const std::vector<Point> cube = hybrid_enumerate(x, y, params.hybrid_cap);
  std::vector<std::uint8_t> value(cube.size());
  for (std::size_t j = 0; j < cube.size(); ++j) value[j] = q(cube[j]) ? 1 : 0;

  // cube[j] flips free[b] relative to x for every set bit b of j.
  for (std::size_t j = 0; j < cube.size(); ++j) {
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t nb = j ^ (std::size_t{1} << b);
      if (nb < j) continue;
      const bool j_is_lower = !cube[j].test(free[b]);
      const std::size_t lo = j_is_lower ? j : nb;
      const std::size_t hi = j_is_lower ? nb : j;
      if (value[lo] && !value[hi]) {
        reject_with(rec, f, ViolationEdge{cube[lo], cube[hi]});
        finish(rec, q);
        return rec;
      }
    }
  }
  if (d == 1) rec.terminal_variable = free.front();
  finish(rec, q);
  return rec;
}

AmplifiedVerdict amplify(const Tester& tester, std::size_t repetitions, const BooleanFunction& f, RandomSource& rnd) {
  if (repetitions == 0) throw PreconditionError("amplify needs at least one repetition");
  AmplifiedVerdict out;
  for (std::size_t r = 0; r < repetitions; ++r) {
    RunRecord rec = tester(f, rnd);
    out.queries += rec.queries;
    ++out.repetitions_run;
    if (rec.verdict.rejected()) {
      out.verdict = std::move(rec.verdict);
      break;
    }
  }
  return out;
}

bool balance_audit(std::size_t n, std::size_t min_weight, std::size_t max_weight, double band) {
  const double half = static_cast<double>(n) / 2.0;
  const double radius = band * std::sqrt(static_cast<double>(n));
  return std::abs(static_cast<double>(min_weight) - half) <= radius &&
         std::abs(static_cast<double>(max_weight) - half) <= radius;
}

bool balance_audit(const RunRecord& record, double band) {
  if (record.queries == 0) return true;
  return balance_audit(record.n, record.min_weight, record.max_weight, band);
}

}  // namespace montest
