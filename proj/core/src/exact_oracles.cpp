#include "montest/exact_oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "montest/errors.hpp"

namespace montest {

Coord ViolationEdge::variable() const {
  const auto members = differing(lower, upper).members();
  if (members.size() != 1) throw ContractViolation("violation edge endpoints must differ in one coordinate");
  return members.front();
}

bool is_violated(const BooleanFunction& f, const ViolationEdge& e) {
  return hamming_distance(e.lower, e.upper) == 1 && precedes(e.lower, e.upper) && f.eval(e.lower) &&
         !f.eval(e.upper);
}

bool is_violated(const BooleanFunction& f, const ViolationPair& p) {
  return precedes(p.lower, p.upper) && f.eval(p.lower) && !f.eval(p.upper);
}

MonotoneCheck check_monotone(const TruthTable& f) {
  const std::size_t n = f.n();
  const std::uint64_t size = f.size();
  for (std::uint64_t x = 0; x < size; ++x) {
    if (!f.at(x)) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = 1ULL << i;
      if ((x & bit) == 0 && !f.at(x | bit)) {
        return {false, ViolationEdge{Point::from_word(n, x), Point::from_word(n, x | bit)}};
      }
    }
  }
  return {true, std::nullopt};
}

namespace {

// Dinic's algorithm on the implicit network
//   s -> x (cap 1) for f(x)=1,  x -> t (cap 1) for f(x)=0,
//   x -> x|e_i (cap inf) for every covering edge.
// The source side of a minimum cut is upward closed; it is the optimal
// monotone function's 1-set, and the cut value is the distance.
class ClosureFlow {
 public:
  explicit ClosureFlow(const TruthTable& f)
      : n_(f.n()), size_(f.size()), source_(size_), sink_(size_), flow_(size_ * n_, 0), level_(size_), next_(size_) {
    for (std::uint64_t x = 0; x < size_; ++x) {
      source_[x] = f.at(x) ? 1 : 0;
      sink_[x] = f.at(x) ? 0 : 1;
    }
  }

  std::uint64_t run() {
    std::uint64_t total = 0;
    while (build_levels()) {
      std::fill(next_.begin(), next_.end(), 0u);
      for (std::uint64_t x = 0; x < size_; ++x) {
        if (source_[x] && level_[x] == 1) {
          if (augment_from(x)) ++total;
        }
      }
    }
    return total;
  }

  // Vertices reachable from s in the final residual network.
  std::vector<std::uint8_t> source_side() {
    build_levels();
    std::vector<std::uint8_t> side(size_);
    for (std::uint64_t x = 0; x < size_; ++x) side[x] = level_[x] >= 0 ? 1 : 0;
    return side;
  }

 private:
  static constexpr std::int32_t kUnreached = -1;

  std::size_t slots() const { return 2 * n_ + 1; }

  // Slot 0: sink arc. Slots 1..n: upward arc on bit s-1. Slots n+1..2n:
  // downward residual arc on bit s-n-1. Returns the neighbour or size_ for
  // "t", or nullopt when the arc has no residual capacity.
  std::optional<std::uint64_t> neighbour(std::uint64_t u, std::size_t slot) const {
    if (slot == 0) return sink_[u] ? std::optional<std::uint64_t>(size_) : std::nullopt;
    if (slot <= n_) {
      const std::uint64_t bit = 1ULL << (slot - 1);
      return (u & bit) ? std::nullopt : std::optional<std::uint64_t>(u | bit);
    }
    const std::size_t i = slot - n_ - 1;
    const std::uint64_t bit = 1ULL << i;
    if ((u & bit) == 0) return std::nullopt;
    const std::uint64_t v = u ^ bit;
    return flow_[v * n_ + i] > 0 ? std::optional<std::uint64_t>(v) : std::nullopt;
  }

  bool build_levels() {
    std::fill(level_.begin(), level_.end(), kUnreached);
    queue_.clear();
    for (std::uint64_t x = 0; x < size_; ++x) {
      if (source_[x]) {
        level_[x] = 1;
        queue_.push_back(x);
      }
    }
    bool sink_reached = false;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::uint64_t u = queue_[head];
      for (std::size_t s = 0; s < slots(); ++s) {
        const auto v = neighbour(u, s);
        if (!v) continue;
        if (*v == size_) {
          sink_reached = true;
        } else if (level_[*v] == kUnreached) {
          level_[*v] = level_[u] + 1;
          queue_.push_back(*v);
        }
      }
    }
    return sink_reached;
  }

  bool augment_from(std::uint64_t start) {
    path_.clear();
    path_.push_back(start);
    while (!path_.empty()) {
      const std::uint64_t u = path_.back();
      bool advanced = false;
      for (; next_[u] < slots(); ++next_[u]) {
        const auto v = neighbour(u, next_[u]);
        if (!v) continue;
        if (*v == size_) {
          push_path();
          return true;
        }
        if (level_[*v] == level_[u] + 1) {
          path_.push_back(*v);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        level_[u] = kUnreached;  // dead end for this phase
        path_.pop_back();
        if (!path_.empty()) ++next_[path_.back()];
      }
    }
    return false;
  }

  void push_path() {
    source_[path_.front()] = 0;
    for (std::size_t k = 0; k + 1 < path_.size(); ++k) {
      const std::uint64_t u = path_[k];
      const std::uint64_t v = path_[k + 1];
      const std::uint64_t bit = u ^ v;
      const auto i = static_cast<std::size_t>(std::countr_zero(bit));
      if (v & bit) {
        ++flow_[u * n_ + i];
      } else {
        --flow_[v * n_ + i];
      }
    }
    sink_[path_.back()] = 0;
  }

  std::size_t n_;
  std::uint64_t size_;
  std::vector<std::uint8_t> source_;
  std::vector<std::uint8_t> sink_;
  std::vector<std::int32_t> flow_;
  std::vector<std::int32_t> level_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint64_t> queue_;
  std::vector<std::uint64_t> path_;
};

void require_flow_size(const TruthTable& f) {
  if (f.n() > kMaxFlowDimension) {
    throw TableTooLarge("distance_to_monotone supports n <= " + std::to_string(kMaxFlowDimension));
  }
}

}  // namespace

Monotonization monotonize(const TruthTable& f) {
  require_flow_size(f);
  ClosureFlow flow(f);
  const std::uint64_t d = flow.run();
  return {d, TruthTable(f.n(), flow.source_side())};
}

std::uint64_t distance_to_monotone(const TruthTable& f) {
  require_flow_size(f);
  ClosureFlow flow(f);
  return flow.run();
}

void walsh_hadamard(std::span<double> data) {
  const std::size_t size = data.size();
  if (size == 0 || !std::has_single_bit(size)) throw PreconditionError("walsh_hadamard: size must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = data[j];
        const double b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

std::vector<double> fourier_coefficients(const TruthTable& f) {
  std::vector<double> c(f.size());
  for (std::size_t x = 0; x < c.size(); ++x) c[x] = f.at(x) ? -1.0 : 1.0;
  walsh_hadamard(c);
  const double scale = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= scale;
  return c;
}

double noise_sensitivity_exact(const TruthTable& f, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw PreconditionError("noise rate must lie in [0, 1]");
  if (f.n() > kMaxFlowDimension) throw TableTooLarge("noise_sensitivity_exact supports n <= 20");
  const auto c = fourier_coefficients(f);
  std::vector<double> damp(f.n() + 1);
  for (std::size_t k = 0; k <= f.n(); ++k) damp[k] = std::pow(1.0 - 2.0 * delta, static_cast<double>(k));
  double stability = 0.0;
  for (std::size_t t = 0; t < c.size(); ++t) {
    stability += c[t] * c[t] * damp[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(t)))];
  }
  return 0.5 - 0.5 * stability;
}

bool negative_weight_condition(std::span<const double> weights) {
  double eta = 0.0;
  double max_w = -std::numeric_limits<double>::infinity();
  for (double w : weights) {
    if (w < 0) eta += -w;
    max_w = std::max(max_w, w);
  }
  return eta > max_w;
}

ViolationPair negative_weight_witness(const Ltf& f) {
  const auto w = f.weights();
  if (!negative_weight_condition(w)) {
    throw PreconditionError("negative_weight_witness: sum of negative weight magnitudes must exceed max weight");
  }
  const std::size_t n = f.n();
  double eta = 0.0;
  Point x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] < 0) {
      eta += -w[i];
      x.set(static_cast<Coord>(i + 1));
    }
  }
  // x is the minimum of the sub-cube X (negative coordinates at +1, the rest
  // at -1). Raise nonnegative coordinates while the sum stays below theta;
  // each raise moves the sum by 2 w_i <= 2 eta.
  double m = f.margin(x);
  if (m >= 0.0) throw ContractViolation("negative_weight_witness: f is constant 1 (minimum of X is accepted)");
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] < 0) continue;
    const double next = m + 2.0 * w[i];
    if (next >= 0.0) break;
    m = next;
    x.set(static_cast<Coord>(i + 1));
  }
  if (m < -2.0 * eta) throw ContractViolation("negative_weight_witness: f is constant 0 on X");
  Point y = x;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] < 0) y.set(static_cast<Coord>(i + 1), false);
  }
  ViolationPair pair{std::move(y), std::move(x)};
  if (!is_violated(f, pair)) {
    throw ContractViolation("negative_weight_witness: numerical failure verifying the witness");
  }
  return pair;
}

}  // namespace montest
