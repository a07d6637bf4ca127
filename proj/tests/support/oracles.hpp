#pragma once

// Brute-force reference computations. Deliberately naive and independent of
// the library's flow solver, transform and bit tricks; only indexing is
// shared (coordinate i at bit i-1).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

using Table = std::vector<std::uint8_t>;

inline bool bit(std::uint64_t x, unsigned i) { return ((x >> i) & 1U) != 0; }

inline int popcount(std::uint64_t x) {
  int c = 0;
  for (; x != 0; x >>= 1) c += static_cast<int>(x & 1U);
  return c;
}

inline bool subset(std::uint64_t x, std::uint64_t y) { return (x & ~y) == 0; }

// Monotone over every comparable pair, not just edges.
inline bool monotone_by_pairs(const Table& t) {
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    for (std::uint64_t y = 0; y < t.size(); ++y) {
      if (subset(x, y) && t[x] > t[y]) return false;
    }
  }
  return true;
}

inline Table table_from_bits(unsigned n, std::uint64_t bits) {
  Table t(std::size_t{1} << n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = bit(bits, static_cast<unsigned>(i)) ? 1 : 0;
  return t;
}

// Every monotone function on n variables, built recursively: f is monotone
// iff its restrictions f0 (x_n = 0) and f1 (x_n = 1) are monotone and
// f0 <= f1 pointwise. The top variable is the high index bit.
inline std::vector<Table> all_monotone(unsigned n) {
  if (n == 0) return {Table{0}, Table{1}};
  const auto smaller = all_monotone(n - 1);
  std::vector<Table> out;
  for (const auto& f0 : smaller) {
    for (const auto& f1 : smaller) {
      bool below = true;
      for (std::size_t i = 0; i < f0.size(); ++i) below = below && f0[i] <= f1[i];
      if (!below) continue;
      Table t(f0);
      t.insert(t.end(), f1.begin(), f1.end());
      out.push_back(std::move(t));
    }
  }
  return out;
}

inline std::uint64_t brute_distance(const Table& f, const std::vector<Table>& monotone) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (const auto& g : monotone) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < f.size(); ++i) d += f[i] != g[i] ? 1 : 0;
    best = std::min(best, d);
  }
  return best;
}

// NS_delta by summing over every x and every S with its B(n, delta) weight.
inline double ns_by_definition(unsigned n, const Table& f, double delta) {
  const std::uint64_t size = std::uint64_t{1} << n;
  double total = 0.0;
  for (std::uint64_t s = 0; s < size; ++s) {
    const int k = popcount(s);
    const double ps = std::pow(delta, k) * std::pow(1.0 - delta, static_cast<int>(n) - k);
    std::uint64_t disagree = 0;
    for (std::uint64_t x = 0; x < size; ++x) disagree += f[x] != f[x ^ s] ? 1 : 0;
    total += ps * static_cast<double>(disagree) / static_cast<double>(size);
  }
  return total;
}

// OR of ANDs, one variable at a time.
inline bool naive_dnf(const std::vector<std::vector<std::uint32_t>>& clauses, std::uint64_t x) {
  for (const auto& clause : clauses) {
    bool all = true;
    for (auto v : clause) all = all && bit(x, v - 1);
    if (all) return true;
  }
  return false;
}

// Violated covering edges of a table, counted directly.
inline std::uint64_t violated_edges(unsigned n, const Table& f) {
  std::uint64_t c = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    for (unsigned i = 0; i < n; ++i) {
      if (!bit(x, i) && f[x] == 1 && f[x | (std::uint64_t{1} << i)] == 0) ++c;
    }
  }
  return c;
}

}  // namespace oracle
