#include "montest/random.hpp"

#include "montest/errors.hpp"

namespace montest {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

bool Rng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return unit() < p;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("Rng::below: bound must be positive");
  // Rejection on the top of the range keeps the result exactly uniform.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return r % bound;
}

Point SeededSource::uniform_point(std::size_t n) { return montest::uniform_point(n, rng_); }

Point SeededSource::hybrid_point(const Point& x, const Point& y, bool exclude_endpoints) {
  return hybrid_sample(x, y, exclude_endpoints, rng_);
}

Coord SeededSource::uniform_coordinate(std::size_t n) { return static_cast<Coord>(rng_.below(n) + 1); }

Point ShiftedSource::uniform_point(std::size_t n) { return shift(base_.uniform_point(n), s_); }

Point ShiftedSource::hybrid_point(const Point& x, const Point& y, bool exclude_endpoints) {
  return shift(base_.hybrid_point(shift(x, s_), shift(y, s_), exclude_endpoints), s_);
}

}  // namespace montest
