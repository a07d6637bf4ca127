#pragma once

#include <cstdint>
#include <random>

#include "montest/hypercube.hpp"

namespace montest {

// Reproducible stream: mt19937_64 plus hand-written mappings to integers and
// reals so that samples are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  // Independent stream for (seed, index), stable under changes to any other
  // index. Used for per-trial and per-stage streams.
  static Rng derive(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double unit();
  bool bernoulli(double p);
  bool coin() { return (next() >> 63) != 0; }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Labeled random events consumed by the testers. Exposing draws as events
// (rather than raw bits) lets the coupled-shift experiment transform a
// transcript point by point.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual Point uniform_point(std::size_t n) = 0;
  virtual Point hybrid_point(const Point& x, const Point& y, bool exclude_endpoints) = 0;
  // Uniform in [1, n].
  virtual Coord uniform_coordinate(std::size_t n) = 0;
};

class SeededSource final : public RandomSource {
 public:
  explicit SeededSource(std::uint64_t seed) : rng_(seed) {}
  explicit SeededSource(Rng rng) : rng_(rng) {}

  Point uniform_point(std::size_t n) override;
  Point hybrid_point(const Point& x, const Point& y, bool exclude_endpoints) override;
  Coord uniform_coordinate(std::size_t n) override;

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

// Every point drawn from the wrapped source is returned shifted by S, and
// hybrid requests are answered in the unshifted frame. A run of a tester on
// g(x) = f(x^S) driven by this source sees exactly the f-values of the run on
// f driven by the base source.
class ShiftedSource final : public RandomSource {
 public:
  ShiftedSource(RandomSource& base, VarSet s) : base_(base), s_(std::move(s)) {}

  Point uniform_point(std::size_t n) override;
  Point hybrid_point(const Point& x, const Point& y, bool exclude_endpoints) override;
  Coord uniform_coordinate(std::size_t n) override { return base_.uniform_coordinate(n); }

 private:
  RandomSource& base_;
  VarSet s_;
};

}  // namespace montest
