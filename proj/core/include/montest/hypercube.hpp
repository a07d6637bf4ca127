#pragma once

// Vertices of {0,1}^n and subsets of [n].
//
// Coordinates are 1-indexed. Coordinate i lives in bit (i-1) of the word
// array, so for n <= 63 the packed word doubles as a truth-table index.
// Serialized bitstrings put coordinate 1 leftmost.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace montest {

using Coord = std::uint32_t;

class Rng;

inline constexpr std::size_t kPackedLimit = 63;

// Shared storage for Point and VarSet. Small dimensions keep their single
// word inline; larger ones spill to the heap.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t word_count() const { return (n_ + 63) / 64; }
  bool is_packed() const { return n_ <= kPackedLimit; }

  bool test(Coord i) const;
  void set(Coord i, bool value = true);
  void flip(Coord i);

  std::span<const std::uint64_t> words() const;
  std::span<std::uint64_t> words();

  // Requires is_packed().
  std::uint64_t packed() const;

  std::size_t popcount() const;
  bool none() const;

  // Ascending 1-indexed positions of set bits.
  std::vector<Coord> ones() const;

  friend bool operator==(const BitString& a, const BitString& b);

 protected:
  void clear_padding();

 private:
  std::size_t n_ = 0;
  std::uint64_t inline_ = 0;
  std::vector<std::uint64_t> wide_;
};

class Point : public BitString {
 public:
  Point() = default;
  explicit Point(std::size_t n) : BitString(n) {}

  static Point zeros(std::size_t n) { return Point(n); }
  static Point all_ones(std::size_t n);
  static Point from_word(std::size_t n, std::uint64_t word);
  // "1010" -> coordinate 1 = 1, coordinate 2 = 0, ...
  static Point parse(std::string_view bits);
  // +1 maps to bit 1, -1 to bit 0.
  static Point from_signs(std::span<const int> signs);

  // The {-1,+1} view of coordinate i.
  int sign(Coord i) const { return test(i) ? 1 : -1; }
  std::vector<int> signs() const;

  std::string to_string() const;
};

class VarSet : public BitString {
 public:
  VarSet() = default;
  explicit VarSet(std::size_t n) : BitString(n) {}

  static VarSet all(std::size_t n);
  static VarSet of(std::size_t n, std::initializer_list<Coord> members);
  static VarSet of(std::size_t n, std::span<const Coord> members);
  // "1,3,7"; the empty string is the empty set.
  static VarSet parse(std::size_t n, std::string_view text);

  std::size_t size() const { return popcount(); }
  bool empty() const { return none(); }
  bool contains(Coord i) const { return test(i); }
  std::vector<Coord> members() const { return ones(); }

  std::string to_string() const;
};

std::size_t weight(const Point& x);
bool precedes(const Point& x, const Point& y);
Point shift(const Point& x, const VarSet& s);
Point meet(const Point& x, const Point& y);
Point join(const Point& x, const Point& y);
VarSet differing(const Point& x, const Point& y);
std::size_t hamming_distance(const Point& x, const Point& y);
// |x ∩ y| viewing points as subsets of [n].
std::size_t common_ones(const Point& x, const Point& y);

Point uniform_point(std::size_t n, Rng& rng);

// Uniform over Hybrid(x,y), or over Hybrid(x,y) \ {x,y} when
// exclude_endpoints. Throws PreconditionError if exclude_endpoints and the
// points differ in fewer than two coordinates.
Point hybrid_sample(const Point& x, const Point& y, bool exclude_endpoints, Rng& rng);

// Every point of Hybrid(x,y), each exactly once, x first. Throws CapExceeded
// when 2^d > cap.
std::vector<Point> hybrid_enumerate(const Point& x, const Point& y, std::uint64_t cap);

}  // namespace montest
