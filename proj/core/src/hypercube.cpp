#include "montest/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "montest/errors.hpp"
#include "montest/random.hpp"

namespace montest {

namespace {

void require_same(const BitString& a, const BitString& b) {
  if (a.n() != b.n()) throw DimensionMismatch(a.n(), b.n());
}

void check_coord(Coord i, std::size_t n) {
  if (i < 1 || i > n) {
    throw PreconditionError("coordinate " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  }
}

std::uint64_t tail_mask(std::size_t n) {
  const std::size_t r = n % 64;
  return r == 0 ? ~0ULL : (1ULL << r) - 1;
}

template <class Out, class Op>
Out combine(const BitString& a, const BitString& b, Op op) {
  require_same(a, b);
  Out out(a.n());
  auto aw = a.words();
  auto bw = b.words();
  auto ow = out.words();
  for (std::size_t w = 0; w < ow.size(); ++w) ow[w] = op(aw[w], bw[w]);
  return out;
}

}  // namespace

BitString::BitString(std::size_t n) : n_(n) {
  if (n > kPackedLimit) wide_.assign(word_count(), 0);
}

std::span<const std::uint64_t> BitString::words() const {
  if (n_ <= kPackedLimit) return {&inline_, n_ == 0 ? 0u : 1u};
  return wide_;
}

std::span<std::uint64_t> BitString::words() {
  if (n_ <= kPackedLimit) return {&inline_, n_ == 0 ? 0u : 1u};
  return wide_;
}

bool BitString::test(Coord i) const {
  check_coord(i, n_);
  const std::size_t b = i - 1;
  return (words()[b / 64] >> (b % 64)) & 1ULL;
}

void BitString::set(Coord i, bool value) {
  check_coord(i, n_);
  const std::size_t b = i - 1;
  auto& w = words()[b / 64];
  const std::uint64_t m = 1ULL << (b % 64);
  w = value ? (w | m) : (w & ~m);
}

void BitString::flip(Coord i) {
  check_coord(i, n_);
  const std::size_t b = i - 1;
  words()[b / 64] ^= 1ULL << (b % 64);
}

std::uint64_t BitString::packed() const {
  if (!is_packed()) throw PreconditionError("packed() requires n <= 63");
  return inline_;
}

std::size_t BitString::popcount() const {
  std::size_t c = 0;
  for (auto w : words()) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitString::none() const {
  return std::all_of(words().begin(), words().end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<Coord> BitString::ones() const {
  std::vector<Coord> out;
  auto ws = words();
  for (std::size_t w = 0; w < ws.size(); ++w) {
    std::uint64_t bits = ws[w];
    while (bits != 0) {
      const int t = std::countr_zero(bits);
      out.push_back(static_cast<Coord>(w * 64 + static_cast<std::size_t>(t) + 1));
      bits &= bits - 1;
    }
  }
  return out;
}

void BitString::clear_padding() {
  auto ws = words();
  if (!ws.empty()) ws.back() &= tail_mask(n_);
}

bool operator==(const BitString& a, const BitString& b) {
  if (a.n_ != b.n_) return false;
  auto aw = a.words();
  auto bw = b.words();
  return std::equal(aw.begin(), aw.end(), bw.begin());
}

Point Point::all_ones(std::size_t n) {
  Point p(n);
  for (auto& w : p.words()) w = ~0ULL;
  p.clear_padding();
  return p;
}

Point Point::from_word(std::size_t n, std::uint64_t word) {
  if (n > kPackedLimit) throw PreconditionError("from_word requires n <= 63");
  Point p(n);
  if (n > 0) p.words()[0] = word;
  p.clear_padding();
  return p;
}

Point Point::parse(std::string_view bits) {
  Point p(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      p.set(static_cast<Coord>(i + 1));
    } else if (bits[i] != '0') {
      throw ParseError("point string may contain only 0 and 1");
    }
  }
  return p;
}

Point Point::from_signs(std::span<const int> signs) {
  Point p(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 1) {
      p.set(static_cast<Coord>(i + 1));
    } else if (signs[i] != -1) {
      throw PreconditionError("sign vector entries must be -1 or +1");
    }
  }
  return p;
}

std::vector<int> Point::signs() const {
  std::vector<int> out(n());
  for (std::size_t i = 0; i < n(); ++i) out[i] = sign(static_cast<Coord>(i + 1));
  return out;
}

std::string Point::to_string() const {
  std::string s(n(), '0');
  for (Coord i : ones()) s[i - 1] = '1';
  return s;
}

VarSet VarSet::all(std::size_t n) {
  VarSet s(n);
  for (auto& w : s.words()) w = ~0ULL;
  s.clear_padding();
  return s;
}

VarSet VarSet::of(std::size_t n, std::initializer_list<Coord> members) {
  return of(n, std::span<const Coord>(members.begin(), members.size()));
}

VarSet VarSet::of(std::size_t n, std::span<const Coord> members) {
  VarSet s(n);
  for (Coord i : members) s.set(i);
  return s;
}

VarSet VarSet::parse(std::size_t n, std::string_view text) {
  VarSet s(n);
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    Coord value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("bad variable index '" + std::string(token) + "'");
    }
    s.set(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return s;
}

std::string VarSet::to_string() const {
  std::string out;
  for (Coord i : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

std::size_t weight(const Point& x) { return x.popcount(); }

bool precedes(const Point& x, const Point& y) {
  require_same(x, y);
  auto xw = x.words();
  auto yw = y.words();
  for (std::size_t w = 0; w < xw.size(); ++w) {
    if ((xw[w] & ~yw[w]) != 0) return false;
  }
  return true;
}

Point shift(const Point& x, const VarSet& s) {
  require_same(x, s);
  Point out = x;
  auto ow = out.words();
  auto sw = s.words();
  for (std::size_t w = 0; w < ow.size(); ++w) ow[w] ^= sw[w];
  return out;
}

Point meet(const Point& x, const Point& y) {
  return combine<Point>(x, y, [](std::uint64_t a, std::uint64_t b) { return a & b; });
}

Point join(const Point& x, const Point& y) {
  return combine<Point>(x, y, [](std::uint64_t a, std::uint64_t b) { return a | b; });
}

VarSet differing(const Point& x, const Point& y) {
  return combine<VarSet>(x, y, [](std::uint64_t a, std::uint64_t b) { return a ^ b; });
}

std::size_t hamming_distance(const Point& x, const Point& y) {
  require_same(x, y);
  auto xw = x.words();
  auto yw = y.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < xw.size(); ++w) d += static_cast<std::size_t>(std::popcount(xw[w] ^ yw[w]));
  return d;
}

std::size_t common_ones(const Point& x, const Point& y) {
  require_same(x, y);
  auto xw = x.words();
  auto yw = y.words();
  std::size_t c = 0;
  for (std::size_t w = 0; w < xw.size(); ++w) c += static_cast<std::size_t>(std::popcount(xw[w] & yw[w]));
  return c;
}

Point uniform_point(std::size_t n, Rng& rng) {
  Point p(n);
  for (auto& w : p.words()) w = rng.next();
  auto ws = p.words();
  if (!ws.empty()) ws.back() &= tail_mask(n);
  return p;
}

Point hybrid_sample(const Point& x, const Point& y, bool exclude_endpoints, Rng& rng) {
  require_same(x, y);
  const VarSet diff = differing(x, y);
  const std::size_t d = diff.size();
  if (exclude_endpoints && d < 2) {
    throw PreconditionError("hybrid_sample: excluding endpoints needs Hamming distance >= 2, got " +
                            std::to_string(d));
  }
  auto dw = diff.words();
  Point z = x;
  auto zw = z.words();
  for (;;) {
    // Flip a uniformly random subset F of the differing coordinates; z = x^F.
    bool any = false;
    bool all = true;
    for (std::size_t w = 0; w < zw.size(); ++w) {
      const std::uint64_t f = rng.next() & dw[w];
      zw[w] = x.words()[w] ^ f;
      any = any || f != 0;
      all = all && f == dw[w];
    }
    if (!exclude_endpoints || (any && !all)) return z;
  }
}

std::vector<Point> hybrid_enumerate(const Point& x, const Point& y, std::uint64_t cap) {
  const std::vector<Coord> free = differing(x, y).members();
  const std::size_t d = free.size();
  if (d >= 63 || (1ULL << d) > cap) {
    throw CapExceeded("hybrid_enumerate: 2^" + std::to_string(d) + " points exceed cap " + std::to_string(cap));
  }
  const std::uint64_t count = 1ULL << d;
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    Point z = x;
    for (std::size_t b = 0; b < d; ++b) {
      if ((j >> b) & 1ULL) z.flip(free[b]);
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace montest
