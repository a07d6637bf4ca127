#include <map>
#include <set>

#include <gtest/gtest.h>

#include "montest/errors.hpp"
#include "montest/hypercube.hpp"
#include "montest/random.hpp"
#include "montest/stats.hpp"

namespace montest {
namespace {

Point P(const char* s) { return Point::parse(s); }

TEST(Hypercube, WeightExamples) {
  EXPECT_EQ(weight(P("0000")), 0u);
  EXPECT_EQ(weight(P("1111")), 4u);
  EXPECT_EQ(weight(P("1010")), 2u);
}

TEST(Hypercube, PrecedesExamples) {
  EXPECT_TRUE(precedes(P("0011"), P("0111")));
  EXPECT_TRUE(precedes(P("0011"), P("0011")));
  EXPECT_FALSE(precedes(P("0110"), P("0011")));
  EXPECT_THROW(precedes(P("001"), P("0011")), DimensionMismatch);
}

TEST(Hypercube, ShiftExamples) {
  EXPECT_EQ(shift(P("101"), VarSet::of(3, {1})).to_string(), "001");
  EXPECT_EQ(shift(P("101"), VarSet(3)).to_string(), "101");
  EXPECT_EQ(shift(P("101"), VarSet::of(3, {1, 2, 3})).to_string(), "010");
  EXPECT_THROW(shift(P("101"), VarSet(4)), DimensionMismatch);
}

TEST(Hypercube, CoordinateOneIsLeftmostAndLowBit) {
  const Point x = P("1000");
  EXPECT_TRUE(x.test(1));
  EXPECT_EQ(x.packed(), 1u);
  EXPECT_EQ(Point::from_word(4, 0b0110).to_string(), "0110");
}

TEST(Hypercube, SignViewRoundTrips) {
  Rng rng(7);
  for (std::size_t n : {1u, 5u, 63u, 64u, 130u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Point x = uniform_point(n, rng);
      const std::vector<int> s = x.signs();
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(s[i], x.test(static_cast<Coord>(i + 1)) ? 1 : -1);
      EXPECT_EQ(Point::from_signs(s), x);
    }
  }
  const std::vector<int> bad{1, 0};
  EXPECT_THROW(Point::from_signs(bad), PreconditionError);
}

TEST(Hypercube, PaddingStaysClear) {
  const Point ones = Point::all_ones(70);
  EXPECT_EQ(weight(ones), 70u);
  EXPECT_EQ(weight(Point::all_ones(63)), 63u);
  EXPECT_EQ(VarSet::all(65).size(), 65u);
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    EXPECT_LE(weight(uniform_point(70, rng)), 70u);
    EXPECT_LT(uniform_point(5, rng).packed(), 32u);
  }
}

TEST(Hypercube, WideAndPackedAgree) {
  // Same coordinates set at n = 60 (packed) and n = 200 (wide).
  Point a(60), b(200);
  for (Coord i : {1u, 17u, 60u}) {
    a.set(i);
    b.set(i);
  }
  EXPECT_EQ(a.ones(), b.ones());
  EXPECT_EQ(b.to_string().substr(0, 60), a.to_string());
  EXPECT_THROW(b.packed(), PreconditionError);
}

TEST(Hypercube, CoordinateRangeChecked) {
  Point x(4);
  EXPECT_THROW(x.set(0), PreconditionError);
  EXPECT_THROW(x.set(5), PreconditionError);
  EXPECT_THROW(Point::parse("01x"), ParseError);
}

TEST(Hypercube, VarSetSerialization) {
  const VarSet s = VarSet::parse(8, "7,1,3");
  EXPECT_EQ(s.to_string(), "1,3,7");
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(VarSet::parse(8, "").empty());
  EXPECT_THROW(VarSet::parse(8, "1,,2"), ParseError);
  EXPECT_THROW(VarSet::parse(8, "9"), PreconditionError);
}

TEST(Hypercube, ShiftIsInvolutionAndOrderImpliesWeight) {
  Rng rng(11);
  for (std::size_t n : {3u, 40u, 63u, 100u}) {
    for (int rep = 0; rep < 200; ++rep) {
      const Point x = uniform_point(n, rng);
      const Point y = uniform_point(n, rng);
      VarSet s(n);
      for (Coord i = 1; i <= n; ++i) s.set(i, rng.coin());
      EXPECT_EQ(shift(shift(x, s), s), x);
      const Point lo = meet(x, y);
      EXPECT_TRUE(precedes(lo, x));
      EXPECT_LE(weight(lo), weight(x));
      EXPECT_EQ(hamming_distance(x, y), differing(x, y).size());
      EXPECT_EQ(common_ones(x, y), weight(lo));
    }
  }
}

TEST(Hybrid, SingletonWhenEqual) {
  Rng rng(1);
  const Point x = P("0110");
  for (int i = 0; i < 100; ++i) EXPECT_EQ(hybrid_sample(x, x, false, rng), x);
  EXPECT_THROW(hybrid_sample(x, x, true, rng), PreconditionError);
  EXPECT_THROW(hybrid_sample(x, P("0111"), true, rng), PreconditionError);
}

TEST(Hybrid, SupportOfTwoFreeCoordinates) {
  Rng rng(2);
  std::set<std::string> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(hybrid_sample(P("0011"), P("0101"), false, rng).to_string());
  EXPECT_EQ(seen, (std::set<std::string>{"0011", "0101", "0001", "0111"}));
}

TEST(Hybrid, ExcludingEndpointsHalvesBetweenInteriorPoints) {
  Rng rng(3);
  std::map<std::string, int> counts;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) ++counts[hybrid_sample(P("0011"), P("0101"), true, rng).to_string()];
  ASSERT_EQ(counts.size(), 2u);
  const double sigma = std::sqrt(draws * 0.25);
  EXPECT_NEAR(counts["0001"], draws / 2.0, 3 * sigma);
  EXPECT_NEAR(counts["0111"], draws / 2.0, 3 * sigma);
}

TEST(Hybrid, ClosureBetweenMeetAndJoin) {
  Rng rng(4);
  for (std::size_t n : {8u, 63u, 150u}) {
    for (int rep = 0; rep < 300; ++rep) {
      const Point x = uniform_point(n, rng);
      const Point y = uniform_point(n, rng);
      const bool ex = hamming_distance(x, y) >= 2 && rng.coin();
      const Point z = hybrid_sample(x, y, ex, rng);
      EXPECT_TRUE(precedes(meet(x, y), z));
      EXPECT_TRUE(precedes(z, join(x, y)));
      if (ex) {
        EXPECT_NE(z, x);
        EXPECT_NE(z, y);
      }
    }
  }
}

TEST(Hybrid, UniformOverSupportChiSquare) {
  Rng rng(5);
  const std::size_t n = 10;
  for (std::size_t d = 1; d <= 4; ++d) {
    Point x(n), y(n);
    std::vector<Coord> free;
    for (Coord i = 1; i <= d; ++i) {
      const Coord c = static_cast<Coord>(2 * i);
      y.set(c);
      free.push_back(c);
    }
    x.set(9);
    y.set(9);
    for (bool exclude : {false, true}) {
      if (exclude && d < 2) continue;
      std::vector<std::uint64_t> counts(std::size_t{1} << d, 0);
      for (int t = 0; t < 100000; ++t) {
        const Point z = hybrid_sample(x, y, exclude, rng);
        std::size_t idx = 0;
        for (std::size_t b = 0; b < d; ++b) idx |= z.test(free[b]) ? (std::size_t{1} << b) : 0;
        ++counts[idx];
      }
      std::vector<double> probs(counts.size(), 1.0);
      if (exclude) {
        probs.front() = 0.0;
        probs.back() = 0.0;
      }
      EXPECT_GT(chi_square_gof_pvalue(counts, probs), 0.001) << "d=" << d << " exclude=" << exclude;
    }
  }
}

TEST(Hybrid, EnumerateExamples) {
  const Point x = P("0110");
  EXPECT_EQ(hybrid_enumerate(x, x, 16), std::vector<Point>{x});
  const auto edge = hybrid_enumerate(P("0110"), P("0111"), 16);
  EXPECT_EQ(edge, (std::vector<Point>{P("0110"), P("0111")}));

  const Point a = P("000101");
  const Point b = P("111101");
  const auto cube = hybrid_enumerate(a, b, 8);
  ASSERT_EQ(cube.size(), 8u);
  EXPECT_EQ(cube.front(), a);
  std::set<std::string> distinct;
  for (const auto& z : cube) {
    distinct.insert(z.to_string());
    // Off the differing set {1,2,3} every hybrid agrees with a.
    EXPECT_TRUE(z.test(4));
    EXPECT_FALSE(z.test(5));
    EXPECT_TRUE(z.test(6));
  }
  EXPECT_EQ(distinct.size(), 8u);
  EXPECT_THROW(hybrid_enumerate(a, b, 7), CapExceeded);
}

TEST(Random, DeriveIsStableAndDistinct) {
  EXPECT_EQ(Rng::derive_seed(42, 3), Rng::derive_seed(42, 3));
  EXPECT_NE(Rng::derive_seed(42, 3), Rng::derive_seed(42, 4));
  EXPECT_NE(Rng::derive_seed(42, 3), Rng::derive_seed(43, 3));
  Rng a = Rng::derive(9, 1);
  Rng b = Rng::derive(9, 1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Random, BelowAndUnitRanges) {
  Rng rng(8);
  std::vector<std::uint64_t> counts(6, 0);
  for (int i = 0; i < 60000; ++i) {
    const auto v = rng.below(6);
    ASSERT_LT(v, 6u);
    ++counts[v];
    const double u = rng.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_GT(chi_square_uniform_pvalue(counts), 0.001);
  EXPECT_FALSE(rng.bernoulli(0.0));
  EXPECT_TRUE(rng.bernoulli(1.0));
}

TEST(Random, ShiftedSourceTransformsEveryDraw) {
  const std::size_t n = 12;
  const VarSet s = VarSet::of(n, {2, 5, 11});
  SeededSource a(77), b(77);
  ShiftedSource shifted(b, s);
  for (int i = 0; i < 50; ++i) {
    const Point x = a.uniform_point(n);
    EXPECT_EQ(shifted.uniform_point(n), shift(x, s));
  }
  const Point x = a.uniform_point(n);
  const Point y = a.uniform_point(n);
  b.uniform_point(n);
  b.uniform_point(n);
  const Point z = a.hybrid_point(x, y, true);
  EXPECT_EQ(shifted.hybrid_point(shift(x, s), shift(y, s), true), shift(z, s));
}

}  // namespace
}  // namespace montest
