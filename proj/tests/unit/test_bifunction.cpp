#include <doctest.h>

#include <limits>

#include "trifilt/bifunction.hpp"

using namespace trifilt;

TEST_SUITE("bifunction") {
  TEST_CASE("ties are broken by index") {
    BiFunction f({{3.0, 0}, {1.0, 0}, {3.0, 0}});
    CHECK(f.rank1(0) == 1);
    CHECK(f.rank1(1) == 0);
    CHECK(f.rank1(2) == 2);
    CHECK(f.rank2(0) == 0);
    CHECK(f.rank2(1) == 1);
    CHECK(f.rank2(2) == 2);
  }

  TEST_CASE("increasing values give sort positions") {
    BiFunction f({{0.5, 1}, {1.5, 2}, {2.5, 3}});
    for (PointId p = 0; p < 3; ++p) {
      CHECK(f.rank1(p) == p);
      CHECK(f.rank2(p) == p);
      CHECK(f.by_rank1(p) == p);
    }
  }

  TEST_CASE("one-dimensional figure instance") {
    // Points 0, 1, 3 of the line in input order.
    BiFunction f({{1, 0}, {0, 0}, {0, 1}});
    CHECK(f.by_rank1(0) == 1);
    CHECK(f.by_rank1(1) == 2);
    CHECK(f.by_rank1(2) == 0);
    CHECK(f.by_rank2(0) == 0);
    CHECK(f.by_rank2(1) == 1);
    CHECK(f.by_rank2(2) == 2);
  }

  TEST_CASE("joins and maxima") {
    BiFunction f({{1, 5}, {3, 2}, {2, 1}});
    const Simplex s{0, 1};
    CHECK(f.value_join(s) == Value2{3, 5});
    CHECK(f.max1(s) == 1);
    CHECK(f.max2(s) == 0);
    CHECK(f.join(Simplex{0, 1, 2}) == GridIndex{2, 2});
    CHECK(f.comparable(1, 2));
    CHECK_FALSE(f.comparable(0, 1));
  }

  TEST_CASE("grid steps stop at the boundary") {
    BiFunction f({{0, 0}, {1, 1}});
    CHECK(f.right({0, 0}) == GridIndex{1, 0});
    CHECK(f.up({0, 0}) == GridIndex{0, 1});
    CHECK_FALSE(f.right({1, 0}));
    CHECK_FALSE(f.up({0, 1}));
    CHECK_FALSE(f.left({0, 1}));
    CHECK_FALSE(f.down({1, 0}));
    CHECK(f.down_left({1, 1}) == GridIndex{0, 0});
    CHECK_FALSE(f.down_left({1, 0}));
  }

  TEST_CASE("frame values come first in both orders") {
    const std::vector<Value2> data{{5, -1e9}, {-2, 7}, {1e12, 3}};
    auto f = with_frame_values(data, 3);
    for (PointId j = 0; j < 3; ++j) {
      CHECK(f.rank1(3 + j) == j);
      CHECK(f.rank2(3 + j) == j);
    }
    // Raw values of the data are kept.
    CHECK(f.value(0) == Value2{5, -1e9});
  }

  TEST_CASE("interlevel pairing") {
    const std::vector<double> delta{3, 0, -1, 2};
    const auto g = interlevel(delta);
    CHECK(g[0] == Value2{-3, 3});
    CHECK(g[1] == Value2{0, 0});
    BiFunction f(g);
    for (PointId p = 0; p < 4; ++p) CHECK(f.rank1(p) == 3 - f.rank2(p));
  }

  TEST_CASE("non-finite values are rejected") {
    CHECK_THROWS(BiFunction({{0, std::numeric_limits<double>::quiet_NaN()}}));
  }
}
