#include <doctest.h>

#include "support/instances.hpp"
#include "trifilt/filtration.hpp"
#include "trifilt/oracle.hpp"
#include "trifilt/scanner.hpp"

using namespace trifilt;
using testing::Order;

namespace {

struct Built {
  testing::Instance inst;
  SimplexStore incr;
  BirthTable births;
};

Built build(testing::Instance inst) {
  auto incr = compute_incr(inst.cloud, inst.f, Strategy::Local);
  auto births = compute_births(incr, inst.cloud, inst.f, {.keep_exact = true});
  return {std::move(inst), std::move(incr), std::move(births)};
}

const BirthData& birth(const Built& b, const Simplex& s) {
  const auto i = b.incr.find(s);
  REQUIRE(i);
  return b.births.at(s.dim(), *i);
}

}  // namespace

TEST_SUITE("filtration") {
  TEST_CASE("gamma join") {
    BiFunction f({{1, 5}, {3, 2}, {2, 1}, {1, 3}});
    CHECK(gamma_join(Simplex{0}, f) == Value2{1, 5});
    CHECK(gamma_join(Simplex{0, 1}, f) == Value2{3, 5});
    CHECK(gamma_join(Simplex{1, 2, 3}, f) == Value2{3, 3});
    CHECK_THROWS(gamma_join(Simplex{}, f));
  }

  TEST_CASE("enclosing-ball radius") {
    PointCloud cloud(2, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
    CHECK(compute_m(Simplex{0}, cloud) == 0);
    CHECK(compute_m(Simplex{0, 1}, cloud) == 1);
    CHECK(compute_m(Simplex{0, 1, 2}, cloud) == std::sqrt(2.0));
  }

  TEST_CASE("isolated pair has the diametral witness") {
    auto b = build(testing::make_instance(2, {{0, 0, 0}, {2, 0, 0}}, {{0, 1}, {1, 0}}));
    const auto& e = birth(b, Simplex{0, 1});
    CHECK(e.gabriel);
    CHECK(e.omega == 1);
    CHECK(e.m == 1);
    CHECK(birth(b, Simplex{0}).omega == 0);
  }

  TEST_CASE("obtuse triangle: long edge is not Gabriel") {
    // The apex sits inside the diametral disk of the long edge and is in the
    // sublevel set of that edge.
    auto b = build(testing::make_instance(2, {{0, 0, 0}, {4, 0, 0}, {2, 0.5, 0}}, {{1, 1}, {2, 2}, {0, 0}}));
    const auto i = b.incr.find(Simplex{0, 1});
    REQUIRE(i);
    const auto g = is_incr_gabriel(b.incr, 1, *i, b.inst.cloud, b.inst.f);
    CHECK_FALSE(g.gabriel);
    CHECK(g.sphere.sq_radius == 4);
    // The witness radius comes from the triangle instead.
    CHECK(birth(b, Simplex{0, 1}).omega == birth(b, Simplex{0, 1, 2}).omega);
    CHECK(b.births.omega_sq(1, *i) == oracle::brute_omega(b.inst.cloud, b.inst.f, Simplex{0, 1}));
  }

  TEST_CASE("maximal simplices are Gabriel") {
    auto b = build(testing::random_instance(77, 2, 9, Order::Generic));
    for (int k = 0; k <= b.incr.max_dim(); ++k)
      for (SimplexStore::Index i = 0; i < b.incr.level(k).size(); ++i)
        if (b.incr.cofacets(k, i).empty()) CHECK(b.births.at(k, i).gabriel);
  }

  TEST_CASE("radii are exact, ordered and monotone") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const int dim = 1 + static_cast<int>(seed % 3);
      auto b = build(testing::random_instance(seed + 900, dim, 3 + seed % 6, static_cast<Order>(seed % 3)));
      CAPTURE(b.inst.label);
      for (int k = 0; k <= b.incr.max_dim(); ++k) {
        const auto level = b.incr.level(k);
        for (SimplexStore::Index i = 0; i < level.size(); ++i) {
          const auto& s = level[i];
          CHECK(b.births.omega_sq(k, i) == oracle::brute_omega(b.inst.cloud, b.inst.f, s));
          CHECK(b.births.m_sq(k, i) == oracle::brute_miniball_sq(b.inst.cloud, s));
          CHECK(b.births.m_sq(k, i) <= b.births.omega_sq(k, i));
          CHECK(b.births.at(k, i).m <= b.births.at(k, i).omega);
          CHECK(b.births.at(k, i).omega == sqrt_nearest(b.births.omega_sq(k, i)));
          if (k == 0) continue;
          for (auto j : b.incr.facets(k, i)) {
            CHECK(b.births.omega_sq(k - 1, j) <= b.births.omega_sq(k, i));
            CHECK(b.births.m_sq(k - 1, j) <= b.births.m_sq(k, i));
            const auto& fg = b.births.at(k - 1, j).gamma;
            CHECK(fg[0] <= b.births.at(k, i).gamma[0]);
            CHECK(fg[1] <= b.births.at(k, i).gamma[1]);
          }
        }
      }
    }
  }

  TEST_CASE("chain order is bounded by the one-parameter Delaunay radius") {
    // Along a chain the top vertex may sit strictly inside the witness, so the
    // radius can only be smaller than the alpha radius of the sublevel set.
    int equal = 0, smaller = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      auto b = build(testing::random_instance(seed + 40, 2, 8, Order::Chain));
      for (int k = 0; k <= b.incr.max_dim(); ++k) {
        const auto level = b.incr.level(k);
        for (SimplexStore::Index i = 0; i < level.size(); ++i) {
          const auto& s = level[i];
          REQUIRE(b.inst.f.max1(s) == b.inst.f.max2(s));
          const auto pts = testing::sublevel(b.inst.cloud, b.inst.f, b.inst.f.join(s));
          const auto del = oracle::brute_delaunay(b.inst.cloud, pts);
          if (std::find(del.begin(), del.end(), s) == del.end()) continue;
          const auto alpha = oracle::alpha_sq_radius(b.inst.cloud, pts, s);
          CHECK(b.births.omega_sq(k, i) <= alpha);
          (b.births.omega_sq(k, i) == alpha ? equal : smaller)++;
        }
      }
    }
    CHECK(equal > 0);
    CHECK(smaller > 0);
  }

  TEST_CASE("chain triangle with its apex inside the diametral disk") {
    auto b = build(testing::make_instance(2, {{0, 0, 0}, {4, 0, 0}, {2, 1, 0}}, {{0, 0}, {1, 1}, {2, 2}}));
    const auto i = b.incr.find(Simplex{0, 1, 2});
    REQUIRE(i);
    CHECK(b.births.omega_sq(2, *i) == 4);
    const std::vector<PointId> all{0, 1, 2};
    CHECK(oracle::alpha_sq_radius(b.inst.cloud, all, Simplex{0, 1, 2}) == Rational(25, 4));
  }

  TEST_CASE("emission order and values") {
    auto single = build(testing::make_instance(2, {{0.5, 0.5, 0}}, {{1, 2}}));
    auto out = emit_filtration(single.incr, single.births, FiltrationKind::Del);
    REQUIRE(out.blocks.size() == 1);
    REQUIRE(out.blocks[0].size() == 1);
    CHECK(out.blocks[0][0].values == std::array<double, 3>{1, 2, 0});

    auto b = build(testing::random_instance(8, 2, 8, Order::Generic));
    const auto del = emit_filtration(b.incr, b.births, FiltrationKind::Del);
    const auto cech = emit_filtration(b.incr, b.births, FiltrationKind::DelCech);
    REQUIRE(del.blocks.size() == cech.blocks.size());
    CHECK(del.size() == b.incr.size());
    for (std::size_t k = 0; k < del.blocks.size(); ++k) {
      const auto& blk = del.blocks[k];
      CHECK(blk.front().simplex.dim() == del.top_dim() - static_cast<int>(k));
      for (std::size_t i = 0; i < blk.size(); ++i) {
        CHECK(blk[i].simplex == cech.blocks[k][i].simplex);
        CHECK(blk[i].values[2] >= cech.blocks[k][i].values[2]);
        if (i) CHECK(blk[i - 1].simplex < blk[i].simplex);
      }
    }
  }
}
