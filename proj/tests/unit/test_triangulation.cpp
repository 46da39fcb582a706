#include <doctest.h>

#include <algorithm>
#include <set>

#include "support/instances.hpp"
#include "trifilt/oracle.hpp"
#include "trifilt/triangulation.hpp"

using namespace trifilt;

namespace {

// Top-dimensional cells of the brute-force Delaunay complex of the live
// vertex set (frame included).
std::vector<Simplex> expected_cells(const PointCloud& cloud, const std::vector<PointId>& live) {
  std::vector<Simplex> out;
  for (const auto& s : oracle::brute_delaunay(cloud, live))
    if (s.dim() == cloud.dim()) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointId> live_vertices(const PointCloud& cloud, const std::vector<char>& in) {
  std::vector<PointId> v = cloud.frame_ids();
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) v.push_back(static_cast<PointId>(i));
  std::sort(v.begin(), v.end());
  return v;
}

bool contains_point(const PointCloud& cloud, const Simplex& cell, const Coords& q) {
  auto pts = cloud.gather(cell.vertices());
  const int dim = cloud.dim();
  const int sign = geom::orientation(dim, pts);
  for (int i = 0; i <= dim; ++i) {
    auto probe = pts;
    probe[static_cast<std::size_t>(i)] = q;
    if (geom::orientation(dim, probe) * sign < 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("triangulation") {
  TEST_CASE("initial state is the frame cell") {
    for (int dim = 1; dim <= 3; ++dim) {
      io::UniformSource rng(static_cast<std::uint64_t>(dim));
      auto cloud = with_frame(dim, testing::random_points(rng, dim, 3));
      Triangulation t(cloud);
      CHECK(t.num_cells() == 1);
      CHECK(t.num_vertices() == static_cast<std::size_t>(dim) + 1);
      const auto cells = t.cells();
      REQUIRE(cells.size() == 1);
      CHECK(cells[0] == Simplex(cloud.frame_ids()));
      CHECK_NOTHROW(t.validate());
    }
  }

  TEST_CASE("locate finds a cell containing the query") {
    auto cloud = with_frame(2, {{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0.5, 0.5, 0}});
    Triangulation t(cloud);
    CHECK(t.cell_simplex(t.locate(cloud[3])) == Simplex(cloud.frame_ids()));
    t.insert(0);
    t.insert(1);
    t.insert(2);
    const auto c = t.locate(cloud[3]);
    CHECK(contains_point(cloud, t.cell_simplex(c), cloud[3]));
    CHECK(t.cell_simplex(c) == Simplex{0, 1, 2});
    CHECK_THROWS(t.locate({1e12, 1e12, 0}));
  }

  TEST_CASE("first insertion reports the frame cell as its only conflict") {
    auto cloud = with_frame(2, {{0, 0, 0}});
    Triangulation t(cloud);
    std::vector<Simplex> conflicts;
    t.insert(0, &conflicts);
    REQUIRE(conflicts.size() == 1);
    CHECK(conflicts[0] == Simplex(cloud.frame_ids()));
    CHECK(t.num_cells() == 3);
    CHECK(t.neighborhood(0) == std::vector<PointId>{0, 1, 2, 3});
  }

  TEST_CASE("insertion conflicts equal the cells whose circumsphere contains the point") {
    auto cloud = with_frame(2, {{0, 0, 0}, {2, 0, 0}, {1, 2, 0}, {1, 0.5, 0}});
    Triangulation t(cloud);
    for (PointId v : {0, 1, 2}) t.insert(v);
    std::vector<Simplex> expected;
    for (const auto& c : t.cells()) {
      auto pts = cloud.gather(c.vertices());
      if (geom::orientation(2, pts) < 0) std::swap(pts[0], pts[1]);
      if (geom::in_sphere(2, pts, cloud[3]) == geom::Side::Inside) expected.push_back(c);
    }
    std::vector<Simplex> conflicts;
    t.insert(3, &conflicts);
    std::sort(conflicts.begin(), conflicts.end());
    CHECK(conflicts == expected);
    CHECK(t.cells() == expected_cells(cloud, {0, 1, 2, 3, 4, 5, 6}));
  }

  TEST_CASE("removing the only data vertex restores the frame") {
    auto cloud = with_frame(3, {{0.1, 0.2, 0.3}});
    Triangulation t(cloud);
    t.insert(0);
    t.remove(0);
    CHECK(t.num_cells() == 1);
    CHECK(t.cells()[0] == Simplex(cloud.frame_ids()));
    CHECK_NOTHROW(t.validate());
  }

  TEST_CASE("removing the center of a square") {
    // Slightly irregular square so that the refill has a unique diagonal.
    auto cloud = with_frame(2, {{0, 0, 0}, {1, 0.0625, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, 0.5, 0}});
    Triangulation t(cloud);
    for (PointId v = 0; v < 5; ++v) t.insert(v);
    CHECK(t.neighborhood(4) == std::vector<PointId>{0, 1, 2, 3, 4});
    const auto before = t.num_cells();
    t.remove(4);
    CHECK(t.num_cells() == before - 2);
    CHECK(t.cells() == expected_cells(cloud, {0, 1, 2, 3, 5, 6, 7}));
    CHECK_NOTHROW(t.validate());
  }

  TEST_CASE("errors on invalid mutations") {
    auto cloud = with_frame(2, {{0, 0, 0}, {1, 0, 0}});
    Triangulation t(cloud);
    t.insert(0);
    CHECK_THROWS(t.insert(0));
    CHECK_THROWS(t.remove(1));
    CHECK_THROWS(t.remove(2));  // frame vertex
  }

  TEST_CASE("cospherical insertion is reported") {
    auto cloud = with_frame(2, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {2, 2, 0}});
    Triangulation t(cloud);
    t.insert(0);
    t.insert(1);
    t.insert(2);
    CHECK_THROWS_AS(t.insert(3), GeneralPositionError);
  }

  TEST_CASE("insert then remove restores the cell set") {
    for (int dim = 1; dim <= 3; ++dim) {
      for (std::uint64_t seed = 0; seed < 35; ++seed) {
        io::UniformSource rng(seed * 7 + static_cast<std::uint64_t>(dim));
        auto cloud = with_frame(dim, testing::random_points(rng, dim, 10));
        Triangulation t(cloud);
        for (PointId v = 0; v < 9; ++v) t.insert(v);
        const auto before = t.cells();
        t.insert(9);
        t.remove(9);
        CHECK(t.cells() == before);
      }
    }
  }

  TEST_CASE("neighborhood matches the edges of the brute-force triangulation") {
    io::UniformSource rng(99);
    auto cloud = with_frame(2, testing::random_points(rng, 2, 20));
    Triangulation t(cloud);
    for (PointId v = 0; v < 20; ++v) t.insert(v);
    std::vector<PointId> all(cloud.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<PointId>(i);
    const auto brute = oracle::brute_delaunay(cloud, all);
    for (PointId v = 0; v < 20; ++v) {
      std::set<PointId> expected{v};
      for (const auto& s : brute)
        if (s.size() == 2 && s.contains(v)) expected.insert(s[0] == v ? s[1] : s[0]);
      CHECK(t.neighborhood(v) == std::vector<PointId>(expected.begin(), expected.end()));
    }
  }

  TEST_CASE("random insert and delete sequences stay Delaunay") {
    for (int dim = 1; dim <= 3; ++dim) {
      for (std::uint64_t seed = 0; seed < 34; ++seed) {
        io::UniformSource rng(1000 + seed * 3 + static_cast<std::uint64_t>(dim));
        const std::size_t n = 6 + seed % 9;
        auto cloud = with_frame(dim, testing::random_points(rng, dim, n));
        Triangulation t(cloud);
        std::vector<char> in(n, 0);
        for (int op = 0; op < 40; ++op) {
          const auto v = static_cast<PointId>(std::min(n - 1, static_cast<std::size_t>(rng.next() * n)));
          if (in[static_cast<std::size_t>(v)]) {
            t.remove(v);
          } else {
            t.insert(v);
          }
          in[static_cast<std::size_t>(v)] ^= 1;
          t.validate();
          REQUIRE(t.is_delaunay());
          REQUIRE(t.cells() == expected_cells(cloud, live_vertices(cloud, in)));
        }
      }
    }
  }
}
