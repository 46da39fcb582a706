#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "trifilt/bifunction.hpp"
#include "trifilt/io.hpp"
#include "trifilt/point_cloud.hpp"

namespace trifilt::testing {

enum class Order { Chain, Antichain, Generic };

inline const char* to_string(Order o) {
  switch (o) {
    case Order::Chain:
      return "chain";
    case Order::Antichain:
      return "antichain";
    case Order::Generic:
      return "generic";
  }
  return "?";
}

struct Instance {
  PointCloud cloud;
  BiFunction f;
  std::string label;
};

// Random coordinates on a dyadic grid keep every predicate input exact and
// short.
inline double dyadic(io::UniformSource& rng, double lo = 0, double hi = 1) {
  return std::round(rng.next(lo, hi) * 65536.0) / 65536.0;
}

inline std::vector<Value2> random_values(io::UniformSource& rng, std::size_t n, Order order) {
  std::vector<Value2> v(n);
  for (auto& x : v) {
    const double a = dyadic(rng), b = dyadic(rng);
    switch (order) {
      case Order::Chain:
        x = {a, a};
        break;
      case Order::Antichain:
        x = {-a, a};
        break;
      case Order::Generic:
        x = {a, b};
        break;
    }
  }
  return v;
}

inline std::vector<Coords> random_points(io::UniformSource& rng, int dim, std::size_t n) {
  std::vector<Coords> pts(n, Coords{0, 0, 0});
  for (auto& p : pts)
    for (int k = 0; k < dim; ++k) p[static_cast<std::size_t>(k)] = dyadic(rng);
  return pts;
}

inline Instance make_instance(int dim, std::vector<Coords> pts, const std::vector<Value2>& values,
                              std::string label = {}) {
  auto cloud = with_frame(dim, std::move(pts));
  auto f = with_frame_values(values, static_cast<std::size_t>(dim) + 1);
  return {std::move(cloud), std::move(f), std::move(label)};
}

inline Instance random_instance(std::uint64_t seed, int dim, std::size_t n, Order order) {
  io::UniformSource rng(seed);
  auto pts = random_points(rng, dim, n);
  auto values = random_values(rng, n, order);
  std::string label = "seed " + std::to_string(seed) + " d=" + std::to_string(dim) + " n=" + std::to_string(n) + " " +
                      to_string(order);
  return make_instance(dim, std::move(pts), values, std::move(label));
}

inline std::vector<PointId> data_ids(const PointCloud& cloud) {
  std::vector<PointId> ids(cloud.num_data());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<PointId>(i);
  return ids;
}

// Data points in the sublevel set of a grid index.
inline std::vector<PointId> sublevel(const PointCloud& cloud, const BiFunction& f, GridIndex p) {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < cloud.num_data(); ++i)
    if (f.in_sublevel(static_cast<PointId>(i), p)) out.push_back(static_cast<PointId>(i));
  return out;
}

}  // namespace trifilt::testing
