#pragma once

#include <cstdint>
#include <span>

#include "trifilt/types.hpp"

namespace trifilt::geom {

enum class Side : std::uint8_t { Inside, On, Outside };

// Sign of det[p1 - p0, ..., pd - p0]; pts.size() must be dim + 1.
int orientation(int dim, std::span<const Coords> pts);

// Position of q relative to the circumsphere of a positively oriented cell.
Side in_sphere(int dim, std::span<const Coords> cell, const Coords& q);

// Same predicates evaluated with rationals only. Used as the fallback and in tests.
int orientation_exact(int dim, std::span<const Coords> pts);
Side in_sphere_exact(int dim, std::span<const Coords> cell, const Coords& q);

// Counts of predicate calls that needed the exact fallback (per thread).
struct FilterStats {
  std::uint64_t orientation_calls = 0;
  std::uint64_t orientation_exact = 0;
  std::uint64_t in_sphere_calls = 0;
  std::uint64_t in_sphere_exact = 0;
};
FilterStats& filter_stats();

}  // namespace trifilt::geom
