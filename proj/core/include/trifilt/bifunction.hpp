#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "trifilt/types.hpp"

namespace trifilt {

using Rank = std::int32_t;
using Value2 = std::array<double, 2>;

// A point of Grid(gamma), addressed by ranks (0-based).
struct GridIndex {
  Rank r1 = 0;
  Rank r2 = 0;
  friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
  // Product order.
  [[nodiscard]] bool leq(const GridIndex& o) const { return r1 <= o.r1 && r2 <= o.r2; }
};

// Values of the bifunction per point together with the two tie-broken total
// orders, stored as dense ranks and their inverse permutations.
class BiFunction {
 public:
  BiFunction() = default;
  explicit BiFunction(std::vector<Value2> values);

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] const Value2& value(PointId p) const { return values_[idx(p)]; }
  [[nodiscard]] Rank rank1(PointId p) const { return rank1_[idx(p)]; }
  [[nodiscard]] Rank rank2(PointId p) const { return rank2_[idx(p)]; }
  [[nodiscard]] Rank rank(int axis, PointId p) const { return axis == 0 ? rank1(p) : rank2(p); }
  [[nodiscard]] PointId by_rank1(Rank r) const { return order1_[static_cast<std::size_t>(r)]; }
  [[nodiscard]] PointId by_rank2(Rank r) const { return order2_[static_cast<std::size_t>(r)]; }
  [[nodiscard]] std::span<const PointId> order(int axis) const { return axis == 0 ? order1_ : order2_; }

  [[nodiscard]] GridIndex grid_of(PointId p) const { return {rank1(p), rank2(p)}; }
  [[nodiscard]] bool in_sublevel(PointId p, GridIndex g) const { return rank1(p) <= g.r1 && rank2(p) <= g.r2; }

  // Rank-wise join over the vertices of s.
  [[nodiscard]] GridIndex join(const Simplex& s) const;
  // Raw value join (coordinate-wise max).
  [[nodiscard]] Value2 value_join(const Simplex& s) const;

  // The vertex of s that is last in the first (resp. second) order.
  [[nodiscard]] PointId max1(const Simplex& s) const;
  [[nodiscard]] PointId max2(const Simplex& s) const;

  // Grid steps; empty at the grid boundary.
  [[nodiscard]] std::optional<GridIndex> right(GridIndex g) const;
  [[nodiscard]] std::optional<GridIndex> up(GridIndex g) const;
  [[nodiscard]] std::optional<GridIndex> left(GridIndex g) const;
  [[nodiscard]] std::optional<GridIndex> down(GridIndex g) const;
  [[nodiscard]] std::optional<GridIndex> down_left(GridIndex g) const;

  // gamma(x) <= gamma(y) in the tie-broken product order.
  [[nodiscard]] bool leq(PointId x, PointId y) const { return rank1(x) <= rank1(y) && rank2(x) <= rank2(y); }
  [[nodiscard]] bool comparable(PointId x, PointId y) const { return leq(x, y) || leq(y, x); }

 private:
  static std::size_t idx(PointId p) { return static_cast<std::size_t>(p); }

  std::vector<Value2> values_;
  std::vector<Rank> rank1_, rank2_;
  std::vector<PointId> order1_, order2_;
};

/// Bifunction over a cloud whose last `frame_size` points are the frame: the
/// frame gets values strictly below every data value, increasing with index
/// identically in both coordinates.
BiFunction with_frame_values(std::span<const Value2> data_values, std::size_t frame_size);

/// gamma = (-delta, delta).
std::vector<Value2> interlevel(std::span<const double> delta);

}  // namespace trifilt
