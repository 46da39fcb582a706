#include "trifilt/bifunction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trifilt {

BiFunction::BiFunction(std::vector<Value2> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  for (const auto& v : values_)
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw Error("non-finite function value");
  order1_.resize(n);
  order2_.resize(n);
  std::iota(order1_.begin(), order1_.end(), 0);
  std::iota(order2_.begin(), order2_.end(), 0);
  for (int axis = 0; axis < 2; ++axis) {
    auto& ord = axis == 0 ? order1_ : order2_;
    std::stable_sort(ord.begin(), ord.end(), [&](PointId a, PointId b) {
      return values_[idx(a)][static_cast<std::size_t>(axis)] < values_[idx(b)][static_cast<std::size_t>(axis)];
    });
  }
  rank1_.resize(n);
  rank2_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    rank1_[idx(order1_[r])] = static_cast<Rank>(r);
    rank2_[idx(order2_[r])] = static_cast<Rank>(r);
  }
}

GridIndex BiFunction::join(const Simplex& s) const {
  if (s.empty()) throw Error("join of an empty simplex");
  GridIndex g{-1, -1};
  for (PointId p : s) {
    g.r1 = std::max(g.r1, rank1(p));
    g.r2 = std::max(g.r2, rank2(p));
  }
  return g;
}

Value2 BiFunction::value_join(const Simplex& s) const {
  if (s.empty()) throw Error("join of an empty simplex");
  const GridIndex g = join(s);
  return {value(by_rank1(g.r1))[0], value(by_rank2(g.r2))[1]};
}

PointId BiFunction::max1(const Simplex& s) const { return by_rank1(join(s).r1); }
PointId BiFunction::max2(const Simplex& s) const { return by_rank2(join(s).r2); }

std::optional<GridIndex> BiFunction::right(GridIndex g) const {
  if (g.r1 + 1 >= static_cast<Rank>(size())) return std::nullopt;
  return GridIndex{g.r1 + 1, g.r2};
}
std::optional<GridIndex> BiFunction::up(GridIndex g) const {
  if (g.r2 + 1 >= static_cast<Rank>(size())) return std::nullopt;
  return GridIndex{g.r1, g.r2 + 1};
}
std::optional<GridIndex> BiFunction::left(GridIndex g) const {
  if (g.r1 == 0) return std::nullopt;
  return GridIndex{g.r1 - 1, g.r2};
}
std::optional<GridIndex> BiFunction::down(GridIndex g) const {
  if (g.r2 == 0) return std::nullopt;
  return GridIndex{g.r1, g.r2 - 1};
}
std::optional<GridIndex> BiFunction::down_left(GridIndex g) const {
  if (g.r1 == 0 || g.r2 == 0) return std::nullopt;
  return GridIndex{g.r1 - 1, g.r2 - 1};
}

BiFunction with_frame_values(std::span<const Value2> data_values, std::size_t frame_size) {
  std::vector<Value2> all(data_values.begin(), data_values.end());
  double lo1 = 0, lo2 = 0;
  if (!all.empty()) {
    lo1 = all[0][0];
    lo2 = all[0][1];
    for (const auto& v : all) {
      lo1 = std::min(lo1, v[0]);
      lo2 = std::min(lo2, v[1]);
    }
  }
  for (std::size_t j = 0; j < frame_size; ++j) {
    const double steps = static_cast<double>(frame_size - j);
    all.push_back({lo1 - steps * (1 + std::abs(lo1)), lo2 - steps * (1 + std::abs(lo2))});
  }
  BiFunction f(std::move(all));
  // Frame points must come first, in the same order, in both orders.
  for (std::size_t j = 0; j < frame_size; ++j) {
    const auto id = static_cast<PointId>(data_values.size() + j);
    if (f.rank1(id) != static_cast<Rank>(j) || f.rank2(id) != static_cast<Rank>(j))
      throw Error("frame values do not precede the data values");
  }
  return f;
}

std::vector<Value2> interlevel(std::span<const double> delta) {
  std::vector<Value2> out;
  out.reserve(delta.size());
  for (double d : delta) out.push_back({-d, d});
  return out;
}

}  // namespace trifilt
