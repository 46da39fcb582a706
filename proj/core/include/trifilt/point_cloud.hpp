#pragma once

#include <span>
#include <vector>

#include "trifilt/types.hpp"

namespace trifilt {

// Data points followed by the d+1 frame points that keep every data point
// strictly inside a large simplex. Frame indices are num_data()..size()-1.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(int dim, std::vector<Coords> data, std::vector<Coords> frame = {});

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return coords_.size(); }
  [[nodiscard]] std::size_t num_data() const { return num_data_; }
  [[nodiscard]] bool has_frame() const { return coords_.size() > num_data_; }
  [[nodiscard]] bool is_frame(PointId p) const { return static_cast<std::size_t>(p) >= num_data_; }

  [[nodiscard]] const Coords& operator[](PointId p) const { return coords_[static_cast<std::size_t>(p)]; }
  [[nodiscard]] std::span<const Coords> coords() const { return coords_; }
  [[nodiscard]] std::span<const Coords> data() const { return {coords_.data(), num_data_}; }

  [[nodiscard]] std::vector<PointId> frame_ids() const;

  // Gathers the coordinates of the given points, in order.
  [[nodiscard]] std::vector<Coords> gather(std::span<const PointId> ids) const;

 private:
  int dim_ = 0;
  std::size_t num_data_ = 0;
  std::vector<Coords> coords_;
};

/// Regular simplex of the given circumradius around a center point, in a fixed
/// irregular orientation. In one dimension the segment is slightly off-center.
std::vector<Coords> regular_simplex(int dim, const Coords& center, double circumradius);

/// A frame enclosing the data: regular simplex centered at the centroid with
/// circumradius scale * (bounding-box diameter), snapped to a dyadic grid.
std::vector<Coords> make_frame(int dim, std::span<const Coords> data, double scale);

/// Cloud of data points plus a frame built by make_frame.
PointCloud with_frame(int dim, std::vector<Coords> data, double scale = 1e4);

double bbox_diameter(int dim, std::span<const Coords> pts);

}  // namespace trifilt
