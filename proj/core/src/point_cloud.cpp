#include "trifilt/point_cloud.hpp"

#include <cmath>
#include <numeric>

#include "trifilt/predicates.hpp"

namespace trifilt {

std::string Simplex::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v_[i]);
  }
  s += '}';
  return s;
}

PointCloud::PointCloud(int dim, std::vector<Coords> data, std::vector<Coords> frame) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw Error("dimension must be 1, 2 or 3");
  if (!frame.empty() && frame.size() != static_cast<std::size_t>(dim) + 1)
    throw Error("frame must have exactly d+1 points");
  num_data_ = data.size();
  coords_ = std::move(data);
  coords_.insert(coords_.end(), frame.begin(), frame.end());
  for (auto& c : coords_) {
    for (int k = 0; k < kMaxDim; ++k) {
      if (k >= dim) c[k] = 0.0;
      if (!std::isfinite(c[k])) throw Error("non-finite coordinate");
    }
  }
}

std::vector<PointId> PointCloud::frame_ids() const {
  std::vector<PointId> ids(size() - num_data_);
  std::iota(ids.begin(), ids.end(), static_cast<PointId>(num_data_));
  return ids;
}

std::vector<Coords> PointCloud::gather(std::span<const PointId> ids) const {
  std::vector<Coords> out;
  out.reserve(ids.size());
  for (PointId p : ids) out.push_back((*this)[p]);
  return out;
}

double bbox_diameter(int dim, std::span<const Coords> pts) {
  if (pts.empty()) return 0.0;
  double sq = 0;
  for (int k = 0; k < dim; ++k) {
    double lo = pts[0][k], hi = pts[0][k];
    for (const auto& p : pts) {
      lo = std::min(lo, p[k]);
      hi = std::max(hi, p[k]);
    }
    sq += (hi - lo) * (hi - lo);
  }
  return std::sqrt(sq);
}

std::vector<Coords> regular_simplex(int dim, const Coords& center, double circumradius) {
  std::vector<Coords> dirs;
  switch (dim) {
    case 1:
      dirs = {{-1, 0, 0}, {1, 0, 0}};
      break;
    case 2: {
      const double h = std::sqrt(3.0) / 2;
      dirs = {{0, 1, 0}, {-h, -0.5, 0}, {h, -0.5, 0}};
      break;
    }
    case 3: {
      const double s = 1 / std::sqrt(3.0);
      dirs = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
      break;
    }
    default:
      throw Error("dimension must be 1, 2 or 3");
  }
  // A fixed, irregular orientation so that symmetric inputs (grids, points
  // mirrored about the centroid) do not become cospherical with frame vertices.
  const double a = 0.3947, b = 0.7213;
  const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  for (auto& d : dirs) {
    if (dim == 1) {
      d[0] = d[0] > 0 ? 1.1377 : -0.9281;
    } else if (dim == 2) {
      d = {ca * d[0] - sa * d[1], sa * d[0] + ca * d[1], 0};
    } else {
      const Coords r{ca * d[0] - sa * d[1], sa * d[0] + ca * d[1], d[2]};
      d = {r[0], cb * r[1] - sb * r[2], sb * r[1] + cb * r[2]};
    }
    for (int k = 0; k < dim; ++k) d[k] = center[k] + circumradius * d[k];
  }
  return dirs;
}

std::vector<Coords> make_frame(int dim, std::span<const Coords> data, double scale) {
  if (!(scale > 1)) throw Error("frame scale must exceed 1");
  Coords centroid{0, 0, 0};
  for (const auto& p : data)
    for (int k = 0; k < dim; ++k) centroid[k] += p[k];
  if (!data.empty())
    for (int k = 0; k < dim; ++k) centroid[k] /= static_cast<double>(data.size());

  double diam = bbox_diameter(dim, data);
  if (!(diam > 0)) diam = 1.0;
  const double radius = scale * diam;
  auto frame = regular_simplex(dim, centroid, radius);

  // A coarse dyadic grid keeps the frame coordinates short.
  const double quantum = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(radius))) - 30);
  for (auto& f : frame)
    for (int k = 0; k < dim; ++k) f[k] = std::round(f[k] / quantum) * quantum;

  // Every data point must lie strictly inside the frame simplex.
  std::vector<Coords> cell(frame.begin(), frame.end());
  if (geom::orientation(dim, cell) < 0) std::swap(cell[0], cell[1]);
  for (const auto& p : data) {
    for (int i = 0; i <= dim; ++i) {
      auto probe = cell;
      probe[static_cast<std::size_t>(i)] = p;
      if (geom::orientation(dim, probe) <= 0) throw Error("frame does not enclose all data points");
    }
  }
  return frame;
}

PointCloud with_frame(int dim, std::vector<Coords> data, double scale) {
  auto frame = make_frame(dim, data, scale);
  return PointCloud(dim, std::move(data), std::move(frame));
}

}  // namespace trifilt
