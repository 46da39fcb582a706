#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "trifilt/point_cloud.hpp"
#include "trifilt/predicates.hpp"
#include "trifilt/types.hpp"

namespace trifilt {

// Delaunay triangulation of the frame plus a changing subset of data points.
//
// Cells are stored with positive orientation. Neighbor i of a cell is the
// cell across the facet opposite vertex i, or -1 on the frame boundary.
class Triangulation {
 public:
  using CellId = std::int32_t;

  explicit Triangulation(const PointCloud& cloud);
  Triangulation(Triangulation&&) noexcept;
  Triangulation& operator=(Triangulation&&) noexcept;
  Triangulation(const Triangulation&) = delete;
  Triangulation& operator=(const Triangulation&) = delete;
  ~Triangulation();

  // Back to the single frame cell.
  void reset();

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const PointCloud& cloud() const { return *cloud_; }
  [[nodiscard]] bool contains(PointId v) const { return vertex_cell_[static_cast<std::size_t>(v)] >= 0; }
  [[nodiscard]] std::size_t num_cells() const { return live_cells_; }
  [[nodiscard]] std::size_t num_vertices() const { return live_vertices_; }

  // A cell whose closed simplex contains q. Throws if q is outside the frame.
  CellId locate(const Coords& q);
  [[nodiscard]] Simplex cell_simplex(CellId c) const;

  // Bowyer-Watson insertion. When `conflicts` is given, the removed cells are
  // appended to it (each one is a BW-conflict with v).
  void insert(PointId v, std::vector<Simplex>* conflicts = nullptr);

  // Deletes v and refills its star from the Delaunay triangulation of its
  // neighbors.
  void remove(PointId v);

  // Vertices sharing an edge with v, plus v itself; sorted.
  [[nodiscard]] std::vector<PointId> neighborhood(PointId v) const;

  [[nodiscard]] std::vector<Simplex> cells() const;
  [[nodiscard]] std::vector<PointId> vertices() const;

  // Throws Error describing the first broken structural invariant
  // (orientation, facet pairing, vertex-to-cell links).
  void validate() const;
  // Brute-force empty-circumsphere check over all cells and vertices.
  [[nodiscard]] bool is_delaunay() const;

 private:
  struct Cell {
    std::array<PointId, kMaxDim + 1> v{};
    std::array<CellId, kMaxDim + 1> n{};
  };
  struct FacetRef {
    CellId cell;
    int index;
  };
  using Key = std::array<PointId, kMaxDim>;

  CellId allocate(const Cell& c);
  void release(CellId c);
  void next_epoch();
  [[nodiscard]] geom::Side side(CellId c, const Coords& q) const;
  [[nodiscard]] int index_of(CellId c, PointId v) const;
  [[nodiscard]] int neighbor_index(CellId c, CellId nb) const;
  [[nodiscard]] Key facet_key(const Cell& c, int skip) const;
  void collect_star(PointId v, std::vector<CellId>& out) const;
  void link_vertices_of(CellId c);

  const PointCloud* cloud_;
  int dim_;
  std::vector<Cell> cells_;
  std::vector<char> alive_;
  std::vector<CellId> free_;
  std::vector<CellId> vertex_cell_;
  std::size_t live_cells_ = 0;
  std::size_t live_vertices_ = 0;
  CellId hint_ = -1;
  unsigned rotate_ = 0;

  mutable std::vector<std::uint32_t> visit_;
  mutable std::uint32_t epoch_ = 0;
  std::vector<char> inside_;

  // Scratch buffers reused across calls.
  std::vector<CellId> cavity_;
  std::vector<FacetRef> boundary_;
  std::vector<CellId> created_;
  std::vector<int> created_pos_;
  std::unique_ptr<Triangulation> local_;
};

}  // namespace trifilt
