#include "trifilt/triangulation.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace trifilt {
namespace {

// Parity of the permutation taking array a to array b (same elements).
template <std::size_t N>
bool same_parity(const std::array<PointId, N>& a, const std::array<PointId, N>& b, int n) {
  std::array<int, N> perm{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b[static_cast<std::size_t>(j)] == a[static_cast<std::size_t>(i)]) perm[static_cast<std::size_t>(i)] = j;
  int inversions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
  return inversions % 2 == 0;
}

}  // namespace

Triangulation::Triangulation(const PointCloud& cloud) : cloud_(&cloud), dim_(cloud.dim()) {
  if (!cloud.has_frame()) throw Error("triangulation needs a point cloud with a frame");
  reset();
}

Triangulation::Triangulation(Triangulation&&) noexcept = default;
Triangulation& Triangulation::operator=(Triangulation&&) noexcept = default;
Triangulation::~Triangulation() = default;

void Triangulation::reset() {
  cells_.clear();
  alive_.clear();
  free_.clear();
  visit_.clear();
  inside_.clear();
  vertex_cell_.assign(cloud_->size(), -1);
  live_cells_ = 0;
  live_vertices_ = 0;

  Cell root;
  const auto frame = cloud_->frame_ids();
  for (int i = 0; i <= dim_; ++i) {
    root.v[static_cast<std::size_t>(i)] = frame[static_cast<std::size_t>(i)];
    root.n[static_cast<std::size_t>(i)] = -1;
  }
  std::array<Coords, kMaxDim + 1> pts;
  for (int i = 0; i <= dim_; ++i) pts[static_cast<std::size_t>(i)] = (*cloud_)[root.v[static_cast<std::size_t>(i)]];
  const int o = geom::orientation(dim_, std::span<const Coords>(pts.data(), static_cast<std::size_t>(dim_) + 1));
  if (o == 0) throw GeneralPositionError("frame simplex is degenerate");
  if (o < 0) std::swap(root.v[0], root.v[1]);
  hint_ = allocate(root);
  for (PointId f : frame) vertex_cell_[static_cast<std::size_t>(f)] = hint_;
  live_vertices_ = frame.size();
}

Triangulation::CellId Triangulation::allocate(const Cell& c) {
  CellId id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    cells_[static_cast<std::size_t>(id)] = c;
    alive_[static_cast<std::size_t>(id)] = 1;
  } else {
    id = static_cast<CellId>(cells_.size());
    cells_.push_back(c);
    alive_.push_back(1);
    visit_.push_back(0);
    inside_.push_back(0);
  }
  ++live_cells_;
  return id;
}

void Triangulation::release(CellId c) {
  alive_[static_cast<std::size_t>(c)] = 0;
  free_.push_back(c);
  --live_cells_;
}

void Triangulation::next_epoch() {
  if (++epoch_ == std::numeric_limits<std::uint32_t>::max()) {
    std::fill(visit_.begin(), visit_.end(), 0);
    epoch_ = 1;
  }
}

geom::Side Triangulation::side(CellId c, const Coords& q) const {
  std::array<Coords, kMaxDim + 1> pts;
  const Cell& cell = cells_[static_cast<std::size_t>(c)];
  for (int i = 0; i <= dim_; ++i) pts[static_cast<std::size_t>(i)] = (*cloud_)[cell.v[static_cast<std::size_t>(i)]];
  return geom::in_sphere(dim_, std::span<const Coords>(pts.data(), static_cast<std::size_t>(dim_) + 1), q);
}

int Triangulation::index_of(CellId c, PointId v) const {
  const Cell& cell = cells_[static_cast<std::size_t>(c)];
  for (int i = 0; i <= dim_; ++i)
    if (cell.v[static_cast<std::size_t>(i)] == v) return i;
  return -1;
}

int Triangulation::neighbor_index(CellId c, CellId nb) const {
  const Cell& cell = cells_[static_cast<std::size_t>(c)];
  for (int i = 0; i <= dim_; ++i)
    if (cell.n[static_cast<std::size_t>(i)] == nb) return i;
  throw Error("triangulation adjacency is inconsistent");
}

Triangulation::Key Triangulation::facet_key(const Cell& c, int skip) const {
  Key k{};
  int j = 0;
  for (int i = 0; i <= dim_; ++i)
    if (i != skip) k[static_cast<std::size_t>(j++)] = c.v[static_cast<std::size_t>(i)];
  std::sort(k.begin(), k.begin() + j);
  return k;
}

Simplex Triangulation::cell_simplex(CellId c) const {
  const Cell& cell = cells_[static_cast<std::size_t>(c)];
  return Simplex(std::span<const PointId>(cell.v.data(), static_cast<std::size_t>(dim_) + 1));
}

Triangulation::CellId Triangulation::locate(const Coords& q) {
  CellId c = hint_;
  if (c < 0 || !alive_[static_cast<std::size_t>(c)]) {
    c = 0;
    while (!alive_[static_cast<std::size_t>(c)]) ++c;
  }
  const std::size_t step_cap = 4 * live_cells_ + 64;
  std::array<Coords, kMaxDim + 1> pts;
  const auto n = static_cast<std::size_t>(dim_) + 1;
  for (std::size_t steps = 0; steps < step_cap; ++steps) {
    const Cell& cell = cells_[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < n; ++i) pts[i] = (*cloud_)[cell.v[i]];
    const unsigned start = rotate_++ % static_cast<unsigned>(n);
    CellId next = -1;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (start + k) % n;
      const Coords saved = pts[i];
      pts[i] = q;
      const int o = geom::orientation(dim_, std::span<const Coords>(pts.data(), n));
      pts[i] = saved;
      if (o < 0) {
        next = cell.n[i];
        if (next < 0) throw Error("query point lies outside the frame");
        break;
      }
    }
    if (next < 0) {
      hint_ = c;
      return c;
    }
    c = next;
  }
  // The walk did not settle; scan every cell and take the lowest id.
  for (CellId id = 0; id < static_cast<CellId>(cells_.size()); ++id) {
    if (!alive_[static_cast<std::size_t>(id)]) continue;
    const Cell& cell = cells_[static_cast<std::size_t>(id)];
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n; ++j) pts[j] = (*cloud_)[cell.v[j]];
      pts[i] = q;
      ok = geom::orientation(dim_, std::span<const Coords>(pts.data(), n)) >= 0;
    }
    if (ok) {
      hint_ = id;
      return id;
    }
  }
  throw Error("query point lies outside the frame");
}

void Triangulation::link_vertices_of(CellId c) {
  const Cell& cell = cells_[static_cast<std::size_t>(c)];
  for (int i = 0; i <= dim_; ++i) vertex_cell_[static_cast<std::size_t>(cell.v[static_cast<std::size_t>(i)])] = c;
}

void Triangulation::insert(PointId v, std::vector<Simplex>* conflicts) {
  if (v < 0 || static_cast<std::size_t>(v) >= cloud_->size()) throw Error("vertex index out of range");
  if (cloud_->is_frame(v)) throw Error("frame vertices are always present");
  if (contains(v)) throw Error("vertex " + std::to_string(v) + " is already in the triangulation");
  const Coords& q = (*cloud_)[v];

  const CellId start = locate(q);
  const geom::Side s0 = side(start, q);
  if (s0 != geom::Side::Inside)
    throw GeneralPositionError("point " + std::to_string(v) + " is not in general position");

  next_epoch();
  cavity_.clear();
  boundary_.clear();
  cavity_.push_back(start);
  visit_[static_cast<std::size_t>(start)] = epoch_;
  inside_[static_cast<std::size_t>(start)] = 1;
  for (std::size_t k = 0; k < cavity_.size(); ++k) {
    const CellId c = cavity_[k];
    for (int i = 0; i <= dim_; ++i) {
      const CellId nb = cells_[static_cast<std::size_t>(c)].n[static_cast<std::size_t>(i)];
      if (nb < 0) {
        boundary_.push_back({c, i});
        continue;
      }
      const auto nbi = static_cast<std::size_t>(nb);
      if (visit_[nbi] != epoch_) {
        visit_[nbi] = epoch_;
        const geom::Side s = side(nb, q);
        if (s == geom::Side::On)
          throw GeneralPositionError("point " + std::to_string(v) + " lies on a circumsphere");
        inside_[nbi] = s == geom::Side::Inside;
        if (inside_[nbi]) cavity_.push_back(nb);
      }
      if (!inside_[nbi]) boundary_.push_back({c, i});
    }
  }

  if (conflicts)
    for (CellId c : cavity_) conflicts->push_back(cell_simplex(c));

  // Cone from v over every boundary facet of the cavity.
  created_.clear();
  created_pos_.clear();
  for (const auto& [c, i] : boundary_) {
    Cell nc;
    nc.v = cells_[static_cast<std::size_t>(c)].v;
    nc.v[static_cast<std::size_t>(i)] = v;
    nc.n.fill(-1);
    const CellId outer = cells_[static_cast<std::size_t>(c)].n[static_cast<std::size_t>(i)];
    nc.n[static_cast<std::size_t>(i)] = outer;
    const CellId id = allocate(nc);
    if (outer >= 0) {
      const int j = neighbor_index(outer, c);
      cells_[static_cast<std::size_t>(outer)].n[static_cast<std::size_t>(j)] = id;
    }
    created_.push_back(id);
    created_pos_.push_back(i);
  }

  // Glue the new cells to each other along the ridges through v.
  struct Ridge {
    Key key;
    CellId cell;
    int index;
  };
  std::vector<Ridge> ridges;
  ridges.reserve(created_.size() * static_cast<std::size_t>(dim_));
  for (std::size_t k = 0; k < created_.size(); ++k) {
    const Cell& nc = cells_[static_cast<std::size_t>(created_[k])];
    for (int j = 0; j <= dim_; ++j) {
      if (j == created_pos_[k]) continue;
      Key key{};
      int m = 0;
      for (int t = 0; t <= dim_; ++t)
        if (t != j && t != created_pos_[k]) key[static_cast<std::size_t>(m++)] = nc.v[static_cast<std::size_t>(t)];
      std::sort(key.begin(), key.begin() + m);
      ridges.push_back({key, created_[k], j});
    }
  }
  std::sort(ridges.begin(), ridges.end(), [](const Ridge& a, const Ridge& b) { return a.key < b.key; });
  if (ridges.size() % 2 != 0) throw Error("cavity boundary is not closed");
  for (std::size_t k = 0; k < ridges.size(); k += 2) {
    if (ridges[k].key != ridges[k + 1].key) throw Error("cavity boundary is not closed");
    if (k + 2 < ridges.size() && ridges[k + 2].key == ridges[k].key) throw Error("cavity boundary is not a sphere");
    cells_[static_cast<std::size_t>(ridges[k].cell)].n[static_cast<std::size_t>(ridges[k].index)] = ridges[k + 1].cell;
    cells_[static_cast<std::size_t>(ridges[k + 1].cell)].n[static_cast<std::size_t>(ridges[k + 1].index)] =
        ridges[k].cell;
  }

  for (CellId c : cavity_) release(c);
  for (CellId c : created_) link_vertices_of(c);
  ++live_vertices_;
  hint_ = created_.front();
}

void Triangulation::collect_star(PointId v, std::vector<CellId>& out) const {
  out.clear();
  const CellId first = vertex_cell_[static_cast<std::size_t>(v)];
  const_cast<Triangulation*>(this)->next_epoch();
  out.push_back(first);
  visit_[static_cast<std::size_t>(first)] = epoch_;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const CellId c = out[k];
    const int i = index_of(c, v);
    for (int j = 0; j <= dim_; ++j) {
      if (j == i) continue;
      const CellId nb = cells_[static_cast<std::size_t>(c)].n[static_cast<std::size_t>(j)];
      if (nb < 0 || visit_[static_cast<std::size_t>(nb)] == epoch_) continue;
      visit_[static_cast<std::size_t>(nb)] = epoch_;
      out.push_back(nb);
    }
  }
}

std::vector<PointId> Triangulation::neighborhood(PointId v) const {
  if (!contains(v)) throw Error("vertex " + std::to_string(v) + " is not in the triangulation");
  std::vector<CellId> star;
  collect_star(v, star);
  std::vector<PointId> out;
  for (CellId c : star)
    for (int i = 0; i <= dim_; ++i) out.push_back(cells_[static_cast<std::size_t>(c)].v[static_cast<std::size_t>(i)]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Triangulation::remove(PointId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= cloud_->size()) throw Error("vertex index out of range");
  if (cloud_->is_frame(v)) throw Error("frame vertices cannot be removed");
  if (!contains(v)) throw Error("vertex " + std::to_string(v) + " is not in the triangulation");

  std::vector<CellId> star;
  collect_star(v, star);

  struct Link {
    Key key;
    CellId outer;
    int outer_index;
    std::array<PointId, kMaxDim + 1> star_vertices;  // star cell with v
    int v_pos;
  };
  std::vector<Link> links;
  links.reserve(star.size());
  std::vector<PointId> around;
  for (CellId c : star) {
    const Cell& cell = cells_[static_cast<std::size_t>(c)];
    const int i = index_of(c, v);
    const CellId outer = cell.n[static_cast<std::size_t>(i)];
    links.push_back({facet_key(cell, i), outer, outer >= 0 ? neighbor_index(outer, c) : -1, cell.v, i});
    for (int j = 0; j <= dim_; ++j)
      if (j != i) around.push_back(cell.v[static_cast<std::size_t>(j)]);
  }
  std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) { return a.key < b.key; });
  std::sort(around.begin(), around.end());
  around.erase(std::unique(around.begin(), around.end()), around.end());

  if (!local_) local_ = std::make_unique<Triangulation>(*cloud_);
  Triangulation& local = *local_;
  local.reset();
  for (PointId u : around)
    if (!cloud_->is_frame(u)) local.insert(u);

  // For each local facet that matches a link facet, remember which link.
  const auto n = static_cast<std::size_t>(dim_) + 1;
  std::vector<int> link_of(local.cells_.size() * n, -1);
  std::vector<CellId> seeds;
  for (CellId lc = 0; lc < static_cast<CellId>(local.cells_.size()); ++lc) {
    if (!local.alive_[static_cast<std::size_t>(lc)]) continue;
    const Cell& cell = local.cells_[static_cast<std::size_t>(lc)];
    for (int k = 0; k <= dim_; ++k) {
      const Key key = local.facet_key(cell, k);
      auto it = std::lower_bound(links.begin(), links.end(), key,
                                 [](const Link& l, const Key& x) { return l.key < x; });
      if (it == links.end() || it->key != key) continue;
      link_of[static_cast<std::size_t>(lc) * n + static_cast<std::size_t>(k)] = static_cast<int>(it - links.begin());
      // The local cell lies on v's side of the link facet iff replacing v by
      // its apex keeps the star cell's orientation.
      auto probe = it->star_vertices;
      probe[static_cast<std::size_t>(it->v_pos)] = cell.v[static_cast<std::size_t>(k)];
      if (same_parity(probe, cell.v, dim_ + 1)) seeds.push_back(lc);
    }
  }
  if (seeds.empty()) throw Error("vertex removal found no cells to fill the cavity");

  std::vector<CellId> fill;
  std::vector<CellId> local_to_global(local.cells_.size(), -1);
  local.next_epoch();
  for (CellId s : seeds) {
    if (local.visit_[static_cast<std::size_t>(s)] == local.epoch_) continue;
    local.visit_[static_cast<std::size_t>(s)] = local.epoch_;
    fill.push_back(s);
  }
  for (std::size_t k = 0; k < fill.size(); ++k) {
    const CellId lc = fill[k];
    for (int j = 0; j <= dim_; ++j) {
      if (link_of[static_cast<std::size_t>(lc) * n + static_cast<std::size_t>(j)] >= 0) continue;
      const CellId nb = local.cells_[static_cast<std::size_t>(lc)].n[static_cast<std::size_t>(j)];
      if (nb < 0) throw Error("vertex removal escaped the cavity");
      if (local.visit_[static_cast<std::size_t>(nb)] == local.epoch_) continue;
      local.visit_[static_cast<std::size_t>(nb)] = local.epoch_;
      fill.push_back(nb);
    }
  }

  for (CellId c : star) release(c);
  for (CellId lc : fill) {
    Cell nc;
    nc.v = local.cells_[static_cast<std::size_t>(lc)].v;
    nc.n.fill(-1);
    local_to_global[static_cast<std::size_t>(lc)] = allocate(nc);
  }
  std::size_t matched = 0;
  for (CellId lc : fill) {
    const CellId g = local_to_global[static_cast<std::size_t>(lc)];
    Cell& nc = cells_[static_cast<std::size_t>(g)];
    for (int j = 0; j <= dim_; ++j) {
      const int l = link_of[static_cast<std::size_t>(lc) * n + static_cast<std::size_t>(j)];
      if (l >= 0) {
        const Link& link = links[static_cast<std::size_t>(l)];
        nc.n[static_cast<std::size_t>(j)] = link.outer;
        if (link.outer >= 0)
          cells_[static_cast<std::size_t>(link.outer)].n[static_cast<std::size_t>(link.outer_index)] = g;
        ++matched;
      } else {
        const CellId lnb = local.cells_[static_cast<std::size_t>(lc)].n[static_cast<std::size_t>(j)];
        const CellId gnb = local_to_global[static_cast<std::size_t>(lnb)];
        if (gnb < 0) throw Error("vertex removal produced an open cavity fill");
        nc.n[static_cast<std::size_t>(j)] = gnb;
      }
    }
  }
  if (matched != links.size()) throw Error("vertex removal did not close the cavity");

  vertex_cell_[static_cast<std::size_t>(v)] = -1;
  --live_vertices_;
  for (CellId lc : fill) link_vertices_of(local_to_global[static_cast<std::size_t>(lc)]);
  hint_ = local_to_global[static_cast<std::size_t>(fill.front())];
}

std::vector<Simplex> Triangulation::cells() const {
  std::vector<Simplex> out;
  out.reserve(live_cells_);
  for (CellId c = 0; c < static_cast<CellId>(cells_.size()); ++c)
    if (alive_[static_cast<std::size_t>(c)]) out.push_back(cell_simplex(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointId> Triangulation::vertices() const {
  std::vector<PointId> out;
  for (std::size_t p = 0; p < vertex_cell_.size(); ++p)
    if (vertex_cell_[p] >= 0) out.push_back(static_cast<PointId>(p));
  return out;
}

void Triangulation::validate() const {
  const auto n = static_cast<std::size_t>(dim_) + 1;
  std::size_t count = 0;
  for (CellId c = 0; c < static_cast<CellId>(cells_.size()); ++c) {
    if (!alive_[static_cast<std::size_t>(c)]) continue;
    ++count;
    const Cell& cell = cells_[static_cast<std::size_t>(c)];
    std::array<Coords, kMaxDim + 1> pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (!contains(cell.v[i])) throw Error("cell uses a vertex that is not present");
      pts[i] = (*cloud_)[cell.v[i]];
    }
    if (geom::orientation(dim_, std::span<const Coords>(pts.data(), n)) <= 0)
      throw Error("cell " + cell_simplex(c).to_string() + " is not positively oriented");
    for (std::size_t i = 0; i < n; ++i) {
      const CellId nb = cell.n[i];
      const Key key = facet_key(cell, static_cast<int>(i));
      if (nb < 0) {
        for (std::size_t k = 0; k + 1 < n; ++k)
          if (!cloud_->is_frame(key[k])) throw Error("open facet with a data vertex");
        continue;
      }
      if (!alive_[static_cast<std::size_t>(nb)]) throw Error("neighbor link to a dead cell");
      const Cell& other = cells_[static_cast<std::size_t>(nb)];
      int back = -1;
      for (std::size_t j = 0; j < n; ++j)
        if (other.n[j] == c) back = static_cast<int>(j);
      if (back < 0) throw Error("neighbor links are not symmetric");
      if (facet_key(other, back) != key) throw Error("neighbors do not share the facet");
    }
  }
  if (count != live_cells_) throw Error("cell count mismatch");
  for (std::size_t p = 0; p < vertex_cell_.size(); ++p) {
    const CellId c = vertex_cell_[p];
    if (c < 0) continue;
    if (!alive_[static_cast<std::size_t>(c)] || index_of(c, static_cast<PointId>(p)) < 0)
      throw Error("vertex-to-cell link is stale");
  }
}

bool Triangulation::is_delaunay() const {
  const auto verts = vertices();
  for (CellId c = 0; c < static_cast<CellId>(cells_.size()); ++c) {
    if (!alive_[static_cast<std::size_t>(c)]) continue;
    const Simplex s = cell_simplex(c);
    for (PointId w : verts) {
      if (s.contains(w)) continue;
      if (side(c, (*cloud_)[w]) != geom::Side::Outside) return false;
    }
  }
  return true;
}

}  // namespace trifilt
