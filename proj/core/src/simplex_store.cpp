#include "trifilt/simplex_store.hpp"

#include <algorithm>

namespace trifilt {

SimplexStore SimplexStore::closure_of(std::vector<Simplex> generators) {
  SimplexStore store;
  std::erase_if(generators, [](const Simplex& s) { return s.empty(); });
  if (generators.empty()) return store;
  int top = 0;
  for (const auto& s : generators) top = std::max(top, s.dim());
  std::vector<std::vector<Simplex>> by_dim(static_cast<std::size_t>(top) + 1);
  for (auto& s : generators) by_dim[static_cast<std::size_t>(s.dim())].push_back(s);
  generators.clear();
  generators.shrink_to_fit();

  store.levels_.resize(static_cast<std::size_t>(top) + 1);
  for (int k = top; k >= 0; --k) {
    auto& level = by_dim[static_cast<std::size_t>(k)];
    if (k < top) {
      const auto& above = store.levels_[static_cast<std::size_t>(k) + 1];
      level.reserve(level.size() + above.size() * (static_cast<std::size_t>(k) + 2));
      for (const auto& s : above)
        for (std::size_t i = 0; i < s.size(); ++i) level.push_back(s.facet(i));
    }
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    level.shrink_to_fit();
    store.levels_[static_cast<std::size_t>(k)] = std::move(level);
  }
  store.build_cofacets();
  return store;
}

void SimplexStore::build_cofacets() {
  const std::size_t nlev = levels_.size();
  cofacet_offsets_.assign(nlev, {});
  cofacet_ids_.assign(nlev, {});
  for (std::size_t k = 0; k < nlev; ++k) {
    auto& offsets = cofacet_offsets_[k];
    offsets.assign(levels_[k].size() + 1, 0);
    if (k + 1 >= nlev) continue;
    const auto& above = levels_[k + 1];
    std::vector<Index> facet_of;
    facet_of.reserve(above.size() * (k + 2));
    for (const auto& s : above) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        const Index f = *find(s.facet(i));
        facet_of.push_back(f);
        ++offsets[f + 1];
      }
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    auto& ids = cofacet_ids_[k];
    ids.resize(facet_of.size());
    std::vector<Index> fill(offsets.begin(), offsets.end() - 1);
    std::size_t pos = 0;
    for (Index j = 0; j < above.size(); ++j)
      for (std::size_t i = 0; i < k + 2; ++i) ids[fill[facet_of[pos++]]++] = j;
  }
}

std::size_t SimplexStore::size() const {
  std::size_t n = 0;
  for (const auto& l : levels_) n += l.size();
  return n;
}

std::span<const Simplex> SimplexStore::level(int dim) const {
  if (dim < 0 || dim > max_dim()) return {};
  return levels_[static_cast<std::size_t>(dim)];
}

std::optional<SimplexStore::Index> SimplexStore::find(const Simplex& s) const {
  const int d = s.dim();
  if (d < 0 || d > max_dim()) return std::nullopt;
  const auto& l = levels_[static_cast<std::size_t>(d)];
  auto it = std::lower_bound(l.begin(), l.end(), s);
  if (it == l.end() || *it != s) return std::nullopt;
  return static_cast<Index>(it - l.begin());
}

std::span<const SimplexStore::Index> SimplexStore::cofacets(int dim, Index i) const {
  const auto& off = cofacet_offsets_[static_cast<std::size_t>(dim)];
  const auto& ids = cofacet_ids_[static_cast<std::size_t>(dim)];
  if (ids.empty()) return {};
  return std::span<const Index>(ids.data() + off[i], off[i + 1] - off[i]);
}

std::vector<SimplexStore::Index> SimplexStore::facets(int dim, Index i) const {
  std::vector<Index> out;
  if (dim == 0) return out;
  const Simplex& s = at(dim, i);
  out.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) out.push_back(*find(s.facet(k)));
  return out;
}

std::vector<Simplex> SimplexStore::all() const {
  std::vector<Simplex> out;
  out.reserve(size());
  for (const auto& l : levels_) out.insert(out.end(), l.begin(), l.end());
  return out;
}

}  // namespace trifilt
