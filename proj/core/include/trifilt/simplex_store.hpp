#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trifilt/types.hpp"

namespace trifilt {

// A simplicial complex stored as one sorted array per dimension, with a
// compressed index from each simplex to its cofacets.
class SimplexStore {
 public:
  using Index = std::uint32_t;

  SimplexStore() = default;

  /// Downward closure of the given simplices.
  static SimplexStore closure_of(std::vector<Simplex> generators);

  [[nodiscard]] int max_dim() const { return static_cast<int>(levels_.size()) - 1; }
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] bool empty() const { return levels_.empty(); }
  [[nodiscard]] std::span<const Simplex> level(int dim) const;
  [[nodiscard]] const Simplex& at(int dim, Index i) const { return levels_[static_cast<std::size_t>(dim)][i]; }

  [[nodiscard]] std::optional<Index> find(const Simplex& s) const;
  [[nodiscard]] bool contains(const Simplex& s) const { return find(s).has_value(); }

  // Indices into level(dim + 1).
  [[nodiscard]] std::span<const Index> cofacets(int dim, Index i) const;
  // Indices into level(dim - 1), in the order of Simplex::facet(k).
  [[nodiscard]] std::vector<Index> facets(int dim, Index i) const;

  // Every simplex, by dimension and then lexicographically.
  [[nodiscard]] std::vector<Simplex> all() const;

 private:
  void build_cofacets();

  std::vector<std::vector<Simplex>> levels_;
  std::vector<std::vector<Index>> cofacet_offsets_;
  std::vector<std::vector<Index>> cofacet_ids_;
};

}  // namespace trifilt
