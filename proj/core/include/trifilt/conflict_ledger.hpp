#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "trifilt/bifunction.hpp"
#include "trifilt/types.hpp"

namespace trifilt {

struct ConflictEntry {
  PointId vertex;
  GridIndex found_at;  // first grid point where the pair was seen
};

// (cell, x, y) with x before y in the first order.
struct ConflictTriple {
  Simplex cell;
  PointId x;
  PointId y;
  friend auto operator<=>(const ConflictTriple&, const ConflictTriple&) = default;
};

// For every d-cell that ever conflicted, its conflict vertices sorted by the
// first rank. Recording the same pair twice is a no-op.
class ConflictLedger {
 public:
  explicit ConflictLedger(const BiFunction& f) : f_(&f) {}

  // Returns true if the pair was new.
  bool record(const Simplex& cell, PointId x, GridIndex found_at);

  [[nodiscard]] std::size_t num_cells() const { return map_.size(); }
  [[nodiscard]] std::size_t num_pairs() const { return pairs_; }
  // Insertions that did not land at the end of their list.
  [[nodiscard]] std::size_t reordered_insertions() const { return reordered_; }

  [[nodiscard]] const std::vector<ConflictEntry>* find(const Simplex& cell) const;

  // (cell, vertex list) sorted by cell.
  [[nodiscard]] std::vector<std::pair<Simplex, std::vector<PointId>>> canonical() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [cell, list] : map_) fn(cell, list);
  }

  void merge(const ConflictLedger& other);

  friend bool operator==(const ConflictLedger& a, const ConflictLedger& b) { return a.canonical() == b.canonical(); }

 private:
  const BiFunction* f_;
  std::unordered_map<Simplex, std::vector<ConflictEntry>, SimplexHash> map_;
  std::size_t pairs_ = 0;
  std::size_t reordered_ = 0;
};

/// Consecutive pairs of every conflict list, sorted.
std::vector<ConflictTriple> derive_triples(const ConflictLedger& ledger);

}  // namespace trifilt
