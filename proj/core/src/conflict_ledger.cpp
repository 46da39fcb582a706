#include "trifilt/conflict_ledger.hpp"

#include <algorithm>

namespace trifilt {

bool ConflictLedger::record(const Simplex& cell, PointId x, GridIndex found_at) {
  auto& list = map_[cell];
  const Rank r = f_->rank1(x);
  auto it = std::lower_bound(list.begin(), list.end(), r,
                             [&](const ConflictEntry& e, Rank key) { return f_->rank1(e.vertex) < key; });
  if (it != list.end() && it->vertex == x) return false;
  if (it != list.end()) ++reordered_;
  list.insert(it, ConflictEntry{x, found_at});
  ++pairs_;
  return true;
}

const std::vector<ConflictEntry>* ConflictLedger::find(const Simplex& cell) const {
  auto it = map_.find(cell);
  return it == map_.end() ? nullptr : &it->second;
}

std::vector<std::pair<Simplex, std::vector<PointId>>> ConflictLedger::canonical() const {
  std::vector<std::pair<Simplex, std::vector<PointId>>> out;
  out.reserve(map_.size());
  for (const auto& [cell, list] : map_) {
    std::vector<PointId> vs;
    vs.reserve(list.size());
    for (const auto& e : list) vs.push_back(e.vertex);
    out.emplace_back(cell, std::move(vs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ConflictLedger::merge(const ConflictLedger& other) {
  other.for_each([&](const Simplex& cell, const std::vector<ConflictEntry>& list) {
    for (const auto& e : list) record(cell, e.vertex, e.found_at);
  });
}

std::vector<ConflictTriple> derive_triples(const ConflictLedger& ledger) {
  std::vector<ConflictTriple> out;
  ledger.for_each([&](const Simplex& cell, const std::vector<ConflictEntry>& list) {
    for (std::size_t i = 0; i + 1 < list.size(); ++i) out.push_back({cell, list[i].vertex, list[i + 1].vertex});
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace trifilt
