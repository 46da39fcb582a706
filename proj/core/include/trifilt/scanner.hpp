#pragma once

#include <string_view>
#include <vector>

#include "trifilt/bifunction.hpp"
#include "trifilt/conflict_ledger.hpp"
#include "trifilt/point_cloud.hpp"
#include "trifilt/simplex_store.hpp"

namespace trifilt {

enum class Strategy { Naive, NonLocal, Local };

Strategy parse_strategy(std::string_view name);
std::string_view to_string(Strategy s);

struct ScanStats {
  std::size_t insertions = 0;
  std::size_t removals = 0;
  std::size_t rebuilds = 0;
  std::size_t conflicts_seen = 0;
};

/// All conflict pairs of (cloud, f), found by sweeping every vertical and
/// then every horizontal grid line. Frame cells are kept in the ledger.
ConflictLedger scan(const PointCloud& cloud, const BiFunction& f, Strategy strategy, ScanStats* stats = nullptr);

/// One family of grid lines: axis 0 sweeps vertical lines, axis 1 horizontal.
void scan_lines(const PointCloud& cloud, const BiFunction& f, Strategy strategy, int axis, ConflictLedger& ledger,
                ScanStats* stats = nullptr);

/// Downward closure of the conflict simplices with every frame-incident
/// simplex dropped.
SimplexStore assemble_incr(const ConflictLedger& ledger, const std::vector<ConflictTriple>& triples,
                           const PointCloud& cloud);

/// Full pipeline from points to Incr; inputs with at most d+1 data points are
/// handled by direct enumeration.
SimplexStore compute_incr(const PointCloud& cloud, const BiFunction& f, Strategy strategy,
                          ScanStats* stats = nullptr);

}  // namespace trifilt
