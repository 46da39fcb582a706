#pragma once

#include "trifilt/filtration.hpp"
#include "trifilt/scanner.hpp"

namespace trifilt {

struct PhaseTimes {
  double scan_s = 0;
  double omega_s = 0;
  double total_s = 0;
};

struct PipelineResult {
  SimplexStore incr;
  BirthTable births;
  ScanStats stats;
  PhaseTimes times;
};

/// Incr followed by the birth data of every simplex.
PipelineResult run_pipeline(const PointCloud& cloud, const BiFunction& f, Strategy strategy,
                            const BirthOptions& options = {});

}  // namespace trifilt
