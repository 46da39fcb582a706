#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trifilt/bifunction.hpp"
#include "trifilt/point_cloud.hpp"

namespace trifilt::verify {

struct EquivalenceReport {
  std::size_t samples = 0;
  std::vector<std::string> mismatches;
};

/// Compares Betti numbers of both trifiltrations at sampled (p, r) with
/// those of the Cech complex of X_p at radius r, in every degree up to d.
EquivalenceReport verify_equivalence(const PointCloud& cloud, const BiFunction& f, std::size_t sample_count,
                                     std::uint64_t seed);

struct Check {
  std::string name;
  bool ok = true;
  bool skipped = false;
  std::string detail;
};

struct VerifyOptions {
  std::size_t max_points = 12;  // larger inputs are truncated to their first points
  std::size_t samples = 50;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  std::size_t points_used = 0;
  std::vector<Check> checks;
  [[nodiscard]] std::size_t mismatches() const;
};

/// Runs every oracle comparison on the (possibly truncated) instance.
VerifyReport run_checks(const PointCloud& cloud, const BiFunction& f, const VerifyOptions& options = {});

/// The first `count` data points of the cloud with the same frame and values.
std::pair<PointCloud, BiFunction> truncate(const PointCloud& cloud, const BiFunction& f, std::size_t count);

}  // namespace trifilt::verify
