#include "trifilt/pipeline.hpp"

#include <chrono>

namespace trifilt {

PipelineResult run_pipeline(const PointCloud& cloud, const BiFunction& f, Strategy strategy,
                            const BirthOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto seconds = [](clock::duration d) { return std::chrono::duration<double>(d).count(); };
  PipelineResult r;
  const auto t0 = clock::now();
  r.incr = compute_incr(cloud, f, strategy, &r.stats);
  const auto t1 = clock::now();
  r.births = compute_births(r.incr, cloud, f, options);
  const auto t2 = clock::now();
  r.times = {seconds(t1 - t0), seconds(t2 - t1), seconds(t2 - t0)};
  return r;
}

}  // namespace trifilt
