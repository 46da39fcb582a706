#include "trifilt/bench.hpp"

#include <sys/resource.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "trifilt/io.hpp"
#include "trifilt/pipeline.hpp"

namespace trifilt::bench {

namespace {

BenchRow run_cell(const BenchConfig& config, const std::string& dataset, const std::string& function,
                  std::size_t n) {
  const auto ds = io::generate_dataset(dataset, n, config.seed);
  const auto delta = io::compute_function(ds, function, config.seed);
  io::InputData input{ds.dim, ds.points, {}};
  if (config.interlevel) {
    input.values = interlevel(delta);
  } else {
    for (std::size_t i = 0; i < n; ++i) input.values.push_back({delta[i], ds.points[i][static_cast<std::size_t>(ds.dim) - 1]});
  }
  const auto prepared = io::prepare(input, {.seed = config.seed});
  const auto result = run_pipeline(prepared.cloud, prepared.f, config.strategy);
  return {dataset, function, n, result.incr.size(), result.times.scan_s, result.times.omega_s, result.times.total_s};
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  struct Job {
    const std::string* dataset;
    const std::string* function;
    std::size_t n;
  };
  std::vector<Job> jobs;
  for (const auto& d : config.datasets)
    for (const auto& fn : config.functions)
      for (auto n : config.sizes) jobs.push_back({&d, &fn, n});
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j; (j = next++) < jobs.size();)
      rows[j] = run_cell(config, *jobs[j].dataset, *jobs[j].function, jobs[j].n);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return rows;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-12));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(n);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<Slope> fit_slopes(std::span<const BenchRow> rows) {
  std::map<std::pair<std::string, std::string>, std::vector<const BenchRow*>> groups;
  for (const auto& r : rows) groups[{r.dataset, r.function}].push_back(&r);
  std::vector<Slope> out;
  for (const auto& [key, list] : groups) {
    std::vector<double> n, size, time;
    for (const auto* r : list) {
      n.push_back(static_cast<double>(r->n));
      size.push_back(static_cast<double>(r->incr_size));
      time.push_back(r->total_s);
    }
    out.push_back({key.first, key.second, log_log_slope(n, size), log_log_slope(n, time)});
  }
  return out;
}

std::optional<long> peak_rss_kb() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return std::nullopt;
  return usage.ru_maxrss;
}

unsigned threads_from_env() {
  const char* v = std::getenv("TRIFILT_THREADS");
  if (!v) return 1;
  const long n = std::strtol(v, nullptr, 10);
  return n > 0 ? static_cast<unsigned>(n) : 1u;
}

void write_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "dataset,function,n,incr_size,scan_s,omega_s,total_s\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.function << ',' << r.n << ',' << r.incr_size << ',' << io::format_double(r.scan_s)
        << ',' << io::format_double(r.omega_s) << ',' << io::format_double(r.total_s) << '\n';
  }
  if (auto kb = peak_rss_kb()) out << "# peak_rss_kb " << *kb << '\n';
  for (const auto& s : fit_slopes(rows))
    out << "# slope " << s.dataset << ',' << s.function << " incr_size " << io::format_double(s.size_slope)
        << " total_s " << io::format_double(s.time_slope) << '\n';
}

}  // namespace trifilt::bench
