#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trifilt/scanner.hpp"

namespace trifilt::bench {

struct BenchConfig {
  std::vector<std::string> datasets{"circle"};
  std::vector<std::string> functions{"height"};
  std::vector<std::size_t> sizes{100, 200, 400, 800};
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::Local;
  bool interlevel = true;  // gamma = (-delta, delta); otherwise (delta, height)
  unsigned threads = 1;    // concurrent cells
};

struct BenchRow {
  std::string dataset;
  std::string function;
  std::size_t n = 0;
  std::size_t incr_size = 0;
  double scan_s = 0;
  double omega_s = 0;
  double total_s = 0;
};

struct Slope {
  std::string dataset;
  std::string function;
  double size_slope = 0;
  double time_slope = 0;
};

std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Least-squares slope of log y against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

std::vector<Slope> fit_slopes(std::span<const BenchRow> rows);

/// Peak resident set size of this process in kilobytes, if known.
std::optional<long> peak_rss_kb();

/// Bench worker count from TRIFILT_THREADS, defaulting to 1.
unsigned threads_from_env();

void write_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace trifilt::bench
