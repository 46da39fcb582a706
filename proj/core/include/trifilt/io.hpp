#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "trifilt/bifunction.hpp"
#include "trifilt/filtration.hpp"
#include "trifilt/point_cloud.hpp"

namespace trifilt::io {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct InputData {
  int dim = 0;
  std::vector<Coords> points;
  std::vector<Value2> values;
};

struct ParseOptions {
  std::optional<int> dim;  // forced dimension
  // Rows carry one function value delta and gamma = (-delta, delta).
  bool interlevel = false;
};

InputData parse_input(std::istream& in, const ParseOptions& options = {});
InputData read_input_file(const std::string& path, const ParseOptions& options = {});
void write_input(std::ostream& out, const InputData& data);

struct PrepareConfig {
  std::uint64_t seed = 0;
  double perturb = 1e-9;  // relative to the bounding-box diameter; 0 disables jitter
  double frame_scale = 1e4;
};

struct Prepared {
  PointCloud cloud;
  BiFunction f;
};

/// Jitters and snaps the coordinates, adds the enclosing frame and builds
/// the tie-broken orders. Deterministic per seed.
Prepared prepare(const InputData& input, const PrepareConfig& config = {});

// Seeded uniform doubles in [0, 1), identical on every platform.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next();
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

struct Dataset {
  int dim = 0;
  std::vector<Coords> points;
};

std::vector<std::string_view> dataset_names();
Dataset generate_dataset(std::string_view name, std::size_t n, std::uint64_t seed);

std::vector<std::string_view> function_names();
std::vector<double> compute_function(const Dataset& data, std::string_view kind, std::uint64_t seed);

// scc2020 text format.
struct SccGenerator {
  std::vector<double> values;
  std::vector<std::size_t> facets;
};

struct SccFile {
  int num_parameters = 0;
  std::vector<std::vector<SccGenerator>> blocks;  // descending dimension
};

void write_scc2020(std::ostream& out, const FiltrationOutput& filtration, const std::vector<std::string>& comments = {});
SccFile read_scc2020(std::istream& in);

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace trifilt::io
