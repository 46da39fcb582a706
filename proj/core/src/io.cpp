#include "trifilt/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace trifilt::io {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<double> parse_double(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_comment_or_blank(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

}  // namespace

InputData parse_input(std::istream& in, const ParseOptions& options) {
  const std::size_t value_cols = options.interlevel ? 1 : 2;
  InputData data;
  std::optional<std::size_t> columns;
  if (options.dim) {
    if (*options.dim < 1 || *options.dim > kMaxDim) throw ParseError(0, 0, "dimension must be 1, 2 or 3");
    columns = static_cast<std::size_t>(*options.dim) + value_cols;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const auto toks = tokens_of(line);
    if (!columns) {
      columns = toks.size();
      const auto d = static_cast<int>(toks.size()) - static_cast<int>(value_cols);
      if (d < 1 || d > kMaxDim)
        throw ParseError(lineno, 1, "expected 1 to 3 coordinates plus " + std::to_string(value_cols) +
                                        " function value(s), found " + std::to_string(toks.size()) + " columns");
    }
    if (toks.size() != *columns)
      throw ParseError(lineno, std::min(toks.size(), *columns) + 1,
                       "expected " + std::to_string(*columns) + " columns, found " + std::to_string(toks.size()));
    std::array<double, kMaxDim + 2> row{};
    for (std::size_t c = 0; c < toks.size(); ++c) {
      auto v = parse_double(toks[c]);
      if (!v) throw ParseError(lineno, c + 1, "not a finite number: '" + std::string(toks[c]) + "'");
      row[c] = *v;
    }
    const std::size_t d = *columns - value_cols;
    Coords p{0, 0, 0};
    std::copy_n(row.begin(), d, p.begin());
    data.points.push_back(p);
    if (options.interlevel)
      data.values.push_back({-row[d], row[d]});
    else
      data.values.push_back({row[d], row[d + 1]});
  }
  if (data.points.empty()) throw ParseError(lineno, 0, "input contains no points");
  data.dim = static_cast<int>(*columns - value_cols);
  return data;
}

InputData read_input_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_input(in, options);
}

std::string format_double(double x) {
  if (x == 0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf.data(), ptr);
}

void write_input(std::ostream& out, const InputData& data) {
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    for (int k = 0; k < data.dim; ++k) out << format_double(data.points[i][static_cast<std::size_t>(k)]) << ' ';
    out << format_double(data.values[i][0]) << ' ' << format_double(data.values[i][1]) << '\n';
  }
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Prepared prepare(const InputData& input, const PrepareConfig& config) {
  if (input.points.size() != input.values.size()) throw Error("point and value counts differ");
  if (!(config.perturb >= 0)) throw Error("perturbation magnitude must be non-negative");
  const int dim = input.dim;
  std::vector<Coords> pts = input.points;
  if (config.perturb > 0) {
    double diam = bbox_diameter(dim, pts);
    if (!(diam > 0)) diam = 1.0;
    const double amplitude = config.perturb * diam;
    const double quantum = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(diam))) - 40);
    UniformSource rng(config.seed);
    for (auto& p : pts) {
      for (int k = 0; k < dim; ++k) {
        const double moved = p[static_cast<std::size_t>(k)] + rng.next(-amplitude, amplitude);
        p[static_cast<std::size_t>(k)] = std::round(moved / quantum) * quantum;
      }
    }
  }
  auto frame = make_frame(dim, pts, config.frame_scale);
  Prepared out{PointCloud(dim, std::move(pts), std::move(frame)),
               with_frame_values(input.values, static_cast<std::size_t>(dim) + 1)};
  return out;
}

std::vector<std::string_view> dataset_names() { return {"circle", "square", "sphere", "torus", "cube"}; }

Dataset generate_dataset(std::string_view name, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error("dataset size must be positive");
  constexpr double two_pi = 2 * std::numbers::pi;
  UniformSource rng(seed);
  Dataset ds;
  std::function<Coords()> sample;
  if (name == "circle") {
    ds.dim = 2;
    sample = [&] {
      const double t = rng.next(0, two_pi);
      return Coords{std::cos(t), std::sin(t), 0};
    };
  } else if (name == "square") {
    ds.dim = 2;
    sample = [&] { return Coords{rng.next(), rng.next(), 0}; };
  } else if (name == "sphere") {
    ds.dim = 3;
    sample = [&] {
      for (;;) {
        const Coords p{rng.next(-1, 1), rng.next(-1, 1), rng.next(-1, 1)};
        const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        if (r2 > 1e-6 && r2 <= 1) {
          const double r = std::sqrt(r2);
          return Coords{p[0] / r, p[1] / r, p[2] / r};
        }
      }
    };
  } else if (name == "torus") {
    ds.dim = 3;
    constexpr double big = 2, small = 1;
    sample = [&] {
      // Area-uniform: accept the tube angle with probability proportional
      // to the local ring radius.
      for (;;) {
        const double u = rng.next(0, two_pi), v = rng.next(0, two_pi);
        const double ring = big + small * std::cos(v);
        if (rng.next() * (big + small) <= ring)
          return Coords{ring * std::cos(u), ring * std::sin(u), small * std::sin(v)};
      }
    };
  } else if (name == "cube") {
    ds.dim = 3;
    sample = [&] { return Coords{rng.next(), rng.next(), rng.next()}; };
  } else {
    throw Error("unknown dataset '" + std::string(name) + "'");
  }
  const auto noise = static_cast<std::size_t>(std::lround(0.05 * static_cast<double>(n)));
  const std::size_t clean = n - noise;
  for (std::size_t i = 0; i < clean; ++i) ds.points.push_back(sample());
  Coords lo{0, 0, 0}, hi{0, 0, 0};
  if (clean > 0) {
    lo = hi = ds.points.front();
    for (const auto& p : ds.points)
      for (int k = 0; k < ds.dim; ++k) {
        lo[static_cast<std::size_t>(k)] = std::min(lo[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k)]);
        hi[static_cast<std::size_t>(k)] = std::max(hi[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k)]);
      }
  }
  for (std::size_t i = 0; i < noise; ++i) {
    Coords p{0, 0, 0};
    for (int k = 0; k < ds.dim; ++k)
      p[static_cast<std::size_t>(k)] = rng.next(lo[static_cast<std::size_t>(k)], hi[static_cast<std::size_t>(k)]);
    ds.points.push_back(p);
  }
  return ds;
}

std::vector<std::string_view> function_names() { return {"codensity", "coeccentricity", "height", "random"}; }

namespace {

double distance(int dim, const Coords& a, const Coords& b) {
  double s = 0;
  for (int k = 0; k < dim; ++k) {
    const double t = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)];
    s += t * t;
  }
  return std::sqrt(s);
}

}  // namespace

std::vector<double> compute_function(const Dataset& data, std::string_view kind, std::uint64_t seed) {
  const auto& pts = data.points;
  const std::size_t n = pts.size();
  if (n == 0) throw Error("function of an empty point set");
  std::vector<double> out(n, 0.0);
  if (kind == "height") {
    for (std::size_t i = 0; i < n; ++i) out[i] = pts[i][static_cast<std::size_t>(data.dim) - 1];
  } else if (kind == "random") {
    UniformSource rng(seed);
    for (auto& v : out) v = rng.next();
  } else if (kind == "coeccentricity") {
    if (n < 2) throw Error("coeccentricity needs at least two points");
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += distance(data.dim, pts[i], pts[j]);
      out[i] = -s / static_cast<double>(n);
    }
  } else if (kind == "codensity") {
    if (n < 2) throw Error("codensity needs at least two points");
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = distance(data.dim, pts[i], pts[j]);
        if (d > 0) dists.push_back(d);
      }
    if (dists.empty()) throw Error("codensity needs two distinct points");
    // Nearest-rank 0.1th percentile.
    const auto rank = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(0.001 * static_cast<double>(dists.size()))));
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(rank - 1), dists.end());
    const double bw = dists[rank - 1];
    const double inv = 1.0 / (bw * bw);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = distance(data.dim, pts[i], pts[j]);
        s += std::exp(-d * d * inv);
      }
      out[i] = -s;
    }
  } else {
    throw Error("unknown function '" + std::string(kind) + "'");
  }
  return out;
}

void write_scc2020(std::ostream& out, const FiltrationOutput& filtration, const std::vector<std::string>& comments) {
  out << "scc2020\n";
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "3\n";
  for (std::size_t b = 0; b < filtration.blocks.size(); ++b) out << (b ? " " : "") << filtration.blocks[b].size();
  out << '\n';
  std::string line;
  std::vector<std::size_t> facets;
  for (std::size_t b = 0; b < filtration.blocks.size(); ++b) {
    const auto& block = filtration.blocks[b];
    const auto* lower = b + 1 < filtration.blocks.size() ? &filtration.blocks[b + 1] : nullptr;
    for (const auto& rec : block) {
      line.clear();
      for (std::size_t k = 0; k < 3; ++k) {
        if (k) line += ' ';
        line += format_double(rec.values[k]);
      }
      line += " ;";
      if (lower && rec.simplex.size() > 1) {
        facets.clear();
        for (std::size_t i = 0; i < rec.simplex.size(); ++i) {
          const Simplex f = rec.simplex.facet(i);
          auto it = std::lower_bound(lower->begin(), lower->end(), f,
                                     [](const FiltrationRecord& r, const Simplex& s) { return r.simplex < s; });
          if (it == lower->end() || it->simplex != f) throw Error("filtration is missing facet " + f.to_string());
          facets.push_back(static_cast<std::size_t>(it - lower->begin()));
        }
        std::sort(facets.begin(), facets.end());
        for (auto f : facets) {
          line += ' ';
          line += std::to_string(f);
        }
      }
      line += '\n';
      out << line;
    }
  }
  if (!out) throw Error("failed to write scc2020 output");
}

SccFile read_scc2020(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::optional<std::string> {
    while (std::getline(in, line)) {
      ++lineno;
      if (!is_comment_or_blank(line)) return line;
    }
    return std::nullopt;
  };
  auto header = next_line();
  if (!header || tokens_of(*header).size() != 1 || tokens_of(*header)[0] != "scc2020")
    throw ParseError(lineno, 1, "missing scc2020 header");
  SccFile file;
  auto params = next_line();
  if (!params) throw ParseError(lineno, 1, "missing parameter count");
  {
    auto v = parse_double(tokens_of(*params).at(0));
    if (!v || *v < 1) throw ParseError(lineno, 1, "bad parameter count");
    file.num_parameters = static_cast<int>(*v);
  }
  auto sizes_line = next_line();
  if (!sizes_line) throw ParseError(lineno, 1, "missing block sizes");
  std::vector<std::size_t> sizes;
  for (auto tok : tokens_of(*sizes_line)) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError(lineno, sizes.size() + 1, "bad block size");
    sizes.push_back(v);
  }
  for (std::size_t size : sizes) {
    auto& block = file.blocks.emplace_back();
    for (std::size_t i = 0; i < size; ++i) {
      auto l = next_line();
      if (!l) throw ParseError(lineno, 1, "unexpected end of file");
      const auto toks = tokens_of(*l);
      SccGenerator g;
      std::size_t c = 0;
      for (; c < toks.size() && toks[c] != ";"; ++c) {
        auto v = parse_double(toks[c]);
        if (!v) throw ParseError(lineno, c + 1, "bad filtration value");
        g.values.push_back(*v);
      }
      if (c == toks.size()) throw ParseError(lineno, c + 1, "missing ';'");
      if (g.values.size() != static_cast<std::size_t>(file.num_parameters))
        throw ParseError(lineno, 1, "wrong number of filtration values");
      for (++c; c < toks.size(); ++c) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(toks[c].data(), toks[c].data() + toks[c].size(), v);
        if (ec != std::errc() || ptr != toks[c].data() + toks[c].size())
          throw ParseError(lineno, c + 1, "bad facet index");
        g.facets.push_back(v);
      }
      block.push_back(std::move(g));
    }
  }
  return file;
}

}  // namespace trifilt::io
