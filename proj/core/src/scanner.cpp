#include "trifilt/scanner.hpp"

#include <algorithm>
#include <string>

#include "trifilt/oracle.hpp"
#include "trifilt/triangulation.hpp"

namespace trifilt {

Strategy parse_strategy(std::string_view name) {
  if (name == "naive") return Strategy::Naive;
  if (name == "nonlocal") return Strategy::NonLocal;
  if (name == "local") return Strategy::Local;
  throw Error("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Naive:
      return "naive";
    case Strategy::NonLocal:
      return "nonlocal";
    case Strategy::Local:
      return "local";
  }
  return "?";
}

namespace {

// Sweeps the lines of one axis. "Primary" is the rank that fixes the line,
// "secondary" the rank along it.
class LineSweep {
 public:
  LineSweep(const PointCloud& cloud, const BiFunction& f, int axis, ConflictLedger& ledger, ScanStats& stats)
      : cloud_(cloud), f_(f), axis_(axis), ledger_(ledger), stats_(stats), tri_(cloud) {
    for (PointId p : f.order(axis))
      if (!cloud.is_frame(p)) sweep_order_.push_back(p);
  }

  void run(Strategy s) {
    switch (s) {
      case Strategy::Naive:
        naive();
        break;
      case Strategy::NonLocal:
        nonlocal();
        break;
      case Strategy::Local:
        local();
        break;
    }
  }

 private:
  [[nodiscard]] Rank primary(PointId p) const { return f_.rank(axis_, p); }
  [[nodiscard]] Rank secondary(PointId p) const { return f_.rank(1 - axis_, p); }

  // Grid point just below z on the line through x, in (rank1, rank2) terms.
  [[nodiscard]] GridIndex below(PointId x, PointId z) const {
    const Rank a = primary(x), b = secondary(z) - 1;
    return axis_ == 0 ? GridIndex{a, b} : GridIndex{b, a};
  }

  void by_secondary(std::vector<PointId>& v) const {
    std::sort(v.begin(), v.end(), [&](PointId a, PointId b) { return secondary(a) < secondary(b); });
  }

  void insert_silently(PointId z) {
    tri_.insert(z);
    ++stats_.insertions;
  }

  void remove(PointId z) {
    tri_.remove(z);
    ++stats_.removals;
  }

  // Inserts z, recording its BW-conflicts; with `only_with` set, keeps just
  // the conflicts in which that vertex takes part.
  void insert_recording(PointId x, PointId z, PointId only_with = kNoPoint) {
    buffer_.clear();
    tri_.insert(z, &buffer_);
    ++stats_.insertions;
    stats_.conflicts_seen += buffer_.size();
    const GridIndex p = below(x, z);
    for (const auto& cell : buffer_) {
      if (only_with != kNoPoint && z != only_with && !cell.contains(only_with)) continue;
      ledger_.record(cell, z, p);
    }
  }

  void naive() {
    std::vector<PointId> line;  // points left of (or on) the current line, by secondary rank
    for (PointId x : sweep_order_) {
      line.insert(std::upper_bound(line.begin(), line.end(), x,
                                   [&](PointId a, PointId b) { return secondary(a) < secondary(b); }),
                  x);
      tri_.reset();
      ++stats_.rebuilds;
      for (PointId z : line) insert_recording(x, z);
    }
  }

  void nonlocal() {
    std::vector<PointId> placed;  // W, by secondary rank
    for (PointId x : sweep_order_) {
      const auto split = std::upper_bound(placed.begin(), placed.end(), x,
                                          [&](PointId a, PointId b) { return secondary(a) < secondary(b); });
      const std::vector<PointId> lower(placed.begin(), split);
      const std::vector<PointId> later(split, placed.end());
      if (later.size() > lower.size()) {
        tri_.reset();
        ++stats_.rebuilds;
        for (PointId w : lower) insert_silently(w);
      } else {
        for (PointId w : later) remove(w);
      }
      insert_recording(x, x);
      for (PointId z : later) insert_recording(x, z);
      placed.insert(placed.begin() + (split - placed.begin()), x);
    }
  }

  void local() {
    std::vector<PointId> removed;
    for (PointId x : sweep_order_) {
      const Rank sx = secondary(x);
      insert_silently(x);
      removed.clear();
      for (;;) {
        PointId victim = kNoPoint;
        for (PointId w : tri_.neighborhood(x)) {
          if (w != x && !cloud_.is_frame(w) && secondary(w) > sx) {
            victim = w;
            break;
          }
        }
        if (victim == kNoPoint) break;
        remove(victim);
        removed.push_back(victim);
      }
      remove(x);
      removed.push_back(x);
      by_secondary(removed);
      for (PointId z : removed) insert_recording(x, z, x);
    }
  }

  const PointCloud& cloud_;
  const BiFunction& f_;
  int axis_;
  ConflictLedger& ledger_;
  ScanStats& stats_;
  Triangulation tri_;
  std::vector<PointId> sweep_order_;
  std::vector<Simplex> buffer_;
};

}  // namespace

void scan_lines(const PointCloud& cloud, const BiFunction& f, Strategy strategy, int axis, ConflictLedger& ledger,
                ScanStats* stats) {
  if (f.size() != cloud.size()) throw Error("bifunction and point cloud sizes differ");
  ScanStats local_stats;
  LineSweep sweep(cloud, f, axis, ledger, stats ? *stats : local_stats);
  sweep.run(strategy);
}

ConflictLedger scan(const PointCloud& cloud, const BiFunction& f, Strategy strategy, ScanStats* stats) {
  ConflictLedger ledger(f);
  scan_lines(cloud, f, strategy, 0, ledger, stats);
  scan_lines(cloud, f, strategy, 1, ledger, stats);
  return ledger;
}

SimplexStore assemble_incr(const ConflictLedger& ledger, const std::vector<ConflictTriple>& triples,
                           const PointCloud& cloud) {
  std::vector<Simplex> gens;
  auto strip = [&](const Simplex& s) {
    std::array<PointId, kMaxSimplexSize> buf{};
    std::size_t n = 0;
    for (PointId p : s)
      if (!cloud.is_frame(p)) buf[n++] = p;
    if (n > 0) gens.push_back(Simplex::from_sorted(std::span<const PointId>(buf.data(), n)));
  };
  ledger.for_each([&](const Simplex& cell, const std::vector<ConflictEntry>& list) {
    if (list.size() == 1) strip(cell.with(list.front().vertex));
  });
  for (const auto& t : triples) strip(t.cell.with(t.x).with(t.y));
  return SimplexStore::closure_of(std::move(gens));
}

SimplexStore compute_incr(const PointCloud& cloud, const BiFunction& f, Strategy strategy, ScanStats* stats) {
  if (cloud.num_data() <= static_cast<std::size_t>(cloud.dim()) + 1)
    return SimplexStore::closure_of(oracle::brute_incr(cloud, f));
  const auto ledger = scan(cloud, f, strategy, stats);
  return assemble_incr(ledger, derive_triples(ledger), cloud);
}

}  // namespace trifilt
