#include "trifilt/filtration.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace trifilt {

FiltrationKind parse_filtration_kind(std::string_view name) {
  if (name == "del") return FiltrationKind::Del;
  if (name == "delcech") return FiltrationKind::DelCech;
  throw Error("unknown filtration '" + std::string(name) + "'");
}

std::string_view to_string(FiltrationKind k) { return k == FiltrationKind::Del ? "del" : "delcech"; }

Value2 gamma_join(const Simplex& s, const BiFunction& f) {
  if (s.empty()) throw Error("join of an empty simplex");
  return f.value_join(s);
}

Rational compute_m_sq(const Simplex& s, const PointCloud& cloud) {
  const auto pts = cloud.gather(s.vertices());
  return geom::miniball(cloud.dim(), pts).sq_radius;
}

double compute_m(const Simplex& s, const PointCloud& cloud) { return sqrt_nearest(compute_m_sq(s, cloud)); }

namespace {

geom::IntegerSphere enclosing_ball(const Simplex& s, const PointCloud& cloud) {
  const auto pts = cloud.gather(s.vertices());
  auto ball = geom::constrained_ball(cloud.dim(), {}, pts);
  if (!ball) throw Error("miniball unexpectedly infeasible");
  return std::move(*ball);
}

struct GabrielTest {
  bool gabriel = true;
  geom::IntegerSphere sphere;
};

GabrielTest test_gabriel(const SimplexStore& incr, int dim, SimplexStore::Index i, const PointCloud& cloud,
                         const BiFunction& f) {
  const Simplex& s = incr.at(dim, i);
  const PointId x = f.max1(s);
  const PointId y = f.max2(s);
  const Simplex tau = s.without(x).without(y);
  const auto boundary = cloud.gather(tau.vertices());
  std::vector<Coords> enclosed{cloud[x]};
  if (y != x) enclosed.push_back(cloud[y]);
  auto sphere = geom::constrained_ball(cloud.dim(), boundary, enclosed);
  if (!sphere) throw Error("no constrained sphere for " + s.to_string());

  GabrielTest out{true, std::move(*sphere)};
  const GridIndex g = f.join(s);
  for (SimplexStore::Index j : incr.cofacets(dim, i)) {
    const Simplex& mu = incr.at(dim + 1, j);
    PointId w = kNoPoint;
    for (PointId p : mu)
      if (!s.contains(p)) {
        w = p;
        break;
      }
    if (!f.in_sublevel(w, g)) continue;
    if (out.sphere.side(cloud[w]) == geom::Side::Inside) {
      out.gabriel = false;
      break;
    }
  }
  return out;
}

}  // namespace

GabrielResult is_incr_gabriel(const SimplexStore& incr, int dim, SimplexStore::Index i, const PointCloud& cloud,
                              const BiFunction& f) {
  auto t = test_gabriel(incr, dim, i, cloud, f);
  return {t.gabriel, t.sphere.exact()};
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, n / 256 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) fn(i);
    });
  }
}

}  // namespace

BirthTable compute_births(const SimplexStore& incr, const PointCloud& cloud, const BiFunction& f,
                          const BirthOptions& options) {
  BirthTable table;
  if (incr.empty()) return table;
  const int top = incr.max_dim();
  const auto levels = static_cast<std::size_t>(top) + 1;
  table.data_.resize(levels);
  if (options.keep_exact) {
    table.omega_sq_.resize(levels);
    table.m_sq_.resize(levels);
  }
  for (int k = top; k >= 0; --k) {
    const auto ku = static_cast<std::size_t>(k);
    const auto simplices = incr.level(k);
    auto& data = table.data_[ku];
    data.resize(simplices.size());
    if (options.keep_exact) {
      table.omega_sq_[ku].resize(simplices.size());
      table.m_sq_[ku].resize(simplices.size());
    }
    parallel_for(simplices.size(), options.threads, [&](std::size_t idx) {
      const auto i = static_cast<SimplexStore::Index>(idx);
      const Simplex& s = simplices[idx];
      BirthData& b = data[idx];
      b.gamma = f.value_join(s);
      const auto ball = enclosing_ball(s, cloud);
      b.m = ball.radius();
      const auto gr = test_gabriel(incr, k, i, cloud, f);
      b.gabriel = gr.gabriel;
      if (gr.gabriel) {
        b.omega = gr.sphere.radius();
        if (options.keep_exact) table.omega_sq_[ku][idx] = gr.sphere.sq_radius();
      } else {
        // Rounding is monotone, so the minimum of rounded radii is the
        // rounded minimum.
        const auto cof = incr.cofacets(k, i);
        if (cof.empty()) throw Error("simplex " + s.to_string() + " has a point inside its sphere but no cofacet");
        const auto& above = table.data_[ku + 1];
        auto best = cof.front();
        for (auto j : cof)
          if (above[j].omega < above[best].omega) best = j;
        b.omega = above[best].omega;
        if (options.keep_exact) {
          const auto& ex = table.omega_sq_[ku + 1];
          const Rational* mn = &ex[cof.front()];
          for (auto j : cof)
            if (ex[j] < *mn) mn = &ex[j];
          table.omega_sq_[ku][idx] = *mn;
        }
      }
      if (options.keep_exact) table.m_sq_[ku][idx] = ball.sq_radius();
    });
  }
  return table;
}

std::size_t FiltrationOutput::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

FiltrationOutput emit_filtration(const SimplexStore& incr, const BirthTable& births, FiltrationKind kind) {
  FiltrationOutput out;
  out.kind = kind;
  if (incr.empty()) return out;
  for (int k = incr.max_dim(); k >= 0; --k) {
    const auto simplices = incr.level(k);
    const auto& data = births.level(k);
    auto& block = out.blocks.emplace_back();
    block.reserve(simplices.size());
    for (std::size_t i = 0; i < simplices.size(); ++i) {
      const BirthData& b = data[i];
      const double r = kind == FiltrationKind::Del ? b.omega : b.m;
      block.push_back({simplices[i], {b.gamma[0], b.gamma[1], r}});
    }
  }
  return out;
}

}  // namespace trifilt
