#include "trifilt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

namespace trifilt::oracle {
namespace {

using Row = std::array<Rational, kMaxDim>;

struct Linear {
  Row a;
  Rational b;
};

Row exact_row(const Coords& c) { return {Rational(c[0]), Rational(c[1]), Rational(c[2])}; }

Rational dot(int dim, const Row& u, const Row& v) {
  Rational s = 0;
  for (int k = 0; k < dim; ++k) s += u[k] * v[k];
  return s;
}

// Solves the square system m * x = rhs by Gauss-Jordan elimination.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

// Calls fn on every k-subset of {0..n-1} for k in [kmin, kmax]; stops early
// when fn returns true.
bool for_each_subset(int n, int kmin, int kmax, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<bool(int, int)> rec = [&](int start, int left) -> bool {
    if (left == 0) return fn(cur);
    for (int i = start; i <= n - left; ++i) {
      cur.push_back(i);
      if (rec(i + 1, left - 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  for (int k = kmin; k <= kmax; ++k)
    if (k <= n && rec(0, k)) return true;
  return false;
}

Simplex simplex_of(std::span<const PointId> all, const std::vector<int>& pick) {
  std::vector<PointId> v;
  v.reserve(pick.size());
  for (int i : pick) v.push_back(all[static_cast<std::size_t>(i)]);
  return Simplex(v);
}

std::vector<Simplex> close_and_sort(std::vector<Simplex> gens) {
  std::vector<Simplex> out;
  std::vector<Simplex> frontier = std::move(gens);
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    std::vector<Simplex> next;
    for (const auto& s : frontier) {
      out.push_back(s);
      if (s.size() > 1)
        for (std::size_t i = 0; i < s.size(); ++i) next.push_back(s.facet(i));
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<Rational> min_witness_sq_radius(const WitnessProblem& pb, bool any_feasible) {
  const int dim = pb.dim;
  if (pb.on.empty()) throw Error("witness problem needs a point on the sphere");
  if (static_cast<int>(pb.on.size()) > dim + 1) return std::nullopt;
  const Row z = exact_row(pb.on[0]);
  const Rational zz = dot(dim, z, z);

  std::vector<Linear> eq, ineq;
  for (std::size_t i = 1; i < pb.on.size(); ++i) {
    const Row w = exact_row(pb.on[i]);
    Linear l;
    for (int k = 0; k < dim; ++k) l.a[k] = 2 * (w[k] - z[k]);
    l.b = dot(dim, w, w) - zz;
    eq.push_back(std::move(l));
  }
  for (const auto& p : pb.inside) {
    const Row x = exact_row(p);
    Linear l;
    for (int k = 0; k < dim; ++k) l.a[k] = 2 * (z[k] - x[k]);
    l.b = zz - dot(dim, x, x);
    ineq.push_back(std::move(l));
  }
  for (const auto& p : pb.outside) {
    const Row w = exact_row(p);
    Linear l;
    for (int k = 0; k < dim; ++k) l.a[k] = 2 * (w[k] - z[k]);
    l.b = dot(dim, w, w) - zz;
    ineq.push_back(std::move(l));
  }

  // Affine independence of the on-sphere points: the equality rows must be
  // linearly independent.
  if (!eq.empty()) {
    std::vector<std::vector<Rational>> g(eq.size(), std::vector<Rational>(eq.size()));
    for (std::size_t i = 0; i < eq.size(); ++i)
      for (std::size_t j = 0; j < eq.size(); ++j) g[i][j] = dot(dim, eq[i].a, eq[j].a);
    if (!solve(g, std::vector<Rational>(eq.size(), Rational(0))))
      throw GeneralPositionError("points on the witness sphere are affinely dependent");
  }

  const int free_dims = dim - static_cast<int>(eq.size());
  std::optional<Rational> best;
  for_each_subset(static_cast<int>(ineq.size()), 0, free_dims, [&](const std::vector<int>& active) {
    std::vector<const Linear*> rows;
    for (const auto& e : eq) rows.push_back(&e);
    for (int i : active) rows.push_back(&ineq[static_cast<std::size_t>(i)]);
    Row c = z;
    if (!rows.empty()) {
      const std::size_t m = rows.size();
      std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m));
      std::vector<Rational> rhs(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) g[i][j] = dot(dim, rows[i]->a, rows[j]->a);
        rhs[i] = rows[i]->b - dot(dim, rows[i]->a, z);
      }
      auto lambda = solve(std::move(g), std::move(rhs));
      if (!lambda) return false;
      for (std::size_t i = 0; i < m; ++i)
        for (int k = 0; k < dim; ++k) c[k] += (*lambda)[i] * rows[i]->a[k];
    }
    for (const auto& l : ineq)
      if (dot(dim, l.a, c) > l.b) return false;
    Rational obj = 0;
    for (int k = 0; k < dim; ++k) obj += (c[k] - z[k]) * (c[k] - z[k]);
    if (!best || obj < *best) best = obj;
    return any_feasible;
  });
  return best;
}

double min_witness_sq_radius_iterative(const WitnessProblem& pb, int max_sweeps) {
  const int dim = pb.dim;
  using V = std::array<double, kMaxDim>;
  const V z = pb.on.at(0);
  auto dotd = [&](const V& a, const V& b) {
    double s = 0;
    for (int k = 0; k < dim; ++k) s += a[k] * b[k];
    return s;
  };

  // Orthonormal basis of the directions constrained by the equalities.
  std::vector<V> basis;
  std::vector<V> eq_a;
  std::vector<double> eq_b;
  for (std::size_t i = 1; i < pb.on.size(); ++i) {
    V a{};
    for (int k = 0; k < dim; ++k) a[k] = 2 * (pb.on[i][k] - z[k]);
    eq_a.push_back(a);
    eq_b.push_back(dotd(pb.on[i], pb.on[i]) - dotd(z, z));
  }
  for (V a : eq_a) {
    for (const V& b : basis) {
      const double t = dotd(a, b);
      for (int k = 0; k < dim; ++k) a[k] -= t * b[k];
    }
    const double n = std::sqrt(dotd(a, a));
    for (int k = 0; k < dim; ++k) a[k] /= n;
    basis.push_back(a);
  }
  // The equidistant affine space contains the least-norm circumcenter of the
  // on-points; every projection onto it goes through that point.
  V base = z;
  for (int sweep = 0; sweep < 200; ++sweep) {
    for (std::size_t i = 0; i < eq_a.size(); ++i) {
      const double viol = dotd(eq_a[i], base) - eq_b[i];
      const double nn = dotd(eq_a[i], eq_a[i]);
      for (int k = 0; k < dim; ++k) base[k] -= viol / nn * eq_a[i][k];
    }
  }
  auto project_affine = [&](V c) {
    V d{};
    for (int k = 0; k < dim; ++k) d[k] = c[k] - base[k];
    for (const V& b : basis) {
      const double t = dotd(d, b);
      for (int k = 0; k < dim; ++k) d[k] -= t * b[k];
    }
    for (int k = 0; k < dim; ++k) c[k] = base[k] + d[k];
    return c;
  };

  std::vector<V> ha;
  std::vector<double> hb;
  auto add_half = [&](const V& a, double b) {
    ha.push_back(a);
    hb.push_back(b);
  };
  for (const auto& x : pb.inside) {
    V a{};
    for (int k = 0; k < dim; ++k) a[k] = 2 * (z[k] - x[k]);
    add_half(a, dotd(z, z) - dotd(x, x));
  }
  for (const auto& w : pb.outside) {
    V a{};
    for (int k = 0; k < dim; ++k) a[k] = 2 * (w[k] - z[k]);
    add_half(a, dotd(w, w) - dotd(z, z));
  }

  // Dykstra's alternating projections converge to the projection of z onto
  // the intersection, which is the optimal center.
  const std::size_t nsets = ha.size() + 1;
  std::vector<V> incr(nsets, V{});
  V c = z;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const V before = c;
    const auto incr_before = incr;
    for (std::size_t s = 0; s < nsets; ++s) {
      V y{};
      for (int k = 0; k < dim; ++k) y[k] = c[k] + incr[s][k];
      V p;
      if (s == 0) {
        p = project_affine(y);
      } else {
        const V& a = ha[s - 1];
        const double viol = dotd(a, y) - hb[s - 1];
        p = y;
        if (viol > 0) {
          const double nn = dotd(a, a);
          for (int k = 0; k < dim; ++k) p[k] -= viol / nn * a[k];
        }
      }
      for (int k = 0; k < dim; ++k) incr[s][k] = y[k] - p[k];
      c = p;
    }
    // The iterate can stall while the correction terms still drift, so both
    // have to settle.
    double move = 0, scale = 0;
    for (int k = 0; k < dim; ++k) {
      move += (c[k] - before[k]) * (c[k] - before[k]);
      scale += (c[k] - z[k]) * (c[k] - z[k]);
    }
    for (std::size_t s = 0; s < nsets; ++s)
      for (int k = 0; k < dim; ++k) move += (incr[s][k] - incr_before[s][k]) * (incr[s][k] - incr_before[s][k]);
    if (sweep > 10 && move <= 1e-30 * (scale + 1e-300)) break;
  }
  double r2 = 0;
  for (int k = 0; k < dim; ++k) r2 += (c[k] - z[k]) * (c[k] - z[k]);
  return r2;
}

std::optional<WitnessProblem> witness_problem(const PointCloud& cloud, const BiFunction& f, const Simplex& s) {
  if (s.empty()) throw Error("witness problem of an empty simplex");
  const PointId x = f.max1(s);
  const PointId y = f.max2(s);
  WitnessProblem pb;
  pb.dim = cloud.dim();
  Simplex tau = s.without(x).without(y);
  if (tau.empty()) {
    pb.on.push_back(cloud[x]);
    if (y != x) pb.on.push_back(cloud[y]);
  } else {
    for (PointId p : tau) pb.on.push_back(cloud[p]);
    pb.inside.push_back(cloud[x]);
    if (y != x) pb.inside.push_back(cloud[y]);
  }
  if (static_cast<int>(pb.on.size()) > pb.dim + 1) return std::nullopt;
  const GridIndex g = f.join(s);
  for (std::size_t w = 0; w < cloud.num_data(); ++w) {
    const auto id = static_cast<PointId>(w);
    if (s.contains(id) || !f.in_sublevel(id, g)) continue;
    pb.outside.push_back(cloud[id]);
  }
  return pb;
}

std::vector<Simplex> brute_incr(const PointCloud& cloud, const BiFunction& f) {
  const int n = static_cast<int>(cloud.num_data());
  std::vector<PointId> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
  std::vector<Simplex> out;
  for_each_subset(n, 1, cloud.dim() + 3, [&](const std::vector<int>& pick) {
    const Simplex s = simplex_of(ids, pick);
    auto pb = witness_problem(cloud, f, s);
    if (pb && min_witness_sq_radius(*pb, true)) out.push_back(s);
    return false;
  });
  std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Rational brute_omega(const PointCloud& cloud, const BiFunction& f, const Simplex& s) {
  auto pb = witness_problem(cloud, f, s);
  if (!pb) throw Error("simplex " + s.to_string() + " has no witness");
  auto r = min_witness_sq_radius(*pb);
  if (!r) throw Error("simplex " + s.to_string() + " has no witness");
  return *r;
}

std::optional<Rational> brute_circum_sq(const PointCloud& cloud, const Simplex& s) {
  WitnessProblem pb;
  pb.dim = cloud.dim();
  for (PointId p : s) pb.on.push_back(cloud[p]);
  try {
    return min_witness_sq_radius(pb);
  } catch (const GeneralPositionError&) {
    return std::nullopt;
  }
}

Rational brute_miniball_sq(const PointCloud& cloud, const Simplex& s) {
  const int dim = cloud.dim();
  std::optional<Rational> best;
  const auto verts = s.vertices();
  for_each_subset(static_cast<int>(s.size()), 1, std::min<int>(dim + 1, static_cast<int>(s.size())),
                  [&](const std::vector<int>& pick) {
                    WitnessProblem pb;
                    pb.dim = dim;
                    for (int i : pick) pb.on.push_back(cloud[verts[static_cast<std::size_t>(i)]]);
                    std::optional<Rational> r2;
                    Row center{};
                    // Smallest circumsphere of the support, then containment.
                    try {
                      r2 = min_witness_sq_radius(pb);
                    } catch (const GeneralPositionError&) {
                      return false;
                    }
                    if (!r2) return false;
                    // Recover the center: least-norm point of the equidistant space.
                    const Row z = exact_row(pb.on[0]);
                    const std::size_t m = pb.on.size() - 1;
                    std::vector<Row> a(m);
                    std::vector<Rational> b(m);
                    for (std::size_t i = 0; i < m; ++i) {
                      const Row w = exact_row(pb.on[i + 1]);
                      for (int k = 0; k < dim; ++k) a[i][k] = 2 * (w[k] - z[k]);
                      b[i] = dot(dim, w, w) - dot(dim, z, z) - dot(dim, a[i], z);
                    }
                    center = z;
                    if (m > 0) {
                      std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m));
                      for (std::size_t i = 0; i < m; ++i)
                        for (std::size_t j = 0; j < m; ++j) g[i][j] = dot(dim, a[i], a[j]);
                      auto lambda = solve(std::move(g), b);
                      if (!lambda) return false;
                      for (std::size_t i = 0; i < m; ++i)
                        for (int k = 0; k < dim; ++k) center[k] += (*lambda)[i] * a[i][k];
                    }
                    for (PointId p : s) {
                      const Row q = exact_row(cloud[p]);
                      Rational d2 = 0;
                      for (int k = 0; k < dim; ++k) d2 += (q[k] - center[k]) * (q[k] - center[k]);
                      if (d2 > *r2) return false;
                    }
                    if (!best || *r2 < *best) best = *r2;
                    return false;
                  });
  if (!best) throw Error("no enclosing ball found");
  return *best;
}

std::vector<Simplex> brute_delaunay(const PointCloud& cloud, std::span<const PointId> points, bool check_lower) {
  const int dim = cloud.dim();
  const int n = static_cast<int>(points.size());
  std::vector<Simplex> gens;
  for_each_subset(n, dim + 1, dim + 1, [&](const std::vector<int>& pick) {
    const Simplex s = simplex_of(points, pick);
    WitnessProblem pb;
    pb.dim = dim;
    for (PointId p : s) pb.on.push_back(cloud[p]);
    for (PointId p : points)
      if (!s.contains(p)) pb.outside.push_back(cloud[p]);
    try {
      if (min_witness_sq_radius(pb, true)) gens.push_back(s);
    } catch (const GeneralPositionError&) {
    }
    return false;
  });
  const bool lower = check_lower || gens.empty();
  if (lower) {
    for_each_subset(n, 1, std::min(dim, n), [&](const std::vector<int>& pick) {
      const Simplex s = simplex_of(points, pick);
      WitnessProblem pb;
      pb.dim = dim;
      for (PointId p : s) pb.on.push_back(cloud[p]);
      for (PointId p : points)
        if (!s.contains(p)) pb.outside.push_back(cloud[p]);
      if (min_witness_sq_radius(pb, true)) gens.push_back(s);
      return false;
    });
  }
  return close_and_sort(std::move(gens));
}

Rational alpha_sq_radius(const PointCloud& cloud, std::span<const PointId> points, const Simplex& s) {
  WitnessProblem pb;
  pb.dim = cloud.dim();
  for (PointId p : s) pb.on.push_back(cloud[p]);
  for (PointId p : points)
    if (!s.contains(p)) pb.outside.push_back(cloud[p]);
  auto r = min_witness_sq_radius(pb);
  if (!r) throw Error("simplex " + s.to_string() + " is not Delaunay");
  return *r;
}

CircumsphereTable::CircumsphereTable(const PointCloud& cloud) {
  const int n = static_cast<int>(cloud.size());
  if (n > 64) throw Error("circumsphere table supports at most 64 points");
  const int dim = cloud.dim();
  std::vector<PointId> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
  std::vector<Row> exact(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) exact[static_cast<std::size_t>(i)] = exact_row(cloud[i]);
  for_each_subset(n, dim + 1, dim + 1, [&](const std::vector<int>& pick) {
    const Row& z = exact[static_cast<std::size_t>(pick[0])];
    const std::size_t m = pick.size() - 1;
    std::vector<Row> a(m);
    std::vector<Rational> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Row& w = exact[static_cast<std::size_t>(pick[i + 1])];
      for (int k = 0; k < dim; ++k) a[i][k] = 2 * (w[k] - z[k]);
      b[i] = dot(dim, w, w) - dot(dim, z, z) - dot(dim, a[i], z);
    }
    std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) g[i][j] = dot(dim, a[i], a[j]);
    auto lambda = solve(std::move(g), b);
    if (!lambda) throw GeneralPositionError("affinely dependent cell in circumsphere table");
    Row c = z;
    for (std::size_t i = 0; i < m; ++i)
      for (int k = 0; k < dim; ++k) c[k] += (*lambda)[i] * a[i][k];
    Rational r2 = 0;
    for (int k = 0; k < dim; ++k) r2 += (z[k] - c[k]) * (z[k] - c[k]);
    Entry e;
    e.cell = simplex_of(ids, pick);
    for (int i : pick) e.members |= std::uint64_t{1} << i;
    for (int q = 0; q < n; ++q) {
      if (e.members >> q & 1u) continue;
      Rational d2 = 0;
      for (int k = 0; k < dim; ++k) {
        const Rational t = exact[static_cast<std::size_t>(q)][k] - c[k];
        d2 += t * t;
      }
      const int side = cmp(d2, r2);
      if (side == 0) throw GeneralPositionError("cospherical points in circumsphere table");
      if (side < 0) e.inside |= std::uint64_t{1} << q;
    }
    entries_.push_back(std::move(e));
    return false;
  });
}

std::vector<Simplex> CircumsphereTable::delaunay_cells(std::uint64_t mask) const {
  std::vector<Simplex> out;
  for (const auto& e : entries_)
    if ((e.members & ~mask) == 0 && (e.inside & mask) == 0) out.push_back(e.cell);
  return out;
}

DefinitionalConflicts definitional_conflicts(const PointCloud& cloud, const BiFunction& f) {
  const CircumsphereTable table(cloud);
  const auto n = static_cast<Rank>(cloud.size());
  DefinitionalConflicts out;
  std::map<std::pair<Simplex, std::pair<PointId, PointId>>, bool> triples;
  for (Rank a = 0; a < n; ++a) {
    for (Rank b = 0; b < n; ++b) {
      std::uint64_t mask = 0;
      for (Rank i = 0; i < n; ++i)
        if (f.rank1(i) <= a && f.rank2(i) <= b) mask |= std::uint64_t{1} << i;
      // The only candidates outside X_p in X_{p->} and X_{p^}.
      PointId right = kNoPoint, above = kNoPoint;
      if (a + 1 < n) {
        const PointId x = f.by_rank1(a + 1);
        if (f.rank2(x) <= b) right = x;
      }
      if (b + 1 < n) {
        const PointId y = f.by_rank2(b + 1);
        if (f.rank1(y) <= a) above = y;
      }
      if (right == kNoPoint && above == kNoPoint) continue;
      for (const auto& e : table.entries()) {
        if ((e.members & ~mask) != 0 || (e.inside & mask) != 0) continue;
        const bool in_right = right != kNoPoint && (e.inside >> right & 1u);
        const bool in_above = above != kNoPoint && (e.inside >> above & 1u);
        if (in_right) out.pairs[e.cell].push_back(right);
        if (in_above) out.pairs[e.cell].push_back(above);
        if (in_right && in_above) {
          PointId x = right, y = above;
          if (f.rank1(y) < f.rank1(x)) std::swap(x, y);
          triples[{e.cell, {x, y}}] = true;
        }
      }
    }
  }
  for (auto& [cell, list] : out.pairs) {
    std::sort(list.begin(), list.end(), [&](PointId u, PointId v) { return f.rank1(u) < f.rank1(v); });
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  for (const auto& [t, unused] : triples) out.triples.push_back(t);
  return out;
}

std::vector<int> betti(std::span<const Simplex> complex, int kmax) {
  std::vector<std::vector<Simplex>> by_dim(static_cast<std::size_t>(kmax) + 2);
  for (const auto& s : complex)
    if (s.dim() <= kmax + 1) by_dim[static_cast<std::size_t>(s.dim())].push_back(s);
  for (auto& l : by_dim) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  // rank of the boundary map from dimension k to k-1
  auto boundary_rank = [&](int k) -> int {
    if (k <= 0 || k > kmax + 1) return 0;
    const auto& cols = by_dim[static_cast<std::size_t>(k)];
    const auto& rows = by_dim[static_cast<std::size_t>(k) - 1];
    std::unordered_map<int, std::vector<int>> pivot_owner;  // low -> reduced column
    std::vector<int> low_of_pivot(rows.size(), -1);
    std::vector<std::vector<int>> reduced;
    int rank = 0;
    for (const auto& s : cols) {
      std::vector<int> col;
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto it = std::lower_bound(rows.begin(), rows.end(), s.facet(i));
        if (it == rows.end() || *it != s.facet(i)) throw Error("complex is not closed under faces");
        col.push_back(static_cast<int>(it - rows.begin()));
      }
      std::sort(col.begin(), col.end());
      while (!col.empty()) {
        const int low = col.back();
        const int owner = low_of_pivot[static_cast<std::size_t>(low)];
        if (owner < 0) break;
        std::vector<int> sum;
        const auto& other = reduced[static_cast<std::size_t>(owner)];
        std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(sum));
        col.swap(sum);
      }
      if (!col.empty()) {
        low_of_pivot[static_cast<std::size_t>(col.back())] = static_cast<int>(reduced.size());
        reduced.push_back(std::move(col));
        ++rank;
      }
    }
    return rank;
  };
  std::vector<int> ranks(static_cast<std::size_t>(kmax) + 3, 0);
  for (int k = 1; k <= kmax + 1; ++k) ranks[static_cast<std::size_t>(k)] = boundary_rank(k);
  std::vector<int> out;
  for (int k = 0; k <= kmax; ++k) {
    const int nk = static_cast<int>(by_dim[static_cast<std::size_t>(k)].size());
    out.push_back(nk - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k) + 1]);
  }
  return out;
}

std::vector<std::pair<Simplex, Rational>> miniball_table(const PointCloud& cloud, std::span<const PointId> points,
                                                         int max_dim) {
  std::vector<std::pair<Simplex, Rational>> out;
  for_each_subset(static_cast<int>(points.size()), 1, max_dim + 1, [&](const std::vector<int>& pick) {
    const Simplex s = simplex_of(points, pick);
    out.emplace_back(s, brute_miniball_sq(cloud, s));
    return false;
  });
  return out;
}

std::vector<Simplex> cech_complex(const PointCloud& cloud, std::span<const PointId> points, const Rational& sq_r,
                                  int max_dim) {
  std::vector<Simplex> out;
  for (auto& [s, r2] : miniball_table(cloud, points, max_dim))
    if (r2 <= sq_r) out.push_back(s);
  return out;
}

}  // namespace trifilt::oracle
