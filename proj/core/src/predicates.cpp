#include "trifilt/predicates.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "trifilt/exact.hpp"

namespace trifilt::geom {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;  // unit roundoff

// Relative error multipliers for the evaluation trees below, with some slack.
constexpr double kOrient2Bound = 4 * kEps;
constexpr double kOrient3Bound = 8 * kEps;
constexpr double kInCircleBound = 12 * kEps;
constexpr double kInSphereBound = 24 * kEps;

int sign_of(double v) { return (v > 0) - (v < 0); }

void check_size(int dim, std::size_t n, std::size_t expected) {
  if (dim < 1 || dim > kMaxDim) throw Error("dimension out of range");
  if (n != expected) throw Error("predicate called with the wrong number of points");
}

template <std::size_t N>
int det_sign(std::array<std::array<Rational, N>, N>& m, std::size_t n) {
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      sign = -sign;
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) sign *= sgn(m[i][i]);
  return sign;
}

}  // namespace

FilterStats& filter_stats() {
  thread_local FilterStats stats;
  return stats;
}

int orientation_exact(int dim, std::span<const Coords> pts) {
  check_size(dim, pts.size(), static_cast<std::size_t>(dim) + 1);
  std::array<std::array<Rational, kMaxDim>, kMaxDim> m;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m[i][j] = Rational(pts[i + 1][j]) - Rational(pts[0][j]);
  return det_sign(m, static_cast<std::size_t>(dim));
}

Side in_sphere_exact(int dim, std::span<const Coords> cell, const Coords& q) {
  check_size(dim, cell.size(), static_cast<std::size_t>(dim) + 1);
  const auto n = static_cast<std::size_t>(dim) + 1;
  std::array<std::array<Rational, kMaxDim + 1>, kMaxDim + 1> m;
  for (std::size_t i = 0; i < n; ++i) {
    Rational lift = 0;
    for (int j = 0; j < dim; ++j) {
      m[i][j] = Rational(cell[i][j]) - Rational(q[j]);
      lift += m[i][j] * m[i][j];
    }
    m[i][dim] = lift;
  }
  int s = det_sign(m, n);
  if (dim % 2 == 1) s = -s;
  return s > 0 ? Side::Inside : (s < 0 ? Side::Outside : Side::On);
}

int orientation(int dim, std::span<const Coords> pts) {
  check_size(dim, pts.size(), static_cast<std::size_t>(dim) + 1);
  auto& stats = filter_stats();
  ++stats.orientation_calls;
  if (dim == 1) return sign_of(pts[1][0] - pts[0][0]);  // a difference of doubles has exact sign

  double det = 0;
  double perm = 0;
  double bound = 0;
  const Coords& o = pts[0];
  if (dim == 2) {
    const double ax = pts[1][0] - o[0], ay = pts[1][1] - o[1];
    const double bx = pts[2][0] - o[0], by = pts[2][1] - o[1];
    const double l = ax * by, r = ay * bx;
    det = l - r;
    perm = std::abs(l) + std::abs(r);
    bound = kOrient2Bound;
  } else {
    std::array<double, 3> x, y, z;
    for (int i = 0; i < 3; ++i) {
      x[i] = pts[i + 1][0] - o[0];
      y[i] = pts[i + 1][1] - o[1];
      z[i] = pts[i + 1][2] - o[2];
    }
    const double m12a = x[1] * y[2], m12b = x[2] * y[1];
    const double m02a = x[0] * y[2], m02b = x[2] * y[0];
    const double m01a = x[0] * y[1], m01b = x[1] * y[0];
    det = z[0] * (m12a - m12b) - z[1] * (m02a - m02b) + z[2] * (m01a - m01b);
    perm = std::abs(z[0]) * (std::abs(m12a) + std::abs(m12b)) + std::abs(z[1]) * (std::abs(m02a) + std::abs(m02b)) +
           std::abs(z[2]) * (std::abs(m01a) + std::abs(m01b));
    bound = kOrient3Bound;
  }
  if (std::abs(det) > bound * perm) return sign_of(det);
  ++stats.orientation_exact;
  return orientation_exact(dim, pts);
}

Side in_sphere(int dim, std::span<const Coords> cell, const Coords& q) {
  check_size(dim, cell.size(), static_cast<std::size_t>(dim) + 1);
  auto& stats = filter_stats();
  ++stats.in_sphere_calls;
  if (dim == 1) {
    // Positive orientation means cell[0] < cell[1]; comparisons are exact.
    const double a = cell[0][0], b = cell[1][0], t = q[0];
    if (t == a || t == b) return Side::On;
    return (a < t && t < b) ? Side::Inside : Side::Outside;
  }

  double det = 0;
  double perm = 0;
  double bound = 0;
  if (dim == 2) {
    std::array<double, 3> x, y, l;
    for (int i = 0; i < 3; ++i) {
      x[i] = cell[i][0] - q[0];
      y[i] = cell[i][1] - q[1];
      l[i] = x[i] * x[i] + y[i] * y[i];
    }
    const double p12 = x[1] * y[2], n12 = x[2] * y[1];
    const double p02 = x[0] * y[2], n02 = x[2] * y[0];
    const double p01 = x[0] * y[1], n01 = x[1] * y[0];
    det = l[0] * (p12 - n12) - l[1] * (p02 - n02) + l[2] * (p01 - n01);
    perm = l[0] * (std::abs(p12) + std::abs(n12)) + l[1] * (std::abs(p02) + std::abs(n02)) +
           l[2] * (std::abs(p01) + std::abs(n01));
    bound = kInCircleBound;
  } else {
    std::array<double, 4> x, y, z, l;
    for (int i = 0; i < 4; ++i) {
      x[i] = cell[i][0] - q[0];
      y[i] = cell[i][1] - q[1];
      z[i] = cell[i][2] - q[2];
      l[i] = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
    }
    std::array<std::array<double, 4>, 4> mp{}, mn{};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        mp[i][j] = x[i] * y[j];
        mn[i][j] = x[j] * y[i];
      }
    auto minor3 = [&](int i, int j, int k, double& pm) {
      const double mjk = mp[j][k] - mn[j][k], mik = mp[i][k] - mn[i][k], mij = mp[i][j] - mn[i][j];
      pm = std::abs(z[i]) * (std::abs(mp[j][k]) + std::abs(mn[j][k])) +
           std::abs(z[j]) * (std::abs(mp[i][k]) + std::abs(mn[i][k])) +
           std::abs(z[k]) * (std::abs(mp[i][j]) + std::abs(mn[i][j]));
      return z[i] * mjk - z[j] * mik + z[k] * mij;
    };
    double p0, p1, p2, p3;
    const double c0 = minor3(1, 2, 3, p0);
    const double c1 = minor3(0, 2, 3, p1);
    const double c2 = minor3(0, 1, 3, p2);
    const double c3 = minor3(0, 1, 2, p3);
    det = (l[1] * c1 - l[0] * c0) + (l[3] * c3 - l[2] * c2);
    perm = l[0] * p0 + l[1] * p1 + l[2] * p2 + l[3] * p3;
    bound = kInSphereBound;
  }
  if (std::abs(det) > bound * perm) {
    int s = sign_of(det);
    if (dim % 2 == 1) s = -s;
    return s > 0 ? Side::Inside : Side::Outside;
  }
  ++stats.in_sphere_exact;
  return in_sphere_exact(dim, cell, q);
}

}  // namespace trifilt::geom
