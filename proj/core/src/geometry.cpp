#include "trifilt/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace trifilt::geom {
namespace {

template <class F>
using Vec = std::array<F, kMaxDim>;

constexpr int kMaxSupport = kMaxDim + 1;
constexpr int kMaxBallInput = kMaxDim + 3;

bool pivot_is_zero(double v, double scale) { return std::abs(v) <= 1e-12 * scale; }
bool pivot_is_zero(const Rational& v, const Rational&) { return sgn(v) == 0; }

double magnitude(double v) { return std::abs(v); }
Rational magnitude(const Rational& v) { return abs(v); }

template <class F>
struct Solved {
  BasicSphere<F> sphere;
  std::array<F, kMaxSupport> coef{};
};

// Least-norm circumcenter of k affinely independent points:
// center = p0 + sum_j lambda_j (p_j - p0) with G lambda = diag(G) / 2.
template <class F>
std::optional<Solved<F>> solve_circumsphere(int dim, const std::array<const Vec<F>*, kMaxSupport>& pts, int k) {
  if (k < 1 || k > dim + 1) return std::nullopt;
  Solved<F> out;
  const Vec<F>& p0 = *pts[0];
  const int m = k - 1;
  std::array<Vec<F>, kMaxDim> u;
  for (int j = 0; j < m; ++j)
    for (int c = 0; c < dim; ++c) u[j][c] = (*pts[j + 1])[c] - p0[c];

  std::array<std::array<F, kMaxDim + 1>, kMaxDim> g;
  F scale = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      F dot = 0;
      for (int c = 0; c < dim; ++c) dot += u[i][c] * u[j][c];
      g[i][j] = dot;
    }
    g[i][m] = g[i][i] / 2;
    if (magnitude(g[i][i]) > scale) scale = magnitude(g[i][i]);
  }

  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (magnitude(g[r][col]) > magnitude(g[piv][col])) piv = r;
    if (pivot_is_zero(g[piv][col], scale)) return std::nullopt;
    std::swap(g[piv], g[col]);
    for (int r = col + 1; r < m; ++r) {
      const F f = g[r][col] / g[col][col];
      for (int c = col; c <= m; ++c) g[r][c] -= f * g[col][c];
    }
  }
  std::array<F, kMaxDim> lambda;
  for (int i = m - 1; i >= 0; --i) {
    F acc = g[i][m];
    for (int j = i + 1; j < m; ++j) acc -= g[i][j] * lambda[j];
    lambda[i] = acc / g[i][i];
  }

  F sum = 0;
  for (int c = 0; c < kMaxDim; ++c) out.sphere.center[c] = (c < dim) ? p0[c] : F(0);
  for (int j = 0; j < m; ++j) {
    for (int c = 0; c < dim; ++c) out.sphere.center[c] += lambda[j] * u[j][c];
    sum += lambda[j];
    out.coef[j + 1] = lambda[j];
  }
  out.coef[0] = F(1) - sum;
  F r2 = 0;
  for (int c = 0; c < dim; ++c) {
    const F d = out.sphere.center[c] - p0[c];
    r2 += d * d;
  }
  out.sphere.sq_radius = r2;
  return out;
}

template <class F>
F sq_dist(int dim, const Vec<F>& a, const Vec<F>& b) {
  F s = 0;
  for (int c = 0; c < dim; ++c) {
    const F d = a[c] - b[c];
    s += d * d;
  }
  return s;
}

template <class F>
bool encloses(int dim, const BasicSphere<F>& s, const Vec<F>& p) {
  if constexpr (std::is_same_v<F, double>) {
    const double d = sq_dist(dim, s.center, p);
    return d <= s.sq_radius * (1 + 1e-12) + 1e-300;
  } else {
    return sq_dist(dim, s.center, p) <= s.sq_radius;
  }
}

template <class F>
struct Ball {
  bool empty = true;  // the "ball" through no points, enclosing nothing
  Solved<F> solved;
  std::array<int, kMaxSupport> support{};
  int nsupport = 0;
};

// Welzl recursion over at most d+3 points with a growing boundary set.
template <class F>
class Welzl {
 public:
  Welzl(int dim, std::span<const Vec<F>> pts) : dim_(dim), pts_(pts) {}

  std::optional<Ball<F>> run(std::span<const int> boundary, std::span<const int> free) {
    std::array<int, kMaxSupport> r{};
    int nr = 0;
    for (int b : boundary) r[nr++] = b;
    free_.assign(free.begin(), free.end());
    return mb(static_cast<int>(free_.size()), r, nr);
  }

 private:
  std::optional<Ball<F>> trivial(const std::array<int, kMaxSupport>& r, int nr) const {
    Ball<F> ball;
    ball.support = r;
    ball.nsupport = nr;
    if (nr == 0) return ball;
    std::array<const Vec<F>*, kMaxSupport> ptrs{};
    for (int i = 0; i < nr; ++i) ptrs[i] = &pts_[r[i]];
    auto solved = solve_circumsphere<F>(dim_, ptrs, nr);
    if (!solved) return std::nullopt;
    ball.empty = false;
    ball.solved = std::move(*solved);
    return ball;
  }

  bool inside(const Ball<F>& b, int idx) const { return !b.empty && encloses(dim_, b.solved.sphere, pts_[idx]); }

  std::optional<Ball<F>> mb(int n, std::array<int, kMaxSupport> r, int nr) {
    if (nr == dim_ + 1 || n == 0) {
      auto ball = trivial(r, nr);
      if (!ball) return std::nullopt;
      for (int i = 0; i < n; ++i)
        if (!inside(*ball, free_[i])) return std::nullopt;
      return ball;
    }
    auto d = mb(n - 1, r, nr);
    if (!d) return std::nullopt;
    if (inside(*d, free_[n - 1])) return d;
    r[nr++] = free_[n - 1];
    return mb(n - 1, r, nr);
  }

  int dim_;
  std::span<const Vec<F>> pts_;
  std::vector<int> free_;
};

Vec<Rational> exact_of(const Coords& c) { return {Rational(c[0]), Rational(c[1]), Rational(c[2])}; }

using IVec = std::array<mpz_class, kMaxDim>;

// Exponent of the lowest set bit of a nonzero double.
long lowest_bit(double x) {
  int ex = 0;
  const double f = std::frexp(std::abs(x), &ex);
  const auto m = static_cast<std::uint64_t>(std::ldexp(f, 53));
  return static_cast<long>(ex) - 53 + std::countr_zero(m);
}

long lowest_bit(int dim, const Coords& c) {
  long e = std::numeric_limits<long>::max();
  for (int k = 0; k < dim; ++k)
    if (c[k] != 0) e = std::min(e, lowest_bit(c[k]));
  return e;
}

void scale_to_integer(int dim, const Coords& c, long unit, IVec& out) {
  for (int k = 0; k < dim; ++k) {
    out[k] = std::ldexp(c[k], static_cast<int>(-unit));
  }
  for (int k = dim; k < kMaxDim; ++k) out[k] = 0;
}

mpz_class dot(int dim, const IVec& a, const IVec& b) {
  mpz_class s = 0;
  for (int c = 0; c < dim; ++c) s += a[c] * b[c];
  return s;
}

int side_sign(int dim, const IVec& origin, const IVec& offset, const mpz_class& det, const IVec& p) {
  IVec v;
  for (int c = 0; c < dim; ++c) v[c] = p[c] - origin[c];
  mpz_class lhs = det * dot(dim, v, v);
  mpz_class rhs = 2 * dot(dim, v, offset);
  return cmp(lhs, rhs);
}

}  // namespace

class SphereBuilder {
 public:
  SphereBuilder(int dim, std::span<const Coords> pts) : dim_(dim), n_(static_cast<int>(pts.size())) {
    unit_ = std::numeric_limits<long>::max();
    for (const auto& p : pts) unit_ = std::min(unit_, lowest_bit(dim, p));
    if (unit_ == std::numeric_limits<long>::max()) unit_ = 0;
    for (int i = 0; i < n_; ++i) scale_to_integer(dim, pts[static_cast<std::size_t>(i)], unit_, pts_[i]);
  }

  // Sphere through the listed points, centered in their affine hull. The
  // affine coefficients of the center over those points are coef[i] / det.
  std::optional<IntegerSphere> through(std::span<const int> ids, std::array<mpz_class, kMaxSupport>* coef) const {
    const int k = static_cast<int>(ids.size());
    if (k < 1 || k > dim_ + 1) return std::nullopt;
    const int m = k - 1;
    const IVec& p0 = pts_[ids[0]];
    std::array<IVec, kMaxDim> u;
    for (int j = 0; j < m; ++j)
      for (int c = 0; c < dim_; ++c) u[j][c] = pts_[ids[j + 1]][c] - p0[c];
    // A = 2 G, b = diag(G); the coefficients solve A lambda = b.
    std::array<std::array<mpz_class, kMaxDim>, kMaxDim> a, adj;
    std::array<mpz_class, kMaxDim> b;
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        a[i][j] = dot(dim_, u[i], u[j]);
        a[j][i] = a[i][j];
      }
      b[i] = a[i][i];
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a[i][j] *= 2;

    mpz_class det = 1;
    if (m == 1) {
      det = a[0][0];
      adj[0][0] = 1;
    } else if (m == 2) {
      det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
      adj[0][0] = a[1][1];
      adj[0][1] = -a[0][1];
      adj[1][0] = -a[1][0];
      adj[1][1] = a[0][0];
    } else if (m == 3) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
          adj[i][j] = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
        }
      det = a[0][0] * adj[0][0] + a[0][1] * adj[1][0] + a[0][2] * adj[2][0];
    }
    if (sgn(det) == 0) return std::nullopt;

    std::array<mpz_class, kMaxDim> lam;
    for (int i = 0; i < m; ++i) {
      lam[i] = 0;
      for (int j = 0; j < m; ++j) lam[i] += adj[i][j] * b[j];
    }
    if (sgn(det) < 0) {
      det = -det;
      for (int i = 0; i < m; ++i) lam[i] = -lam[i];
    }

    IntegerSphere s;
    s.dim_ = dim_;
    s.unit_ = unit_;
    s.det_ = det;
    s.origin_ = p0;
    for (int c = 0; c < kMaxDim; ++c) s.offset_[c] = 0;
    for (int j = 0; j < m; ++j)
      for (int c = 0; c < dim_; ++c) s.offset_[c] += lam[j] * u[j][c];
    if (coef) {
      mpz_class rest = det;
      for (int j = 0; j < m; ++j) {
        (*coef)[j + 1] = lam[j];
        rest -= lam[j];
      }
      (*coef)[0] = rest;
    }
    return s;
  }

  // The sphere through ids if it is the optimum: nonnegative coefficients on
  // the non-fixed points and every point from nfixed on inside or on.
  std::optional<IntegerSphere> certify(std::span<const int> ids, int nfixed) const {
    std::array<mpz_class, kMaxSupport> coef;
    auto s = through(ids, &coef);
    if (!s) return std::nullopt;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] >= nfixed && sgn(coef[i]) < 0) return std::nullopt;
    for (int e = nfixed; e < n_; ++e)
      if (side_sign(dim_, s->origin_, s->offset_, s->det_, pts_[e]) > 0) return std::nullopt;
    return s;
  }

 private:
  int dim_;
  int n_;
  long unit_ = 0;
  std::array<IVec, kMaxBallInput> pts_;
};

Side IntegerSphere::side(const Coords& p) const {
  const long e = lowest_bit(dim_, p);
  IVec q;
  int c = 0;
  if (e >= unit_) {
    scale_to_integer(dim_, p, unit_, q);
    c = side_sign(dim_, origin_, offset_, det_, q);
  } else {
    // p is finer than this sphere's unit; rescale the sphere instead.
    const auto shift = static_cast<mp_bitcnt_t>(unit_ - e);
    scale_to_integer(dim_, p, e, q);
    IVec o, off;
    for (int k = 0; k < dim_; ++k) {
      mpz_mul_2exp(o[k].get_mpz_t(), origin_[k].get_mpz_t(), shift);
      mpz_mul_2exp(off[k].get_mpz_t(), offset_[k].get_mpz_t(), shift);
    }
    c = side_sign(dim_, o, off, det_, q);
  }
  return c < 0 ? Side::Inside : (c > 0 ? Side::Outside : Side::On);
}

Rational IntegerSphere::sq_radius() const {
  Rational r(dot(dim_, offset_, offset_), det_ * det_);
  r.canonicalize();
  if (unit_ >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(2 * unit_));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-2 * unit_));
  return r;
}

double IntegerSphere::radius() const { return sqrt_nearest(dot(dim_, offset_, offset_), det_ * det_, 2 * unit_); }

ExactSphere IntegerSphere::exact() const {
  ExactSphere out;
  for (int c = 0; c < kMaxDim; ++c) {
    if (c >= dim_) {
      out.center[c] = 0;
      continue;
    }
    Rational v(origin_[c] * det_ + offset_[c], det_);
    v.canonicalize();
    if (unit_ >= 0)
      mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(unit_));
    else
      mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(-unit_));
    out.center[c] = std::move(v);
  }
  out.sq_radius = sq_radius();
  return out;
}

namespace {
}  // namespace

std::optional<Circumsphere> try_circumsphere(int dim, std::span<const ExactPoint> pts) {
  if (pts.empty() || static_cast<int>(pts.size()) > dim + 1) return std::nullopt;
  std::array<const Vec<Rational>*, kMaxSupport> ptrs{};
  for (std::size_t i = 0; i < pts.size(); ++i) ptrs[i] = &pts[i];
  auto solved = solve_circumsphere<Rational>(dim, ptrs, static_cast<int>(pts.size()));
  if (!solved) return std::nullopt;
  Circumsphere out{std::move(solved->sphere), {}};
  out.coefficients.assign(solved->coef.begin(), solved->coef.begin() + static_cast<std::ptrdiff_t>(pts.size()));
  return out;
}

ExactSphere circumsphere(int dim, std::span<const Coords> pts) {
  if (pts.empty()) throw Error("circumsphere of an empty set");
  std::vector<ExactPoint> ex;
  ex.reserve(pts.size());
  for (const auto& p : pts) ex.push_back(exact_of(p));
  auto c = try_circumsphere(dim, ex);
  if (!c) throw GeneralPositionError("circumsphere of affinely dependent points");
  return std::move(c->sphere);
}

std::optional<IntegerSphere> constrained_ball(int dim, std::span<const Coords> boundary,
                                              std::span<const Coords> enclosed) {
  const int nb = static_cast<int>(boundary.size());
  const int ne = static_cast<int>(enclosed.size());
  if (nb + ne == 0) throw Error("miniball of an empty set");
  if (nb + ne > kMaxBallInput) throw Error("miniball input too large");
  if (nb > dim + 1) throw GeneralPositionError("boundary set is affinely dependent");

  std::array<Coords, kMaxBallInput> all{};
  std::array<int, kMaxBallInput> fixed_ids{}, free_ids{};
  for (int i = 0; i < nb; ++i) {
    all[i] = boundary[i];
    fixed_ids[i] = i;
  }
  for (int i = 0; i < ne; ++i) {
    all[nb + i] = enclosed[i];
    free_ids[i] = nb + i;
  }
  const std::span<const Coords> pts(all.data(), nb + ne);
  const std::span<const int> fixed(fixed_ids.data(), nb);
  const std::span<const int> free(free_ids.data(), ne);
  const SphereBuilder builder(dim, pts);
  if (nb > 0 && !builder.through(fixed, nullptr)) throw GeneralPositionError("boundary set is affinely dependent");

  std::array<Vec<double>, kMaxBallInput> approx{};
  std::copy(pts.begin(), pts.end(), approx.begin());
  Welzl<double> fast(dim, std::span<const Vec<double>>(approx.data(), pts.size()));
  if (auto ball = fast.run(fixed, free); ball && !ball->empty) {
    if (auto s = builder.certify(std::span<const int>(ball->support.data(), ball->nsupport), nb)) return s;
  }

  // Rounding misled the floating-point search: try every support set.
  std::array<int, kMaxSupport> ids{};
  for (unsigned mask = 0; mask < (1u << ne); ++mask) {
    const int k = nb + std::popcount(mask);
    if (k < 1 || k > dim + 1) continue;
    std::copy(fixed.begin(), fixed.end(), ids.begin());
    int at = nb;
    for (int i = 0; i < ne; ++i)
      if (mask & (1u << i)) ids[at++] = nb + i;
    if (auto s = builder.certify(std::span<const int>(ids.data(), k), nb)) return s;
  }

  // Only degenerate inputs get here.
  std::array<Vec<Rational>, kMaxBallInput> exact;
  for (int i = 0; i < nb + ne; ++i) exact[i] = exact_of(pts[i]);
  Welzl<Rational> slow(dim, std::span<const Vec<Rational>>(exact.data(), pts.size()));
  auto ball = slow.run(fixed, free);
  if (!ball || ball->empty) return std::nullopt;
  return builder.through(std::span<const int>(ball->support.data(), ball->nsupport), nullptr);
}

std::optional<ExactSphere> miniball_on_boundary(int dim, std::span<const Coords> boundary,
                                                std::span<const Coords> enclosed) {
  auto s = constrained_ball(dim, boundary, enclosed);
  if (!s) return std::nullopt;
  return s->exact();
}

ExactSphere miniball(int dim, std::span<const Coords> pts) {
  if (pts.empty()) throw Error("miniball of an empty set");
  auto s = miniball_on_boundary(dim, {}, pts);
  if (!s) throw Error("miniball unexpectedly infeasible");
  return std::move(*s);
}

Side side_of(int dim, const ExactSphere& s, const ExactPoint& p) {
  Rational d = 0;
  for (int c = 0; c < dim; ++c) {
    const Rational t = p[c] - s.center[c];
    d += t * t;
  }
  const int c = cmp(d, s.sq_radius);
  return c < 0 ? Side::Inside : (c > 0 ? Side::Outside : Side::On);
}

Side side_of(int dim, const ExactSphere& s, const Coords& p) { return side_of(dim, s, exact_of(p)); }

Sphere approximate(const ExactSphere& s) {
  Sphere out;
  for (int c = 0; c < kMaxDim; ++c) out.center[c] = nearest_double(s.center[c]);
  out.sq_radius = nearest_double(s.sq_radius);
  return out;
}

}  // namespace trifilt::geom
