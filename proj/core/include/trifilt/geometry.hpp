#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "trifilt/exact.hpp"
#include "trifilt/predicates.hpp"
#include "trifilt/types.hpp"

namespace trifilt::geom {

template <class F>
struct BasicSphere {
  std::array<F, kMaxDim> center{};
  F sq_radius{};
};

using Sphere = BasicSphere<double>;
using ExactSphere = BasicSphere<Rational>;

// A sphere together with the affine coefficients of its center over the
// points it passes through.
struct Circumsphere {
  ExactSphere sphere;
  std::vector<Rational> coefficients;
};

/// Smallest sphere through all of pts, centered in their affine hull.
/// Throws GeneralPositionError if pts are affinely dependent.
ExactSphere circumsphere(int dim, std::span<const Coords> pts);
std::optional<Circumsphere> try_circumsphere(int dim, std::span<const ExactPoint> pts);

/// Smallest enclosing ball of a non-empty point set.
ExactSphere miniball(int dim, std::span<const Coords> pts);

/// Smallest sphere passing through every boundary point and enclosing every
/// other point. Empty optional if no such sphere exists.
std::optional<ExactSphere> miniball_on_boundary(int dim, std::span<const Coords> boundary,
                                                std::span<const Coords> enclosed);

// Sphere held as integers over a common power-of-two unit: the center is
// origin + offset / det with det > 0. Side tests and the rounded radius need
// no rational normalization.
class IntegerSphere {
 public:
  [[nodiscard]] Side side(const Coords& p) const;
  [[nodiscard]] Rational sq_radius() const;
  // Nearest double to the radius.
  [[nodiscard]] double radius() const;
  [[nodiscard]] ExactSphere exact() const;

 private:
  friend class SphereBuilder;
  int dim_ = 0;
  long unit_ = 0;  // log2 of the coordinate unit
  std::array<mpz_class, kMaxDim> origin_;
  std::array<mpz_class, kMaxDim> offset_;
  mpz_class det_ = 1;
};

/// miniball_on_boundary in integer form.
std::optional<IntegerSphere> constrained_ball(int dim, std::span<const Coords> boundary,
                                              std::span<const Coords> enclosed);

Side side_of(int dim, const ExactSphere& s, const Coords& p);
Side side_of(int dim, const ExactSphere& s, const ExactPoint& p);

Sphere approximate(const ExactSphere& s);

}  // namespace trifilt::geom
