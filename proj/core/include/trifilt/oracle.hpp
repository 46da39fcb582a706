#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trifilt/bifunction.hpp"
#include "trifilt/exact.hpp"
#include "trifilt/point_cloud.hpp"
#include "trifilt/types.hpp"

// Slow reference implementations, written directly from the definitions and
// sharing no geometry code with the main pipeline.
namespace trifilt::oracle {

// Spheres through every `on` point, with `inside` points inside or on and
// `outside` points outside or on. Every constraint is linear in the center.
struct WitnessProblem {
  int dim = 0;
  std::vector<Coords> on;
  std::vector<Coords> inside;
  std::vector<Coords> outside;
};

/// Smallest squared radius over all witnesses, by enumerating subsets of
/// tight constraints; empty if infeasible. With `any_feasible` the search
/// stops at the first feasible candidate (whose value is then an upper bound).
std::optional<Rational> min_witness_sq_radius(const WitnessProblem& problem, bool any_feasible = false);

/// Same minimum approximated by alternating projections (independent check).
double min_witness_sq_radius_iterative(const WitnessProblem& problem, int max_sweeps = 200000);

/// Witness problem of a data simplex under f; empty if the problem is
/// trivially infeasible (too many points on the sphere).
std::optional<WitnessProblem> witness_problem(const PointCloud& cloud, const BiFunction& f, const Simplex& s);

/// Every simplex (size <= d+3) of data points that admits a witness. Closed
/// under faces, sorted by dimension then lexicographically.
std::vector<Simplex> brute_incr(const PointCloud& cloud, const BiFunction& f);

/// Minimum squared witness radius of a simplex of brute_incr.
Rational brute_omega(const PointCloud& cloud, const BiFunction& f, const Simplex& s);

/// Squared radius of the smallest enclosing ball, by enumerating supports.
Rational brute_miniball_sq(const PointCloud& cloud, const Simplex& s);

/// Squared radius of the smallest circumsphere; empty if affinely dependent.
std::optional<Rational> brute_circum_sq(const PointCloud& cloud, const Simplex& s);

/// Delaunay complex of the given points: every full-dimensional simplex with
/// an empty circumsphere, plus all faces. When the points do not span a full
/// cell, or `check_lower` is set, lower simplices are tested by witness
/// feasibility directly.
std::vector<Simplex> brute_delaunay(const PointCloud& cloud, std::span<const PointId> points, bool check_lower = false);

/// One-parameter Delaunay radius of a simplex of brute_delaunay(points).
Rational alpha_sq_radius(const PointCloud& cloud, std::span<const PointId> points, const Simplex& s);

/// All d-simplices over every point of the cloud (frame included), each with
/// the set of cloud points strictly inside its circumsphere.
class CircumsphereTable {
 public:
  explicit CircumsphereTable(const PointCloud& cloud);
  struct Entry {
    Simplex cell;
    std::uint64_t members = 0;
    std::uint64_t inside = 0;
  };
  [[nodiscard]] std::span<const Entry> entries() const { return entries_; }
  // d-cells of DelT(points in mask).
  [[nodiscard]] std::vector<Simplex> delaunay_cells(std::uint64_t mask) const;

 private:
  std::vector<Entry> entries_;
};

using ConflictMap = std::map<Simplex, std::vector<PointId>>;  // cell -> vertices sorted by rank1

struct DefinitionalConflicts {
  ConflictMap pairs;
  // (cell, (x, y)) with x before y in the first order; sorted.
  std::vector<std::pair<Simplex, std::pair<PointId, PointId>>> triples;
};

/// Conflict pairs and triples found by checking the definition at every
/// grid point. The cloud must have a frame and at most 64 points.
DefinitionalConflicts definitional_conflicts(const PointCloud& cloud, const BiFunction& f);

/// Betti numbers b_0..b_kmax over the two-element field. The input must be
/// closed under faces and contain the (kmax+1)-skeleton.
std::vector<int> betti(std::span<const Simplex> complex, int kmax);

/// Every subset of `points` with at most max_dim+1 vertices, with its
/// squared miniball radius.
std::vector<std::pair<Simplex, Rational>> miniball_table(const PointCloud& cloud, std::span<const PointId> points,
                                                         int max_dim);

/// Subsets of `points` whose miniball has squared radius <= sq_r.
std::vector<Simplex> cech_complex(const PointCloud& cloud, std::span<const PointId> points, const Rational& sq_r,
                                  int max_dim);

}  // namespace trifilt::oracle
