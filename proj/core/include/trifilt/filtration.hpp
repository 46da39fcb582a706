#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "trifilt/bifunction.hpp"
#include "trifilt/exact.hpp"
#include "trifilt/geometry.hpp"
#include "trifilt/point_cloud.hpp"
#include "trifilt/simplex_store.hpp"

namespace trifilt {

enum class FiltrationKind { Del, DelCech };

FiltrationKind parse_filtration_kind(std::string_view name);
std::string_view to_string(FiltrationKind k);

struct BirthData {
  Value2 gamma{};  // raw-value join
  double m = 0;
  double omega = 0;
  bool gabriel = false;
};

struct BirthOptions {
  // Also keep the squared radii as exact rationals.
  bool keep_exact = false;
  // Worker threads per dimension level; 0 picks the hardware count.
  unsigned threads = 1;
};

// Birth data for every simplex of a store, indexed like the store.
class BirthTable {
 public:
  [[nodiscard]] const BirthData& at(int dim, SimplexStore::Index i) const {
    return data_[static_cast<std::size_t>(dim)][i];
  }
  [[nodiscard]] const std::vector<BirthData>& level(int dim) const { return data_[static_cast<std::size_t>(dim)]; }
  [[nodiscard]] bool has_exact() const { return !omega_sq_.empty(); }
  [[nodiscard]] const Rational& omega_sq(int dim, SimplexStore::Index i) const {
    return omega_sq_[static_cast<std::size_t>(dim)][i];
  }
  [[nodiscard]] const Rational& m_sq(int dim, SimplexStore::Index i) const {
    return m_sq_[static_cast<std::size_t>(dim)][i];
  }

 private:
  friend BirthTable compute_births(const SimplexStore&, const PointCloud&, const BiFunction&, const BirthOptions&);
  std::vector<std::vector<BirthData>> data_;
  std::vector<std::vector<Rational>> omega_sq_;
  std::vector<std::vector<Rational>> m_sq_;
};

Value2 gamma_join(const Simplex& s, const BiFunction& f);

Rational compute_m_sq(const Simplex& s, const PointCloud& cloud);
double compute_m(const Simplex& s, const PointCloud& cloud);

struct GabrielResult {
  bool gabriel = false;
  geom::ExactSphere sphere;  // through s minus its two maxima, enclosing both
};

/// The constrained sphere of s and whether no cofacet vertex of the
/// sublevel set of s (other than the two maxima) lies strictly inside it.
GabrielResult is_incr_gabriel(const SimplexStore& incr, int dim, SimplexStore::Index i, const PointCloud& cloud,
                              const BiFunction& f);

/// Birth data of every simplex: the value join, the enclosing-ball radius and
/// the minimum witness radius, processed from the top dimension down.
BirthTable compute_births(const SimplexStore& incr, const PointCloud& cloud, const BiFunction& f,
                          const BirthOptions& options = {});

struct FiltrationRecord {
  Simplex simplex;
  std::array<double, 3> values{};
};

struct FiltrationOutput {
  FiltrationKind kind = FiltrationKind::Del;
  // blocks[0] holds the top dimension; each block is lexicographic.
  std::vector<std::vector<FiltrationRecord>> blocks;

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] int top_dim() const { return static_cast<int>(blocks.size()) - 1; }
};

FiltrationOutput emit_filtration(const SimplexStore& incr, const BirthTable& births, FiltrationKind kind);

}  // namespace trifilt
