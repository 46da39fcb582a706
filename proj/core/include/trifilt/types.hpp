#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace trifilt {

inline constexpr int kMaxDim = 3;
// Incr holds simplices up to dimension d+2, i.e. d+3 vertices.
inline constexpr int kMaxSimplexSize = kMaxDim + 3;

using PointId = std::int32_t;
inline constexpr PointId kNoPoint = -1;

using Coords = std::array<double, kMaxDim>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exact predicate hits a tie the pipeline assumes away
// (a point exactly on a circumsphere, collinear cells, duplicate points).
class GeneralPositionError : public Error {
 public:
  using Error::Error;
};

// A set of point indices kept sorted, with inline storage.
class Simplex {
 public:
  using value_type = PointId;
  using const_iterator = const PointId*;

  Simplex() = default;
  Simplex(std::initializer_list<PointId> vs) : Simplex(std::span<const PointId>(vs.begin(), vs.size())) {}
  explicit Simplex(std::span<const PointId> vs) {
    if (vs.size() > kMaxSimplexSize) throw Error("simplex has too many vertices");
    std::copy(vs.begin(), vs.end(), v_.begin());
    size_ = static_cast<std::uint8_t>(vs.size());
    std::sort(v_.begin(), v_.begin() + size_);
    if (std::adjacent_find(begin(), end()) != end()) throw Error("simplex has a repeated vertex");
  }

  // Caller guarantees the input is sorted and free of repeats.
  static Simplex from_sorted(std::span<const PointId> vs) {
    Simplex s;
    std::copy(vs.begin(), vs.end(), s.v_.begin());
    s.size_ = static_cast<std::uint8_t>(vs.size());
    return s;
  }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] int dim() const { return static_cast<int>(size_) - 1; }
  [[nodiscard]] bool empty() const { return size_ == 0; }
  [[nodiscard]] PointId operator[](std::size_t i) const { return v_[i]; }
  [[nodiscard]] const_iterator begin() const { return v_.data(); }
  [[nodiscard]] const_iterator end() const { return v_.data() + size_; }
  [[nodiscard]] std::span<const PointId> vertices() const { return {v_.data(), size_}; }

  [[nodiscard]] bool contains(PointId p) const { return std::binary_search(begin(), end(), p); }

  [[nodiscard]] Simplex with(PointId p) const {
    if (contains(p)) throw Error("vertex already in simplex");
    if (size_ == kMaxSimplexSize) throw Error("simplex has too many vertices");
    Simplex s;
    auto* out = s.v_.data();
    const auto* it = begin();
    for (; it != end() && *it < p; ++it) *out++ = *it;
    *out++ = p;
    for (; it != end(); ++it) *out++ = *it;
    s.size_ = static_cast<std::uint8_t>(size_ + 1);
    return s;
  }

  [[nodiscard]] Simplex without(PointId p) const {
    Simplex s;
    auto* out = s.v_.data();
    for (PointId q : *this)
      if (q != p) *out++ = q;
    s.size_ = static_cast<std::uint8_t>(out - s.v_.data());
    return s;
  }

  // The facet obtained by dropping the vertex at position i.
  [[nodiscard]] Simplex facet(std::size_t i) const {
    Simplex s;
    for (std::size_t k = 0, j = 0; k < size_; ++k)
      if (k != i) s.v_[j++] = v_[k];
    s.size_ = static_cast<std::uint8_t>(size_ - 1);
    return s;
  }

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  [[nodiscard]] std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
    for (PointId p : *this) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  [[nodiscard]] std::string to_string() const;

 private:
  std::array<PointId, kMaxSimplexSize> v_{};
  std::uint8_t size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const { return s.hash(); }
};

}  // namespace trifilt
