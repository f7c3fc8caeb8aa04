#pragma once

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fplab/common.hpp"

namespace fplab {

/// One metric-axiom violation found while validating a distance matrix.
/// Indices refer to the label order; unused slots stay at -1.
struct MetricViolation {
  enum class Kind {
    NonSquare,
    AsymmetricAt,
    NonzeroDiagonalAt,
    ZeroOffDiagonalAt,
    TriangleViolationAt,
  };
  Kind kind;
  int i = -1;
  int j = -1;
  int k = -1;
};

inline std::string describe(const MetricViolation& v,
                            const std::vector<std::string>& labels) {
  auto name = [&](int idx) -> std::string {
    if (idx < 0 || idx >= static_cast<int>(labels.size()))
      return "#" + std::to_string(idx);
    return labels[idx];
  };
  using K = MetricViolation::Kind;
  switch (v.kind) {
    case K::NonSquare:
      return "NonSquare: matrix shape does not match the label count";
    case K::AsymmetricAt:
      return "AsymmetricAt(" + name(v.i) + "," + name(v.j) + ")";
    case K::NonzeroDiagonalAt:
      return "NonzeroDiagonalAt(" + name(v.i) + ")";
    case K::ZeroOffDiagonalAt:
      return "ZeroOffDiagonalAt(" + name(v.i) + "," + name(v.j) + ")";
    case K::TriangleViolationAt:
      return "TriangleViolationAt(" + name(v.i) + "," + name(v.j) + "," +
             name(v.k) + ")";
  }
  return "UnknownViolation";
}

/// A finite metric space: named points plus a validated distance matrix.
/// Instances can only be built through validate_metric, so every object of
/// this type satisfies the four metric axioms (triangle up to its tol).
class FiniteMetricSpace {
 public:
  int size() const { return static_cast<int>(labels_.size()); }

  double dist(int i, int j) const { return d_[static_cast<size_t>(i) * labels_.size() + j]; }

  /// d(x,y) + d(y,z) + d(z,x); arguments need not be distinct.
  double perimeter(int x, int y, int z) const {
    return dist(x, y) + dist(y, z) + dist(z, x);
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  double tol() const { return tol_; }

  /// Index of a label, or -1 if unknown.
  int index_of(std::string_view label) const {
    for (int i = 0; i < size(); ++i)
      if (labels_[i] == label) return i;
    return -1;
  }

 private:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> flat,
                    double tol)
      : labels_(std::move(labels)), d_(std::move(flat)), tol_(tol) {}

  friend struct MetricValidation;

  std::vector<std::string> labels_;
  std::vector<double> d_;  // row-major n*n
  double tol_;
};

/// Result of validate_metric: either a space or the complete violation list.
struct MetricValidation {
  std::optional<FiniteMetricSpace> space;
  std::vector<MetricViolation> violations;

  bool ok() const { return violations.empty(); }

  static MetricValidation success(std::vector<std::string> labels,
                                  std::vector<double> flat, double tol) {
    MetricValidation r;
    r.space = FiniteMetricSpace(std::move(labels), std::move(flat), tol);
    return r;
  }
};

/// Checks all four metric axioms and reports every violation found.
///
/// Diagonal and symmetry are exact; identity of indiscernibles requires
/// d(i,j) > tol for i != j; the triangle inequality gets an additive tol.
/// Labels must be unique (the JSON layer rejects duplicates before this).
inline MetricValidation validate_metric(
    std::vector<std::string> labels,
    const std::vector<std::vector<double>>& matrix,
    double tol = kDefaultTol) {
  MetricValidation result;
  const int n = static_cast<int>(labels.size());

  bool square = static_cast<int>(matrix.size()) == n;
  for (const auto& row : matrix)
    square = square && static_cast<int>(row.size()) == n;
  if (!square) {
    result.violations.push_back({MetricViolation::Kind::NonSquare});
    return result;
  }

  auto& v = result.violations;
  for (int i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0)
      v.push_back({MetricViolation::Kind::NonzeroDiagonalAt, i});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i])
        v.push_back({MetricViolation::Kind::AsymmetricAt, i, j});
      if (!(matrix[i][j] > tol))  // catches zeros, negatives and NaN
        v.push_back({MetricViolation::Kind::ZeroOffDiagonalAt, i, j});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + tol)
          v.push_back({MetricViolation::Kind::TriangleViolationAt, i, j, k});
      }
    }
  }
  if (!v.empty()) return result;

  std::vector<double> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<size_t>(i) * n + j] = matrix[i][j];
  return MetricValidation::success(std::move(labels), std::move(flat), tol);
}

/// A total self-map on {0..n-1}, stored as a lookup table.
class SelfMap {
 public:
  explicit SelfMap(std::vector<int> image) : image_(std::move(image)) {
    for (int t : image_)
      if (t < 0 || t >= static_cast<int>(image_.size()))
        throw std::invalid_argument("SelfMap: image index out of range");
  }

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int x) const { return image_[x]; }
  const std::vector<int>& table() const { return image_; }

  /// T^k x by k table lookups; iterate(x, 0) == x.
  int iterate(int x, int k) const {
    for (int s = 0; s < k; ++s) x = image_[x];
    return x;
  }

 private:
  std::vector<int> image_;
};

/// The interface the classifiers, dynamics and solver operate on: a finite
/// point set with distances, a self-map, and printable point names.
template <typename S>
concept MetricSystem = requires(const S& s, int i, int j) {
  { s.size() } -> std::convertible_to<int>;
  { s.dist(i, j) } -> std::convertible_to<double>;
  { s.image(i) } -> std::convertible_to<int>;
  { s.label(i) } -> std::convertible_to<std::string>;
};

/// Borrowing view pairing a FiniteMetricSpace with a SelfMap.
/// Both referents must outlive the view.
class SpaceMapView {
 public:
  SpaceMapView(const FiniteMetricSpace& space, const SelfMap& map)
      : space_(&space), map_(&map) {
    if (space.size() != map.size())
      throw std::invalid_argument("SpaceMapView: size mismatch");
  }

  int size() const { return space_->size(); }
  double dist(int i, int j) const { return space_->dist(i, j); }
  int image(int i) const { return (*map_)(i); }
  const std::string& label(int i) const { return space_->label(i); }
  const FiniteMetricSpace& space() const { return *space_; }
  const SelfMap& map() const { return *map_; }

 private:
  const FiniteMetricSpace* space_;
  const SelfMap* map_;
};

static_assert(MetricSystem<SpaceMapView>);

template <MetricSystem S>
double perimeter(const S& sys, int x, int y, int z) {
  return sys.dist(x, y) + sys.dist(y, z) + sys.dist(z, x);
}

}  // namespace fplab
