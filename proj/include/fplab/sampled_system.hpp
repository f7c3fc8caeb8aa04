#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fplab/common.hpp"
#include "fplab/metric_space.hpp"

namespace fplab {

/// A finite sample of a real-interval system: strictly increasing grid
/// points under the absolute-difference distance, plus a map rule whose
/// image of every grid point is again a grid point. Construction fails
/// with GridNotClosed otherwise, so classifier arithmetic stays exact on
/// the sample instead of projecting images to the nearest point.
class SampledSystem {
 public:
  SampledSystem(std::vector<double> points, std::function<double(double)> rule,
                std::string rule_name, double tol = kDefaultTol)
      : points_(std::move(points)), rule_name_(std::move(rule_name)) {
    if (points_.size() < 2)
      throw std::invalid_argument("SampledSystem: need at least two points");
    for (size_t i = 1; i < points_.size(); ++i)
      if (!(points_[i] > points_[i - 1]))
        throw std::invalid_argument("SampledSystem: points must be strictly increasing");

    image_.reserve(points_.size());
    for (double p : points_) {
      const double v = rule(p);
      const int idx = locate(v, tol);
      if (idx < 0)
        throw GridNotClosed("grid not closed under the map: image of " +
                            format_g12(p) + " is " + format_g12(v) +
                            ", not a grid point");
      image_.push_back(idx);
    }
  }

  int size() const { return static_cast<int>(points_.size()); }
  double dist(int i, int j) const { return std::abs(points_[i] - points_[j]); }
  int image(int i) const { return image_[i]; }
  std::string label(int i) const { return format_g12(points_[i]); }

  double point(int i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }
  const std::string& rule_name() const { return rule_name_; }

  /// Grid index of the sample closest to v within tol, or -1.
  int locate(double v, double tol = kDefaultTol) const {
    const auto it = std::lower_bound(points_.begin(), points_.end(), v);
    int best = -1;
    double best_gap = tol;
    auto consider = [&](std::vector<double>::const_iterator c) {
      if (c == points_.end()) return;
      const double gap = std::abs(*c - v);
      if (gap <= best_gap) {
        best = static_cast<int>(c - points_.begin());
        best_gap = gap;
      }
    };
    if (it != points_.begin()) consider(std::prev(it));
    consider(it);
    return best;
  }

 private:
  std::vector<double> points_;
  std::vector<int> image_;
  std::string rule_name_;
};

static_assert(MetricSystem<SampledSystem>);

/// The discontinuous map on [0,1] sending [0,1) to 0 and 1 to 1/4,
/// sampled on {k/grid_size} with 1/4 inserted when absent. The image
/// values 0 and 1/4 are grid points, so the grid is closed by design.
inline SampledSystem make_remark4_system(int grid_size = 1000,
                                         double tol = kDefaultTol) {
  if (grid_size < 4)
    throw std::invalid_argument("remark4 grid needs at least 4 intervals");
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(grid_size) + 2);
  for (int k = 0; k <= grid_size; ++k)
    pts.push_back(static_cast<double>(k) / static_cast<double>(grid_size));
  if (std::find(pts.begin(), pts.end(), 0.25) == pts.end()) {
    pts.push_back(0.25);
    std::sort(pts.begin(), pts.end());
  }
  auto rule = [](double x) { return x == 1.0 ? 0.25 : 0.0; };
  return SampledSystem(std::move(pts), rule, "remark4", tol);
}

}  // namespace fplab
