#pragma once

#include <vector>

#include "fplab/metric_space.hpp"

namespace fplab {

/// Orbit of one start point: where it lands and how fast, or cyclic if it
/// never reaches a fixed point (possible only through a cycle of length >= 2).
struct OrbitRecord {
  int limit = -1;   // fixed point reached, -1 when cyclic
  int steps = -1;   // map applications until the limit
  bool cyclic = false;
};

/// Exhaustive fixed-point / period-2 census plus per-point orbit limits.
struct OrbitAnalysis {
  std::vector<int> fixed_points;    // ascending indices
  std::vector<int> period2_points;  // ascending; disjoint from fixed_points
  std::vector<OrbitRecord> orbits;  // indexed by start point
};

/// Points with Tx = x.
template <MetricSystem S>
std::vector<int> fixed_points(const S& sys) {
  std::vector<int> out;
  for (int x = 0; x < sys.size(); ++x)
    if (sys.image(x) == x) out.push_back(x);
  return out;
}

/// Points of prime period 2: T^2 x = x with Tx != x.
template <MetricSystem S>
std::vector<int> period2_points(const S& sys) {
  std::vector<int> out;
  for (int x = 0; x < sys.size(); ++x) {
    const int tx = sys.image(x);
    if (tx != x && sys.image(tx) == x) out.push_back(x);
  }
  return out;
}

/// Full orbit analysis. Each orbit is followed at most n steps; on an
/// n-point space the pigeonhole principle guarantees cycle entry by then.
template <MetricSystem S>
OrbitAnalysis analyze(const S& sys) {
  OrbitAnalysis a;
  a.fixed_points = fixed_points(sys);
  a.period2_points = period2_points(sys);
  const int n = sys.size();
  a.orbits.reserve(static_cast<size_t>(n));
  for (int start = 0; start < n; ++start) {
    OrbitRecord rec;
    int x = start;
    for (int step = 0; step <= n; ++step) {
      if (sys.image(x) == x) {
        rec.limit = x;
        rec.steps = step;
        break;
      }
      x = sys.image(x);
    }
    rec.cyclic = rec.limit < 0;
    a.orbits.push_back(rec);
  }
  return a;
}

}  // namespace fplab
