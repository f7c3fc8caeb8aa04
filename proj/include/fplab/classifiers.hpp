#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "fplab/common.hpp"
#include "fplab/metric_space.hpp"

namespace fplab {

/// The seven contraction classes plus the strict orbital variant.
enum class ContractionKind {
  Banach,
  Kannan,
  Chatterjea,
  PerimeterTriangle,
  OrbitalTriangular,
  OrbitalTriangularStrict,
  OrbitalKannan,
  OrbitalChatterjea,
};

inline constexpr std::array<ContractionKind, 8> kAllKinds = {
    ContractionKind::Banach,
    ContractionKind::Kannan,
    ContractionKind::Chatterjea,
    ContractionKind::PerimeterTriangle,
    ContractionKind::OrbitalTriangular,
    ContractionKind::OrbitalTriangularStrict,
    ContractionKind::OrbitalKannan,
    ContractionKind::OrbitalChatterjea,
};

/// Strict upper bound the minimal constant must stay below for membership.
inline constexpr double threshold(ContractionKind k) {
  switch (k) {
    case ContractionKind::Banach: return 1.0;
    case ContractionKind::Kannan: return 0.5;
    case ContractionKind::Chatterjea: return 0.5;
    case ContractionKind::PerimeterTriangle: return 1.0;
    case ContractionKind::OrbitalTriangular: return 1.0;
    case ContractionKind::OrbitalTriangularStrict: return 1.0;
    case ContractionKind::OrbitalKannan: return 2.0 / 3.0;
    case ContractionKind::OrbitalChatterjea: return 0.5;
  }
  return 0.0;
}

inline constexpr bool uses_triples(ContractionKind k) {
  return k == ContractionKind::PerimeterTriangle;
}

inline constexpr std::string_view kind_name(ContractionKind k) {
  switch (k) {
    case ContractionKind::Banach: return "banach";
    case ContractionKind::Kannan: return "kannan";
    case ContractionKind::Chatterjea: return "chatterjea";
    case ContractionKind::PerimeterTriangle: return "perimeter_triangle";
    case ContractionKind::OrbitalTriangular: return "orbital_triangular";
    case ContractionKind::OrbitalTriangularStrict: return "orbital_triangular_strict";
    case ContractionKind::OrbitalKannan: return "orbital_kannan";
    case ContractionKind::OrbitalChatterjea: return "orbital_chatterjea";
  }
  return "?";
}

inline bool parse_kind(std::string_view name, ContractionKind& out) {
  for (ContractionKind k : kAllKinds) {
    if (kind_name(k) == name) {
      out = k;
      return true;
    }
  }
  return false;
}

/// A pair or triple of point indices; unused slots stay at -1.
struct Witness {
  std::array<int, 3> idx{-1, -1, -1};
  int arity = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Classification verdict for one class on one instance.
///
/// minimal_constant is the supremum of lhs/rhs over admissible tuples and
/// is only meaningful when neither `infinite` nor `vacuous` is set. The
/// witness is the tuple attaining the supremum (largest ratio, then largest
/// lhs, then lexicographically smallest indices); for infinite verdicts it
/// is the zero-rhs tuple with the largest lhs.
struct ClassificationReport {
  ContractionKind kind{};
  double threshold = 0.0;
  bool member = false;
  bool vacuous = false;
  bool infinite = false;
  double minimal_constant = 0.0;
  Witness witness;
  double witness_lhs = 0.0;
  double witness_rhs = 0.0;
  long long admissible_count = 0;
};

/// Orders constants for the inclusion checks: Vacuous below everything,
/// Infinite above everything.
inline double constant_order_key(const ClassificationReport& r) {
  if (r.vacuous) return -std::numeric_limits<double>::infinity();
  if (r.infinite) return std::numeric_limits<double>::infinity();
  return r.minimal_constant;
}

namespace detail {

template <MetricSystem S>
inline bool admissible_pair(ContractionKind k, const S& sys, int x, int y) {
  switch (k) {
    case ContractionKind::Banach:
    case ContractionKind::Kannan:
    case ContractionKind::Chatterjea:
      return x != y;
    case ContractionKind::OrbitalTriangular:
    case ContractionKind::OrbitalChatterjea:
      return x != y && y != sys.image(x);
    case ContractionKind::OrbitalTriangularStrict:
    case ContractionKind::OrbitalKannan:
      return x != y && y != sys.image(x) && x != sys.image(x);
    case ContractionKind::PerimeterTriangle:
      return false;  // triple class
  }
  return false;
}

template <MetricSystem S>
inline std::pair<double, double> eval_pair(ContractionKind k, const S& sys,
                                           int x, int y) {
  const int tx = sys.image(x);
  const int ty = sys.image(y);
  switch (k) {
    case ContractionKind::Banach:
      return {sys.dist(tx, ty), sys.dist(x, y)};
    case ContractionKind::Kannan:
      return {sys.dist(tx, ty), sys.dist(x, tx) + sys.dist(y, ty)};
    case ContractionKind::Chatterjea:
      return {sys.dist(tx, ty), sys.dist(x, ty) + sys.dist(y, tx)};
    default: break;
  }
  const int t2x = sys.image(tx);
  const double lhs = sys.dist(tx, t2x) + sys.dist(t2x, ty) + sys.dist(ty, tx);
  switch (k) {
    case ContractionKind::OrbitalTriangular:
    case ContractionKind::OrbitalTriangularStrict:
      return {lhs, sys.dist(x, tx) + sys.dist(tx, y) + sys.dist(y, x)};
    case ContractionKind::OrbitalKannan:
      return {lhs, sys.dist(x, tx) + sys.dist(y, ty) + sys.dist(tx, t2x)};
    case ContractionKind::OrbitalChatterjea:
      return {lhs, sys.dist(x, ty) + sys.dist(y, tx) + sys.dist(x, t2x) +
                       sys.dist(y, t2x) + sys.dist(tx, ty)};
    default: break;
  }
  return {0.0, 0.0};
}

template <MetricSystem S>
inline std::pair<double, double> eval_triple(const S& sys, int x, int y, int z) {
  const int tx = sys.image(x);
  const int ty = sys.image(y);
  const int tz = sys.image(z);
  return {sys.dist(tx, ty) + sys.dist(ty, tz) + sys.dist(tz, tx),
          fplab::perimeter(sys, x, y, z)};
}

/// Running best over scanned tuples. The comparison is a total order, so
/// chunked parallel scans merge to exactly the serial result.
struct ScanBest {
  bool any = false;
  bool infinite = false;
  double ratio = 0.0;  // lhs/rhs when finite
  double lhs = 0.0;
  double rhs = 0.0;
  std::array<int, 3> tuple{-1, -1, -1};
};

inline bool tuple_less(const std::array<int, 3>& a, const std::array<int, 3>& b) {
  return a < b;
}

/// True when `a` outranks `b`: infinite beats finite, then larger ratio,
/// then larger lhs, then lexicographically smaller tuple.
inline bool outranks(const ScanBest& a, const ScanBest& b) {
  if (!a.any) return false;
  if (!b.any) return true;
  if (a.infinite != b.infinite) return a.infinite;
  if (!a.infinite && a.ratio != b.ratio) return a.ratio > b.ratio;
  if (a.lhs != b.lhs) return a.lhs > b.lhs;
  return tuple_less(a.tuple, b.tuple);
}

struct ChunkResult {
  ScanBest best;
  long long admissible = 0;
};

template <MetricSystem S>
inline void scan_first_index(ContractionKind kind, const S& sys, double tol,
                             int i, ChunkResult& acc) {
  const int n = sys.size();
  auto offer = [&](double lhs, double rhs, int a, int b, int c) {
    ++acc.admissible;
    ScanBest cand;
    cand.any = true;
    cand.lhs = lhs;
    cand.rhs = rhs;
    cand.tuple = {a, b, c};
    if (rhs <= tol) {
      if (lhs <= tol) return;  // 0/0 carries no constraint
      cand.infinite = true;
    } else {
      cand.ratio = lhs / rhs;
    }
    if (outranks(cand, acc.best)) acc.best = cand;
  };

  if (uses_triples(kind)) {
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        auto [lhs, rhs] = eval_triple(sys, i, j, k);
        offer(lhs, rhs, i, j, k);
      }
  } else {
    for (int j = 0; j < n; ++j) {
      if (!admissible_pair(kind, sys, i, j)) continue;
      auto [lhs, rhs] = eval_pair(kind, sys, i, j);
      offer(lhs, rhs, i, j, -1);
    }
  }
}

}  // namespace detail

/// The two sides of the class inequality at one admissible tuple.
/// Pair classes ignore z (pass -1); throws InadmissibleTuple otherwise.
template <MetricSystem S>
std::pair<double, double> lhs_rhs(ContractionKind kind, const S& sys, int x,
                                  int y, int z = -1) {
  if (uses_triples(kind)) {
    if (x == y || y == z || x == z)
      throw InadmissibleTuple("triple points must be pairwise distinct");
    return detail::eval_triple(sys, x, y, z);
  }
  if (!detail::admissible_pair(kind, sys, x, y))
    throw InadmissibleTuple(std::string("pair fails the ") +
                            std::string(kind_name(kind)) +
                            " distinctness conditions");
  return detail::eval_pair(kind, sys, x, y);
}

/// Exact minimal constant for one class by exhaustive scan.
///
/// `threads` partitions the scan by first index; results are bit-identical
/// to the serial scan because the running-best comparison is a total order.
template <MetricSystem S>
ClassificationReport minimal_constant(ContractionKind kind, const S& sys,
                                      double tol = kDefaultTol,
                                      int threads = 1) {
  const int n = sys.size();
  detail::ChunkResult merged;

  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i)
      detail::scan_first_index(kind, sys, tol, i, merged);
  } else {
    std::vector<detail::ChunkResult> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < n; i += threads)
          detail::scan_first_index(kind, sys, tol, i, parts[static_cast<size_t>(t)]);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : parts) {
      merged.admissible += part.admissible;
      if (detail::outranks(part.best, merged.best)) merged.best = part.best;
    }
  }

  ClassificationReport r;
  r.kind = kind;
  r.threshold = threshold(kind);
  r.admissible_count = merged.admissible;
  if (merged.admissible == 0) {
    r.vacuous = true;
    r.member = true;  // definitional quantifier vacuously satisfied
    return r;
  }
  if (!merged.best.any) {
    // every admissible tuple was 0/0: any constant works
    r.minimal_constant = 0.0;
    r.member = true;
    return r;
  }
  r.witness.idx = merged.best.tuple;
  r.witness.arity = uses_triples(kind) ? 3 : 2;
  r.witness_lhs = merged.best.lhs;
  r.witness_rhs = merged.best.rhs;
  if (merged.best.infinite) {
    r.infinite = true;
    r.member = false;
    return r;
  }
  r.minimal_constant = merged.best.ratio;
  r.member = r.minimal_constant < r.threshold - tol;
  return r;
}

/// One report per class kind, in the kAllKinds order.
template <MetricSystem S>
std::vector<ClassificationReport> classify_all(const S& sys,
                                               double tol = kDefaultTol,
                                               int threads = 1) {
  std::vector<ClassificationReport> reports;
  reports.reserve(kAllKinds.size());
  for (ContractionKind k : kAllKinds)
    reports.push_back(minimal_constant(k, sys, tol, threads));
  return reports;
}

/// Numeric consistency check of a claimed contraction constant on a finite
/// sample. A pass is evidence on the sample, not a proof on the interval.
struct GridCheck {
  ClassificationReport scan;  // supremum scan of the class over the sample
  double claimed_constant = 0.0;
  bool pass = false;
};

template <MetricSystem S>
GridCheck grid_falsify(const S& sys, ContractionKind kind, double constant,
                       double tol = kDefaultTol, int threads = 1) {
  GridCheck check;
  check.scan = minimal_constant(kind, sys, tol, threads);
  check.claimed_constant = constant;
  check.pass = !check.scan.infinite &&
               (check.scan.vacuous ||
                check.scan.minimal_constant <= constant + tol);
  return check;
}

}  // namespace fplab
