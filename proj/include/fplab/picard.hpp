#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fplab/classifiers.hpp"
#include "fplab/common.hpp"
#include "fplab/metric_space.hpp"

namespace fplab {

enum class StopReason { Converged, MaxIterations, Period2Detected };

inline constexpr std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "converged";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::Period2Detected: return "period2_detected";
  }
  return "?";
}

/// Picard orbit x_0..x_N with the step distances d_n = d(x_n, x_{n+1})
/// and orbit-triangle perimeters p_n = d(x_n,x_{n+1}) + d(x_{n+1},x_{n+2})
/// + d(x_{n+2},x_n) the theorem proofs contract.
struct PicardTrace {
  std::vector<int> iterates;
  std::vector<double> d_seq;  // size iterates-1
  std::vector<double> p_seq;  // size max(0, iterates-2)
  StopReason stop = StopReason::MaxIterations;

  int steps() const { return static_cast<int>(iterates.size()) - 1; }

  /// First index whose iterate equals the final one; for converged traces
  /// this is the number of steps needed to reach the limit.
  int settled_at() const {
    const int last = iterates.back();
    for (int i = 0; i < static_cast<int>(iterates.size()); ++i)
      if (iterates[i] == last) return i;
    return steps();
  }
};

/// Iterates x_{n+1} = T x_n until d(x_n, x_{n+1}) <= eps (Converged),
/// x_{n+2} = x_n with x_{n+1} != x_n (Period2Detected, the theorems'
/// hypothesis fails on this orbit), or max_iter applications.
template <MetricSystem S>
PicardTrace run_picard(const S& sys, int start, double eps = kDefaultTol,
                       int max_iter = 10000) {
  if (!(eps > 0.0)) throw std::invalid_argument("run_picard: eps must be > 0");
  if (max_iter < 1) throw std::invalid_argument("run_picard: max_iter must be >= 1");

  PicardTrace t;
  t.iterates.push_back(start);
  for (int n = 0; n < max_iter; ++n) {
    const int prev = t.iterates.back();
    const int next = sys.image(prev);
    t.iterates.push_back(next);
    t.d_seq.push_back(sys.dist(prev, next));
    const int m = static_cast<int>(t.iterates.size()) - 1;
    if (m >= 2) {
      const int a = t.iterates[m - 2];
      t.p_seq.push_back(t.d_seq[m - 2] + t.d_seq[m - 1] + sys.dist(next, a));
    }
    if (t.d_seq.back() <= eps) {
      t.stop = StopReason::Converged;
      return t;
    }
    if (m >= 2 && sys.dist(next, t.iterates[m - 2]) <= eps &&
        t.d_seq[m - 2] > eps) {
      t.stop = StopReason::Period2Detected;
      return t;
    }
  }
  t.stop = StopReason::MaxIterations;
  return t;
}

/// A-priori error bound derived from the theorem proofs: after n steps the
/// distance from x_n to the limit is at most rate^(n-1)/(1-rate) * initial,
/// where initial is p_0 for the perimeter-contracting classes and d_0 for
/// the Kannan variant.
struct ConvergenceCertificate {
  ContractionKind kind{};
  double constant = 0.0;  // the class constant the instance satisfies
  double rate = 0.0;      // derived contraction rate, < 1
  double initial = 0.0;   // p_0 or d_0 of the orbit being certified

  bool uses_perimeter() const { return kind != ContractionKind::OrbitalKannan; }

  double bound(int n) const {
    if (initial == 0.0) return 0.0;
    return std::pow(rate, n - 1) / (1.0 - rate) * initial;
  }

  /// Smallest n >= 1 with bound(n) <= eps, computed by the closed-form
  /// logarithm and then adjusted by direct evaluation so floating-point
  /// boundary cases cannot shift the answer.
  int n_required(double eps) const {
    if (!(eps > 0.0)) throw std::invalid_argument("n_required: eps must be > 0");
    if (initial == 0.0) return 1;
    if (bound(1) <= eps) return 1;
    if (rate == 0.0) return 2;  // bound(n) = 0 for n >= 2
    const double estimate =
        1.0 + std::log(eps * (1.0 - rate) / initial) / std::log(rate);
    int n = static_cast<int>(std::ceil(estimate));
    if (n < 1) n = 1;
    while (bound(n) > eps) ++n;
    while (n > 1 && bound(n - 1) <= eps) --n;
    return n;
  }
};

/// Builds the certificate for one of the three theorem classes. The rate
/// is the constant itself for the plain orbital class, beta/(2-2*beta) for
/// the Kannan variant and gamma/(1-gamma) for the Chatterjea variant.
inline ConvergenceCertificate make_certificate(ContractionKind kind,
                                               double constant,
                                               double initial_quantity) {
  ConvergenceCertificate c;
  c.kind = kind;
  c.constant = constant;
  c.initial = initial_quantity;
  if (constant < 0.0 || initial_quantity < 0.0)
    throw std::invalid_argument("make_certificate: negative inputs");
  if (!(constant < threshold(kind)))
    throw std::invalid_argument(
        "make_certificate: constant at or above the class threshold");
  switch (kind) {
    case ContractionKind::OrbitalTriangular:
      c.rate = constant;
      break;
    case ContractionKind::OrbitalKannan:
      c.rate = constant / (2.0 - 2.0 * constant);
      break;
    case ContractionKind::OrbitalChatterjea:
      c.rate = constant / (1.0 - constant);
      break;
    default:
      throw std::invalid_argument(
          "make_certificate: no certificate form for this class");
  }
  return c;
}

/// One verified inequality from a trace; lhs <= rhs must hold.
struct TraceCheck {
  std::string name;
  int index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct TraceCheckReport {
  std::vector<TraceCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  const TraceCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

/// The orbit quantity the certificate's bound starts from: p_0 for the
/// perimeter-based classes, d_0 for the Kannan variant. Traces shorter
/// than three iterates fall back to the degenerate perimeter.
inline double initial_quantity(ContractionKind kind, const PicardTrace& t) {
  if (kind == ContractionKind::OrbitalKannan)
    return t.d_seq.empty() ? 0.0 : t.d_seq.front();
  if (!t.p_seq.empty()) return t.p_seq.front();
  return t.d_seq.empty() ? 0.0 : 2.0 * t.d_seq.front();
}

/// Verifies the per-step contraction inequality of the certificate's class
/// along the trace and, for converged traces, the distance-to-limit bound
/// at every n >= 1. Indices where the orbit has already reached a fixed
/// point are skipped: the proofs' derivations assume the iterate is not
/// yet fixed.
template <MetricSystem S>
TraceCheckReport check_trace(const S& sys, const PicardTrace& trace,
                             const ConvergenceCertificate& cert,
                             double tol = kDefaultTol) {
  TraceCheckReport report;

  if (cert.uses_perimeter()) {
    for (int i = 1; i < static_cast<int>(trace.p_seq.size()); ++i) {
      if (trace.d_seq[i - 1] <= tol || trace.d_seq[i] <= tol) continue;
      TraceCheck c;
      c.name = "p_step";
      c.index = i;
      c.lhs = trace.p_seq[i];
      c.rhs = cert.rate * trace.p_seq[i - 1];
      c.pass = c.lhs <= c.rhs + tol;
      report.checks.push_back(c);
    }
  } else {
    for (int n = 0; n + 1 < static_cast<int>(trace.d_seq.size()); ++n) {
      if (trace.d_seq[n] <= tol) continue;
      TraceCheck c;
      c.name = "d_step";
      c.index = n;
      c.lhs = trace.d_seq[n + 1];
      c.rhs = cert.rate * trace.d_seq[n];
      c.pass = c.lhs <= c.rhs + tol;
      report.checks.push_back(c);
    }
  }

  if (trace.stop == StopReason::Converged) {
    const int last = trace.iterates.back();
    for (int n = 1; n < static_cast<int>(trace.iterates.size()); ++n) {
      TraceCheck c;
      c.name = "limit_bound";
      c.index = n;
      c.lhs = sys.dist(trace.iterates[n], last);
      c.rhs = cert.bound(n);
      c.pass = c.lhs <= c.rhs + tol;
      report.checks.push_back(c);
    }
  }
  return report;
}

}  // namespace fplab
