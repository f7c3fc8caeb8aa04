#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fplab/classifiers.hpp"
#include "fplab/common.hpp"
#include "fplab/dynamics.hpp"
#include "fplab/metric_space.hpp"
#include "fplab/picard.hpp"
#include "fplab/sampled_system.hpp"

namespace fplab::corpus {

/// A validated space together with its self-map.
struct Instance {
  FiniteMetricSpace space;
  SelfMap map;

  SpaceMapView view() const { return SpaceMapView(space, map); }
};

inline Instance make_instance(std::vector<std::string> labels,
                              const std::vector<std::vector<double>>& matrix,
                              std::vector<int> image) {
  auto validation = validate_metric(std::move(labels), matrix);
  if (!validation.ok())
    throw std::logic_error("corpus instance failed metric validation");
  return {*std::move(validation.space), SelfMap(std::move(image))};
}

/// Four points A,B,C,D with d(A,*)=4, d(B,C)=d(C,D)=1, d(B,D)=2 and the
/// map A->C, B->B, C->C, D->D. Not Banach, not Kannan, orbital-Kannan
/// with constant 1/2; three fixed points.
inline Instance fig1() {
  return make_instance({"A", "B", "C", "D"},
                       {{0, 4, 4, 4},
                        {4, 0, 1, 2},
                        {4, 1, 0, 1},
                        {4, 2, 1, 0}},
                       {2, 1, 2, 3});
}

/// {0,1,2,3} with |x-y| and T0=T1=T2=0, T3=2. Not Chatterjea,
/// orbital-Chatterjea with constant 2/5; unique fixed point 0.
inline Instance chatterjea4() {
  return make_instance({"0", "1", "2", "3"},
                       {{0, 1, 2, 3},
                        {1, 0, 1, 2},
                        {2, 1, 0, 1},
                        {3, 2, 1, 0}},
                       {0, 0, 0, 2});
}

/// Two points exchanged by the map: period-2 everywhere, no fixed point.
/// The orbital classes are all vacuous here, so the fixed-point theorems
/// say nothing, and indeed their conclusion fails.
inline Instance two_point_swap() {
  return make_instance({"a", "b"}, {{0, 1}, {1, 0}}, {1, 0});
}

/// Identity map on the four-point line: every point fixed, the strict
/// orbital class vacuous.
inline Instance identity_line4() {
  return make_instance({"0", "1", "2", "3"},
                       {{0, 1, 2, 3},
                        {1, 0, 1, 2},
                        {2, 1, 0, 1},
                        {3, 2, 1, 0}},
                       {0, 1, 2, 3});
}

inline SampledSystem remark4(int grid_size = 1000) {
  return make_remark4_system(grid_size);
}

/// One expected-vs-computed comparison from the embedded corpus.
struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

inline Check check_num(std::string name, double expected, double actual,
                       double tol) {
  Check c{std::move(name), format_g12(expected), format_g12(actual), false};
  c.pass = std::abs(expected - actual) <= tol;
  return c;
}

inline Check check_str(std::string name, std::string expected,
                       std::string actual) {
  Check c{std::move(name), std::move(expected), std::move(actual), false};
  c.pass = c.expected == c.actual;
  return c;
}

inline Check check_flag(std::string name, bool expected, bool actual) {
  return check_str(std::move(name), expected ? "true" : "false",
                   actual ? "true" : "false");
}

namespace detail {

template <MetricSystem S>
std::string witness_labels(const S& sys, const Witness& w) {
  std::string out;
  for (int i = 0; i < w.arity; ++i) {
    if (i) out += ",";
    out += sys.label(w.idx[i]);
  }
  return out;
}

template <MetricSystem S>
std::string point_set_labels(const S& sys, const std::vector<int>& pts) {
  std::string out;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ",";
    out += sys.label(pts[i]);
  }
  return out;
}

inline std::string verdict(const ClassificationReport& r) {
  if (r.vacuous) return "vacuous";
  if (r.infinite) return "infinite";
  return format_g12(r.minimal_constant);
}

}  // namespace detail

/// Evaluates every embedded paper assertion: the two worked examples, the
/// discontinuous-map grid, and the hypothesis-necessity cases. The exact
/// comparisons use 1e-12; grid comparisons use the supplied tol.
inline std::vector<Check> run_all(double tol = kDefaultTol) {
  std::vector<Check> out;
  const double exact = 1e-12;
  auto push = [&](Check c) { out.push_back(std::move(c)); };

  // ---- Figure 1 instance ------------------------------------------------
  {
    const Instance inst = fig1();
    const auto sys = inst.view();

    push(check_num("fig1: d(A,B)", 4.0, sys.dist(0, 1), exact));
    push(check_str("fig1: iterate(A,2)", "C",
                   sys.label(inst.map.iterate(0, 2))));
    push(check_num("fig1: perimeter(A,B,D)", 10.0,
                   inst.space.perimeter(0, 1, 3), exact));

    auto [kan_lhs, kan_rhs] = lhs_rhs(ContractionKind::Kannan, sys, 1, 3);
    push(check_num("fig1: kannan lhs(B,D)", 2.0, kan_lhs, exact));
    push(check_num("fig1: kannan rhs(B,D)", 0.0, kan_rhs, exact));

    auto [ok_ab_l, ok_ab_r] = lhs_rhs(ContractionKind::OrbitalKannan, sys, 0, 1);
    auto [ok_ad_l, ok_ad_r] = lhs_rhs(ContractionKind::OrbitalKannan, sys, 0, 3);
    push(check_num("fig1: orbital-kannan lhs(A,B)", 2.0, ok_ab_l, exact));
    push(check_num("fig1: orbital-kannan rhs(A,B)", 4.0, ok_ab_r, exact));
    push(check_num("fig1: orbital-kannan lhs(A,D)", 2.0, ok_ad_l, exact));
    push(check_num("fig1: orbital-kannan rhs(A,D)", 4.0, ok_ad_r, exact));

    const auto banach = minimal_constant(ContractionKind::Banach, sys, tol);
    push(check_num("fig1: banach minimal constant", 1.0,
                   banach.minimal_constant, exact));
    push(check_flag("fig1: banach member", false, banach.member));
    push(check_str("fig1: banach witness", "B,D",
                   detail::witness_labels(sys, banach.witness)));
    push(check_num("fig1: banach witness lhs d(TB,TD)", 2.0, banach.witness_lhs,
                   exact));
    push(check_num("fig1: banach witness rhs d(B,D)", 2.0, banach.witness_rhs,
                   exact));

    const auto kannan = minimal_constant(ContractionKind::Kannan, sys, tol);
    push(check_flag("fig1: kannan infinite verdict", true, kannan.infinite));
    push(check_flag("fig1: kannan member", false, kannan.member));
    push(check_str("fig1: kannan witness", "B,D",
                   detail::witness_labels(sys, kannan.witness)));

    const auto ok = minimal_constant(ContractionKind::OrbitalKannan, sys, tol);
    push(check_num("fig1: orbital-kannan minimal constant", 0.5,
                   ok.minimal_constant, exact));
    push(check_flag("fig1: orbital-kannan member", true, ok.member));

    push(check_str("fig1: fixed points", "B,C,D",
                   detail::point_set_labels(sys, fixed_points(sys))));
    push(check_str("fig1: period-2 points", "",
                   detail::point_set_labels(sys, period2_points(sys))));

    const auto orbits = analyze(sys).orbits;
    push(check_str("fig1: orbit of A lands on", "C", sys.label(orbits[0].limit)));
    push(check_num("fig1: orbit of A steps", 1.0, orbits[0].steps, exact));

    const auto trace = run_picard(sys, 0, tol);
    push(check_str("fig1: picard from A stops", "converged",
                   std::string(stop_reason_name(trace.stop))));
    push(check_str("fig1: picard from A limit", "C",
                   sys.label(trace.iterates.back())));
    const auto cert = make_certificate(ContractionKind::OrbitalKannan,
                                       ok.minimal_constant,
                                       initial_quantity(ContractionKind::OrbitalKannan, trace));
    push(check_num("fig1: certificate rate at beta=1/2", 0.5, cert.rate, exact));
    push(check_num("fig1: trace d_0", 4.0, trace.d_seq[0], exact));
    push(check_num("fig1: trace d_1", 0.0, trace.d_seq[1], exact));
    push(check_flag("fig1: trace satisfies certificate", true,
                    check_trace(sys, trace, cert, tol).all_pass()));
  }

  // ---- {0,1,2,3} instance -----------------------------------------------
  {
    const Instance inst = chatterjea4();
    const auto sys = inst.view();

    push(check_str("chat4: iterate(3,1)", "2", sys.label(inst.map.iterate(3, 1))));
    push(check_str("chat4: iterate(3,2)", "0", sys.label(inst.map.iterate(3, 2))));
    push(check_num("chat4: perimeter(0,1,2)", 4.0,
                   inst.space.perimeter(0, 1, 2), exact));

    // R(0,1) = d(0,T1)+d(1,T0)+d(0,T^2 0)+d(1,T^2 0)+d(T0,T1) = 0+1+0+1+0
    struct Row { int x, y; double l, r; };
    const Row table[] = {
        {0, 1, 0, 2},  {0, 2, 0, 4},  {1, 2, 0, 6},  {2, 1, 0, 6},
        {0, 3, 4, 10}, {3, 0, 4, 10}, {1, 3, 4, 10}, {3, 1, 4, 10},
        {2, 3, 4, 10},
    };
    for (const auto& row : table) {
      auto [l, r] = lhs_rhs(ContractionKind::OrbitalChatterjea, sys, row.x, row.y);
      const std::string key = "(" + sys.label(row.x) + "," + sys.label(row.y) + ")";
      push(check_num("chat4: L" + key, row.l, l, exact));
      push(check_num("chat4: R" + key, row.r, r, exact));
    }

    const auto chat = minimal_constant(ContractionKind::Chatterjea, sys, tol);
    push(check_flag("chat4: chatterjea member", false, chat.member));
    push(check_str("chat4: chatterjea witness", "2,3",
                   detail::witness_labels(sys, chat.witness)));
    push(check_num("chat4: chatterjea witness lhs d(T2,T3)", 2.0,
                   chat.witness_lhs, exact));
    push(check_num("chat4: chatterjea witness rhs", 3.0, chat.witness_rhs,
                   exact));
    push(check_num("chat4: chatterjea minimal constant", 2.0 / 3.0,
                   chat.minimal_constant, exact));

    const auto oc = minimal_constant(ContractionKind::OrbitalChatterjea, sys, tol);
    push(check_num("chat4: orbital-chatterjea minimal constant", 0.4,
                   oc.minimal_constant, exact));
    push(check_flag("chat4: orbital-chatterjea member", true, oc.member));
    push(check_str("chat4: orbital-chatterjea witness", "0,3",
                   detail::witness_labels(sys, oc.witness)));
    push(check_num("chat4: orbital-chatterjea admissible pairs", 9.0,
                   static_cast<double>(oc.admissible_count), exact));

    push(check_str("chat4: fixed points", "0",
                   detail::point_set_labels(sys, fixed_points(sys))));
    push(check_str("chat4: period-2 points", "",
                   detail::point_set_labels(sys, period2_points(sys))));
    const auto orbits = analyze(sys).orbits;
    bool within2 = true;
    for (const auto& o : orbits) within2 = within2 && !o.cyclic && o.steps <= 2;
    push(check_flag("chat4: every orbit reaches 0 within 2 steps", true, within2));

    const auto trace = run_picard(sys, 3, tol);
    std::string its;
    for (size_t i = 0; i < trace.iterates.size(); ++i)
      its += (i ? "," : "") + sys.label(trace.iterates[i]);
    push(check_str("chat4: picard from 3 iterates", "3,2,0,0", its));
    push(check_str("chat4: picard from 3 stops", "converged",
                   std::string(stop_reason_name(trace.stop))));
    push(check_num("chat4: trace p_0", 6.0, trace.p_seq[0], exact));
    push(check_num("chat4: trace p_1", 4.0, trace.p_seq[1], exact));

    const auto cert = make_certificate(ContractionKind::OrbitalChatterjea,
                                       oc.minimal_constant,
                                       initial_quantity(ContractionKind::OrbitalChatterjea, trace));
    push(check_num("chat4: certificate rate at gamma=2/5", 2.0 / 3.0, cert.rate,
                   exact));
    push(check_flag("chat4: tight step p_1 <= (2/3) p_0", true,
                    trace.p_seq[1] <= cert.rate * trace.p_seq[0] + exact));
    push(check_flag("chat4: trace satisfies certificate", true,
                    check_trace(sys, trace, cert, tol).all_pass()));
  }

  // ---- Discontinuous map on [0,1], sampled ------------------------------
  {
    const SampledSystem grid = remark4(1000);

    const auto orb = minimal_constant(ContractionKind::OrbitalTriangular, grid, tol);
    push(check_flag("remark4: orbital ratio <= 2/3", true,
                    orb.minimal_constant <= 2.0 / 3.0 + tol));
    push(check_num("remark4: orbital supremum", 1.0 / 3.0,
                   orb.minimal_constant, tol));
    push(check_flag("remark4: orbital member", true, orb.member));
    push(check_flag("remark4: passes claimed constant 2/3", true,
                    grid_falsify(grid, ContractionKind::OrbitalTriangular,
                                 2.0 / 3.0, tol).pass));
    push(check_flag("remark4: passes derived constant 1/3", true,
                    grid_falsify(grid, ContractionKind::OrbitalTriangular,
                                 1.0 / 3.0, tol).pass));

    const auto banach = minimal_constant(ContractionKind::Banach, grid, tol);
    push(check_flag("remark4: banach ratio exceeds 0.99", true,
                    banach.minimal_constant > 0.99));
    push(check_flag("remark4: fails claimed banach constant 0.99", false,
                    grid_falsify(grid, ContractionKind::Banach, 0.99, tol).pass));

    const auto trace = run_picard(grid, grid.size() - 1, tol);
    push(check_str("remark4: picard from 1 stops", "converged",
                   std::string(stop_reason_name(trace.stop))));
    push(check_str("remark4: picard from 1 limit", "0",
                   grid.label(trace.iterates.back())));
    push(check_num("remark4: p_0 of orbit (1, 1/4, 0)", 2.0,
                   initial_quantity(ContractionKind::OrbitalTriangular, trace),
                   exact));

    const auto cert = make_certificate(ContractionKind::OrbitalTriangular,
                                       2.0 / 3.0, 2.0);
    push(check_num("remark4: n_required(1e-6) at alpha=2/3, p0=2", 40.0,
                   cert.n_required(1e-6), exact));
    push(check_flag("remark4: bound(40) <= 1e-6", true, cert.bound(40) <= 1e-6));
    push(check_flag("remark4: bound(39) > 1e-6", true, cert.bound(39) > 1e-6));
    push(check_flag("remark4: trace satisfies certificate", true,
                    check_trace(grid, trace, cert, tol).all_pass()));
  }

  // ---- Hypothesis-necessity cases ----------------------------------------
  {
    const Instance swap = two_point_swap();
    const auto sys = swap.view();
    const auto orb = minimal_constant(ContractionKind::OrbitalTriangular, sys, tol);
    push(check_flag("swap: orbital vacuous", true, orb.vacuous));
    push(check_flag("swap: orbital member (vacuously)", true, orb.member));
    push(check_str("swap: period-2 points", "a,b",
                   detail::point_set_labels(sys, period2_points(sys))));
    push(check_str("swap: fixed points", "",
                   detail::point_set_labels(sys, fixed_points(sys))));
    push(check_str("swap: picard from a stops", "period2_detected",
                   std::string(stop_reason_name(run_picard(sys, 0, tol).stop))));
  }
  {
    const Instance ident = identity_line4();
    const auto sys = ident.view();
    const auto strict =
        minimal_constant(ContractionKind::OrbitalTriangularStrict, sys, tol);
    push(check_flag("identity: orbital-strict vacuous", true, strict.vacuous));
    push(check_num("identity: all points fixed", 4.0,
                   static_cast<double>(fixed_points(sys).size()), exact));
  }

  // ---- Certificate arithmetic --------------------------------------------
  {
    push(check_num("certificate: lambda at beta=1/2", 0.5,
                   make_certificate(ContractionKind::OrbitalKannan, 0.5, 1.0).rate,
                   exact));
    push(check_num("certificate: mu at gamma=2/5", 2.0 / 3.0,
                   make_certificate(ContractionKind::OrbitalChatterjea, 0.4, 1.0).rate,
                   exact));
    push(check_num("certificate: n_required with zero initial", 1.0,
                   make_certificate(ContractionKind::OrbitalTriangular, 0.5, 0.0)
                       .n_required(1e-6),
                   exact));
  }

  return out;
}

}  // namespace fplab::corpus
