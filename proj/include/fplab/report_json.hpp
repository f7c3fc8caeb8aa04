#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fplab/classifiers.hpp"
#include "fplab/common.hpp"
#include "fplab/corpus.hpp"
#include "fplab/dynamics.hpp"
#include "fplab/picard.hpp"

namespace fplab::io {

using ordered_json = nlohmann::ordered_json;

template <MetricSystem S>
ordered_json witness_json(const S& sys, const Witness& w) {
  ordered_json j = ordered_json::object();
  static constexpr const char* keys[3] = {"x", "y", "z"};
  for (int i = 0; i < w.arity; ++i) j[keys[i]] = sys.label(w.idx[i]);
  return j;
}

template <MetricSystem S>
ordered_json report_json(const S& sys, const ClassificationReport& r) {
  ordered_json j;
  j["class"] = std::string(kind_name(r.kind));
  j["member"] = r.member;
  j["threshold"] = round12(r.threshold);
  if (r.vacuous || r.infinite)
    j["minimal_constant"] = nullptr;
  else
    j["minimal_constant"] = round12(r.minimal_constant);
  j["vacuous"] = r.vacuous;
  j["infinite"] = r.infinite;
  if (r.witness.arity > 0) j["witness"] = witness_json(sys, r.witness);
  j["admissible_count"] = r.admissible_count;
  return j;
}

template <MetricSystem S>
ordered_json dynamics_json(const S& sys, const OrbitAnalysis& a) {
  ordered_json j;
  ordered_json fixed = ordered_json::array();
  for (int p : a.fixed_points) fixed.push_back(sys.label(p));
  ordered_json p2 = ordered_json::array();
  for (int p : a.period2_points) p2.push_back(sys.label(p));
  j["fixed_points"] = std::move(fixed);
  j["period2_points"] = std::move(p2);
  return j;
}

/// Appends the trace fields (iterates, stop, d_seq, p_seq) onto `j`.
template <MetricSystem S>
void append_trace_json(ordered_json& j, const S& sys, const PicardTrace& t) {
  ordered_json its = ordered_json::array();
  for (int x : t.iterates) its.push_back(sys.label(x));
  j["iterates"] = std::move(its);
  j["stop"] = std::string(stop_reason_name(t.stop));
  ordered_json d = ordered_json::array();
  for (double v : t.d_seq) d.push_back(round12(v));
  j["d_seq"] = std::move(d);
  ordered_json p = ordered_json::array();
  for (double v : t.p_seq) p.push_back(round12(v));
  j["p_seq"] = std::move(p);
}

inline ordered_json certificate_json(const ConvergenceCertificate& c) {
  ordered_json j;
  j["class"] = std::string(kind_name(c.kind));
  j["constant"] = round12(c.constant);
  j["rate"] = round12(c.rate);
  j["initial"] = round12(c.initial);
  j["initial_kind"] = c.uses_perimeter() ? "p_0" : "d_0";
  return j;
}

inline ordered_json trace_checks_json(const TraceCheckReport& r) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["index"] = c.index;
    j["lhs"] = round12(c.lhs);
    j["rhs"] = round12(c.rhs);
    j["pass"] = c.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline ordered_json corpus_checks_json(const std::vector<corpus::Check>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json j;
    j["name"] = c.name;
    j["expected"] = c.expected;
    j["actual"] = c.actual;
    j["pass"] = c.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace fplab::io
