#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fplab/classifiers.hpp"
#include "fplab/common.hpp"
#include "fplab/corpus.hpp"
#include "fplab/dynamics.hpp"
#include "fplab/generator.hpp"
#include "fplab/instance_io.hpp"
#include "fplab/metric_space.hpp"
#include "fplab/picard.hpp"
#include "fplab/report_json.hpp"
#include "fplab/sampled_system.hpp"
#include "fplab/version.hpp"

namespace fplab::cli {

// Exit-code contract: 0 success, 1 domain verdict failure (invalid metric,
// failed assertion, violated hypothesis), 2 usage or IO error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitUsage = 2;

// Classifier scan caps; quadratic classes up to 2000 points, the cubic
// triple class up to 300.
inline constexpr int kMaxPairPoints = 2000;
inline constexpr int kMaxTriplePoints = 300;

namespace detail {

struct LoadedInstance {
  std::string bytes;
  FiniteMetricSpace space;
  SelfMap map;
};

/// Reads, parses and validates an instance file. Returns the loaded
/// instance or an exit code in `rc` (violations / parse message on err).
inline std::optional<LoadedInstance> load_instance(const std::string& path,
                                                   double tol,
                                                   std::ostream& out,
                                                   std::ostream& err,
                                                   int& rc) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << path << "\n";
    rc = kExitUsage;
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();

  io::RawInstance raw;
  try {
    raw = io::parse_instance_text(bytes);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    rc = kExitUsage;
    return std::nullopt;
  }

  auto validation = validate_metric(raw.points, raw.distance, tol);
  if (!validation.ok()) {
    out << "invalid metric space: " << validation.violations.size()
        << " violation(s)\n";
    for (const auto& v : validation.violations)
      out << "  " << describe(v, raw.points) << "\n";
    rc = kExitVerdict;
    return std::nullopt;
  }
  return LoadedInstance{std::move(bytes), *std::move(validation.space),
                        SelfMap(std::move(raw.map))};
}

inline std::string witness_text(const SpaceMapView& sys, const Witness& w) {
  std::string out = "(";
  for (int i = 0; i < w.arity; ++i) {
    if (i) out += ",";
    out += sys.label(w.idx[i]);
  }
  return out + ")";
}

inline std::string constant_text(const ClassificationReport& r) {
  if (r.vacuous) return "vacuous";
  if (r.infinite) return "infinite";
  return format_g12(r.minimal_constant);
}

inline double env_default_tol() {
  if (const char* env = std::getenv("FPLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultTol;
}

inline long long elapsed_ms_since(
    std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace detail

struct CommonFlags {
  double tol = detail::env_default_tol();
  bool json = false;
  int threads = 1;
};

inline int cmd_validate(const std::string& path, const CommonFlags& flags,
                        std::ostream& out, std::ostream& err) {
  int rc = kExitOk;
  auto loaded = detail::load_instance(path, flags.tol, out, err, rc);
  if (!loaded) return rc;
  if (flags.json) {
    io::ordered_json j;
    j["valid"] = true;
    j["points"] = loaded->space.size();
    out << j.dump(2) << "\n";
  } else {
    out << "valid\n";
  }
  return kExitOk;
}

inline int cmd_classify(const std::string& path,
                        const std::vector<std::string>& class_names,
                        const CommonFlags& flags, std::ostream& out,
                        std::ostream& err) {
  int rc = kExitOk;
  auto loaded = detail::load_instance(path, flags.tol, out, err, rc);
  if (!loaded) return rc;
  const SpaceMapView sys(loaded->space, loaded->map);
  const int n = sys.size();
  if (n > kMaxPairPoints) {
    err << "error: instance has " << n << " points, classify caps at "
        << kMaxPairPoints << "\n";
    return kExitUsage;
  }

  std::vector<ContractionKind> kinds;
  if (class_names.empty()) {
    kinds.assign(kAllKinds.begin(), kAllKinds.end());
    if (n > kMaxTriplePoints) {
      std::erase(kinds, ContractionKind::PerimeterTriangle);
      err << "note: skipping perimeter_triangle above " << kMaxTriplePoints
          << " points\n";
    }
  } else {
    for (const auto& name : class_names) {
      ContractionKind k;
      if (!parse_kind(name, k)) {
        err << "error: unknown class " << name << "\n";
        return kExitUsage;
      }
      if (uses_triples(k) && n > kMaxTriplePoints) {
        err << "error: " << name << " caps at " << kMaxTriplePoints
            << " points\n";
        return kExitUsage;
      }
      kinds.push_back(k);
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<ClassificationReport> reports;
  reports.reserve(kinds.size());
  for (ContractionKind k : kinds)
    reports.push_back(minimal_constant(k, sys, flags.tol, flags.threads));
  const auto orbit_analysis = analyze(sys);
  err << "elapsed_ms=" << detail::elapsed_ms_since(start) << "\n";

  if (flags.json) {
    io::ordered_json j;
    j["version"] = kVersion;
    j["input_digest"] = digest_hex(loaded->bytes);
    j["tol"] = round12(flags.tol);
    io::ordered_json arr = io::ordered_json::array();
    for (const auto& r : reports) arr.push_back(io::report_json(sys, r));
    j["classes"] = std::move(arr);
    j["dynamics"] = io::dynamics_json(sys, orbit_analysis);
    out << j.dump(2) << "\n";
  } else {
    out << "instance: " << path << " (" << n << " points, digest "
        << digest_hex(loaded->bytes) << ")\n";
    for (const auto& r : reports) {
      out << "  " << kind_name(r.kind) << ": "
          << (r.member ? "member" : "non-member")
          << ", minimal constant " << detail::constant_text(r)
          << " (threshold " << format_g12(r.threshold) << ")";
      if (r.witness.arity > 0)
        out << ", witness " << detail::witness_text(sys, r.witness);
      out << ", admissible " << r.admissible_count << "\n";
    }
    out << "  fixed points:";
    for (int p : orbit_analysis.fixed_points) out << " " << sys.label(p);
    out << "\n  period-2 points:";
    for (int p : orbit_analysis.period2_points) out << " " << sys.label(p);
    out << "\n";
  }
  return kExitOk;
}

inline int cmd_fixed_points(const std::string& path, const CommonFlags& flags,
                            std::ostream& out, std::ostream& err) {
  int rc = kExitOk;
  auto loaded = detail::load_instance(path, flags.tol, out, err, rc);
  if (!loaded) return rc;
  const SpaceMapView sys(loaded->space, loaded->map);
  const auto a = analyze(sys);

  if (flags.json) {
    io::ordered_json j;
    j["version"] = kVersion;
    j["input_digest"] = digest_hex(loaded->bytes);
    j["dynamics"] = io::dynamics_json(sys, a);
    io::ordered_json orbits = io::ordered_json::array();
    for (int i = 0; i < sys.size(); ++i) {
      io::ordered_json o;
      o["start"] = sys.label(i);
      if (a.orbits[i].cyclic) {
        o["cyclic"] = true;
      } else {
        o["limit"] = sys.label(a.orbits[i].limit);
        o["steps"] = a.orbits[i].steps;
      }
      orbits.push_back(std::move(o));
    }
    j["orbits"] = std::move(orbits);
    out << j.dump(2) << "\n";
  } else {
    out << "fixed points:";
    for (int p : a.fixed_points) out << " " << sys.label(p);
    out << "\nperiod-2 points:";
    for (int p : a.period2_points) out << " " << sys.label(p);
    out << "\n";
    for (int i = 0; i < sys.size(); ++i) {
      out << "orbit " << sys.label(i) << ": ";
      if (a.orbits[i].cyclic)
        out << "cyclic\n";
      else
        out << "reaches " << sys.label(a.orbits[i].limit) << " in "
            << a.orbits[i].steps << " step(s)\n";
    }
  }
  return kExitOk;
}

namespace detail {

/// Picks the certificate class for `picard` when none was requested:
/// the member, non-vacuous theorem class with the smallest derived rate
/// (ties resolved in enum order).
inline std::optional<ConvergenceCertificate> auto_certificate(
    const SpaceMapView& sys, const PicardTrace& trace, double tol) {
  static constexpr ContractionKind kCertKinds[] = {
      ContractionKind::OrbitalTriangular,
      ContractionKind::OrbitalKannan,
      ContractionKind::OrbitalChatterjea,
  };
  std::optional<ConvergenceCertificate> best;
  for (ContractionKind k : kCertKinds) {
    const auto report = minimal_constant(k, sys, tol);
    if (!report.member || report.vacuous || report.infinite) continue;
    auto cert = make_certificate(k, report.minimal_constant,
                                 initial_quantity(k, trace));
    if (!best || cert.rate < best->rate) best = cert;
  }
  return best;
}

}  // namespace detail

inline int cmd_picard(const std::string& path, const std::string& start_label,
                      double eps, int max_iter,
                      const std::string& class_name,
                      std::optional<double> constant,
                      const CommonFlags& flags, std::ostream& out,
                      std::ostream& err) {
  int rc = kExitOk;
  auto loaded = detail::load_instance(path, flags.tol, out, err, rc);
  if (!loaded) return rc;
  const SpaceMapView sys(loaded->space, loaded->map);

  const int start = loaded->space.index_of(start_label);
  if (start < 0) {
    err << "error: unknown start point " << start_label << "\n";
    return kExitUsage;
  }
  if (!(eps > 0.0) || max_iter < 1) {
    err << "error: need eps > 0 and max-iter >= 1\n";
    return kExitUsage;
  }

  const PicardTrace trace = run_picard(sys, start, eps, max_iter);

  std::optional<ConvergenceCertificate> cert;
  if (!class_name.empty()) {
    ContractionKind kind;
    if (!parse_kind(class_name, kind)) {
      err << "error: unknown class " << class_name << "\n";
      return kExitUsage;
    }
    double c = 0.0;
    if (constant) {
      c = *constant;
    } else {
      const auto report = minimal_constant(kind, sys, flags.tol);
      if (report.vacuous || report.infinite || !report.member) {
        err << "error: instance is not a " << class_name
            << " member, pass --constant explicitly\n";
        return kExitUsage;
      }
      c = report.minimal_constant;
    }
    try {
      cert = make_certificate(kind, c, initial_quantity(kind, trace));
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  } else {
    cert = detail::auto_certificate(sys, trace, flags.tol);
  }

  std::optional<TraceCheckReport> checks;
  if (cert) checks = check_trace(sys, trace, *cert, flags.tol);

  if (flags.json) {
    io::ordered_json j;
    j["version"] = kVersion;
    j["input_digest"] = digest_hex(loaded->bytes);
    j["eps"] = round12(eps);
    io::append_trace_json(j, sys, trace);
    if (cert) {
      j["certificate"] = io::certificate_json(*cert);
      j["checks"] = io::trace_checks_json(*checks);
      j["bound_checks"] = checks->all_pass() ? "pass" : "fail";
    }
    out << j.dump(2) << "\n";
  } else {
    out << "iterates:";
    for (int x : trace.iterates) out << " " << sys.label(x);
    out << "\nstop: " << stop_reason_name(trace.stop) << "\n";
    if (trace.stop == StopReason::Converged)
      out << "converged to " << sys.label(trace.iterates.back()) << " in "
          << trace.settled_at() << " step(s)\n";
    if (cert) {
      out << "certificate: class " << kind_name(cert->kind) << ", constant "
          << format_g12(cert->constant) << ", rate " << format_g12(cert->rate)
          << ", initial " << (cert->uses_perimeter() ? "p_0" : "d_0") << " = "
          << format_g12(cert->initial) << "\n";
      out << "bound checks: " << (checks->all_pass() ? "pass" : "fail") << "\n";
      if (const auto* fail = checks->first_failure())
        out << "  first failure: " << fail->name << "[" << fail->index
            << "] lhs " << format_g12(fail->lhs) << " > rhs "
            << format_g12(fail->rhs) << "\n";
    }
  }

  if (trace.stop == StopReason::Period2Detected) {
    err << "error: orbit hit a periodic point of prime period 2; the "
           "fixed-point theorems' hypothesis fails on this instance\n";
    return kExitVerdict;
  }
  if (checks && !checks->all_pass()) {
    err << "error: trace violates the certificate inequalities (wrong class "
           "or constant?)\n";
    return kExitVerdict;
  }
  return kExitOk;
}

inline int cmd_generate(int n, std::uint64_t seed, const std::string& style,
                        double lo, double hi, std::ostream& out,
                        std::ostream& err) {
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.lo = lo;
  cfg.hi = hi;
  if (!parse_map_style(style, cfg.style)) {
    err << "error: unknown map style " << style << "\n";
    return kExitUsage;
  }
  if (n < 2) {
    err << "error: n must be >= 2\n";
    return kExitUsage;
  }
  if (!(lo > 0.0) || !(hi >= lo)) {
    err << "error: need 0 < lo <= hi\n";
    return kExitUsage;
  }
  const auto inst = generate_instance(cfg);
  out << io::dump_instance(inst.space, inst.map);
  return kExitOk;
}

inline int cmd_paper_examples(const CommonFlags& flags, std::ostream& out,
                              std::ostream& err) {
  const auto checks = corpus::run_all(flags.tol);
  size_t passed = 0;
  for (const auto& c : checks) passed += c.pass ? 1 : 0;

  if (flags.json) {
    io::ordered_json j;
    j["version"] = kVersion;
    j["checks"] = io::corpus_checks_json(checks);
    j["passed"] = passed;
    j["total"] = checks.size();
    j["pass"] = passed == checks.size();
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : checks)
      out << (c.pass ? "  ok  " : " FAIL ") << c.name << ": expected "
          << c.expected << ", got " << c.actual << "\n";
    out << passed << "/" << checks.size() << " corpus assertions passed\n";
  }
  if (passed != checks.size()) {
    for (const auto& c : checks)
      if (!c.pass) {
        err << "error: first failing assertion: " << c.name << "\n";
        break;
      }
    return kExitVerdict;
  }
  return kExitOk;
}

inline int cmd_grid_check(const std::string& family, int grid_size,
                          const std::string& class_name,
                          std::optional<double> alpha,
                          const CommonFlags& flags, std::ostream& out,
                          std::ostream& err) {
  if (family != "remark4") {
    err << "error: unknown family " << family << " (built-in: remark4)\n";
    return kExitUsage;
  }
  ContractionKind kind = ContractionKind::OrbitalTriangular;
  if (!class_name.empty() && !parse_kind(class_name, kind)) {
    err << "error: unknown class " << class_name << "\n";
    return kExitUsage;
  }
  if (uses_triples(kind) && grid_size + 1 > kMaxTriplePoints) {
    err << "error: " << kind_name(kind) << " caps at " << kMaxTriplePoints
        << " points\n";
    return kExitUsage;
  }
  const SampledSystem grid = make_remark4_system(grid_size, flags.tol);

  const auto start = std::chrono::steady_clock::now();
  const auto check = grid_falsify(grid, kind, alpha.value_or(0.0), flags.tol,
                                  flags.threads);
  err << "elapsed_ms=" << detail::elapsed_ms_since(start) << "\n";
  const auto& scan = check.scan;

  if (flags.json) {
    io::ordered_json j;
    j["version"] = kVersion;
    j["family"] = family;
    j["grid_points"] = grid.size();
    j["class"] = std::string(kind_name(kind));
    if (scan.vacuous || scan.infinite)
      j["max_ratio"] = nullptr;
    else
      j["max_ratio"] = round12(scan.minimal_constant);
    j["infinite"] = scan.infinite;
    j["vacuous"] = scan.vacuous;
    if (scan.witness.arity > 0) j["witness"] = io::witness_json(grid, scan.witness);
    if (alpha) {
      j["claimed_constant"] = round12(*alpha);
      j["pass"] = check.pass;
    }
    j["note"] = "pass is evidence on the sample grid, not a proof on the interval";
    out << j.dump(2) << "\n";
  } else {
    out << "family " << family << ", " << grid.size() << " grid points, class "
        << kind_name(kind) << "\n";
    out << "max admissible ratio: " << detail::constant_text(scan);
    if (scan.witness.arity > 0)
      out << " at (" << grid.label(scan.witness.idx[0]) << ","
          << grid.label(scan.witness.idx[1]) << ")";
    out << "\n";
    if (alpha)
      out << "claimed constant " << format_g12(*alpha) << ": "
          << (check.pass ? "pass" : "VIOLATED") << "\n";
    out << "note: a pass is evidence on the sample grid, not a proof on the "
           "interval\n";
  }
  return (!alpha || check.pass) ? kExitOk : kExitVerdict;
}

/// Entry point shared by the binary and the in-process CLI tests.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"finite metric space contraction classifier and certified "
               "Picard iteration lab"};
  app.name("fplab");
  app.set_version_flag("--version", kVersion);

  CommonFlags flags;
  std::string file;
  std::vector<std::string> class_filter;

  auto add_common = [&](CLI::App* cmd, bool with_threads = false) {
    cmd->add_option("--tol", flags.tol,
                    "comparison tolerance (env FPLAB_TOL overrides default)")
        ->capture_default_str();
    cmd->add_flag("--json", flags.json, "machine-readable output");
    if (with_threads)
      cmd->add_option("--threads", flags.threads,
                      "classifier scan threads (output is identical)")
          ->check(CLI::Range(1, 256));
  };

  auto* validate = app.add_subcommand("validate", "check the metric axioms");
  validate->add_option("file", file, "instance JSON")->required();
  add_common(validate);

  auto* classify =
      app.add_subcommand("classify", "membership and minimal constants for "
                                     "the contraction classes");
  classify->add_option("file", file, "instance JSON")->required();
  classify
      ->add_option("--classes", class_filter,
                   "comma-separated class names (default: all)")
      ->delimiter(',');
  add_common(classify, true);

  auto* fixed =
      app.add_subcommand("fixed-points", "fixed points, period-2 points and "
                                         "orbit limits");
  fixed->add_option("file", file, "instance JSON")->required();
  add_common(fixed);

  std::string start_label;
  double eps = 1e-9;
  int max_iter = 10000;
  std::string picard_class;
  std::optional<double> picard_constant;
  auto* picard = app.add_subcommand(
      "picard", "run Picard iteration with a certified error bound");
  picard->add_option("file", file, "instance JSON")->required();
  picard->add_option("--start", start_label, "start point label")->required();
  picard->add_option("--eps", eps, "convergence threshold")
      ->capture_default_str();
  picard->add_option("--max-iter", max_iter, "iteration cap")
      ->capture_default_str();
  picard->add_option("--class", picard_class,
                     "certificate class (default: best member class)");
  picard->add_option("--constant", picard_constant,
                     "class constant (default: computed minimal constant)");
  add_common(picard);

  int gen_n = 4;
  std::uint64_t gen_seed = 0;
  std::string gen_style = "uniform";
  double gen_lo = 1.0, gen_hi = 3.0;
  auto* generate =
      app.add_subcommand("generate", "emit a deterministic random instance");
  generate->add_option("--n", gen_n, "point count (>= 2)")->required();
  generate->add_option("--seed", gen_seed, "64-bit seed")->required();
  generate->add_option("--style", gen_style,
                       "uniform | contractive-biased | with-fixed-point")
      ->capture_default_str();
  generate->add_option("--lo", gen_lo, "pre-closure distance lower bound")
      ->capture_default_str();
  generate->add_option("--hi", gen_hi, "pre-closure distance upper bound")
      ->capture_default_str();

  auto* paper = app.add_subcommand(
      "paper-examples", "run every embedded corpus assertion");
  add_common(paper);

  std::string family = "remark4";
  int grid_size = 1000;
  std::string grid_class = "orbital_triangular";
  std::optional<double> grid_alpha;
  auto* gridcheck = app.add_subcommand(
      "grid-check", "falsification scan of a sampled interval system");
  gridcheck->add_option("--family", family, "built-in system family")
      ->capture_default_str();
  gridcheck->add_option("--grid-size", grid_size, "number of grid intervals")
      ->capture_default_str()
      ->check(CLI::Range(4, 100000));
  gridcheck->add_option("--class", grid_class, "class to scan")
      ->capture_default_str();
  gridcheck->add_option("--alpha", grid_alpha,
                        "claimed constant to check the scan against");
  add_common(gridcheck, true);

  app.require_subcommand(1);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(validate))
      return cmd_validate(file, flags, out, err);
    if (app.got_subcommand(classify))
      return cmd_classify(file, class_filter, flags, out, err);
    if (app.got_subcommand(fixed))
      return cmd_fixed_points(file, flags, out, err);
    if (app.got_subcommand(picard))
      return cmd_picard(file, start_label, eps, max_iter, picard_class,
                        picard_constant, flags, out, err);
    if (app.got_subcommand(generate))
      return cmd_generate(gen_n, gen_seed, gen_style, gen_lo, gen_hi, out, err);
    if (app.got_subcommand(paper))
      return cmd_paper_examples(flags, out, err);
    if (app.got_subcommand(gridcheck))
      return cmd_grid_check(family, grid_size, grid_class, grid_alpha, flags,
                            out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace fplab::cli
