#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fplab/metric_space.hpp"

namespace fplab {

/// SplitMix64 (Steele/Lea/Flood's public-domain generator, the standard
/// constants). Chosen so any implementation can replay a seed bit-exactly:
/// the whole generator is three shifts and two multiplies.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the high 53 bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by modulo reduction. The slight modulo
  /// bias is irrelevant here and keeps the derivation trivial to replay.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

enum class MapStyle { Uniform, ContractiveBiased, WithFixedPoint };

inline constexpr std::string_view map_style_name(MapStyle s) {
  switch (s) {
    case MapStyle::Uniform: return "uniform";
    case MapStyle::ContractiveBiased: return "contractive-biased";
    case MapStyle::WithFixedPoint: return "with-fixed-point";
  }
  return "?";
}

inline bool parse_map_style(std::string_view name, MapStyle& out) {
  for (MapStyle s : {MapStyle::Uniform, MapStyle::ContractiveBiased,
                     MapStyle::WithFixedPoint}) {
    if (map_style_name(s) == name) {
      out = s;
      return true;
    }
  }
  return false;
}

/// Deterministic instance generation parameters. distance_range is the
/// pre-closure range of the raw draws; shortest-path closure may pull
/// individual distances below hi afterwards (never below lo).
struct GeneratorConfig {
  int n = 4;
  std::uint64_t seed = 0;
  double lo = 1.0;
  double hi = 3.0;
  MapStyle style = MapStyle::Uniform;
};

namespace detail {

// The space and map draw from decorrelated streams so random_space and
// random_map are each pure functions of the config alone.
inline std::uint64_t space_stream_seed(std::uint64_t seed) {
  return SplitMix64(seed).next();
}
inline std::uint64_t map_stream_seed(std::uint64_t seed) {
  SplitMix64 parent(seed);
  parent.next();
  return parent.next();
}

}  // namespace detail

/// Random valid metric space: symmetric off-diagonal draws uniform in
/// [lo, hi] (row-major upper triangle order), then Floyd-Warshall closure
/// to enforce the triangle inequality exactly up to rounding. Labels are
/// "p0".."p{n-1}".
inline FiniteMetricSpace random_space(const GeneratorConfig& cfg,
                                      double tol = kDefaultTol) {
  if (cfg.n < 2) throw std::invalid_argument("random_space: n must be >= 2");
  if (!(cfg.lo > 0.0) || !(cfg.hi >= cfg.lo))
    throw std::invalid_argument("random_space: need 0 < lo <= hi");

  const int n = cfg.n;
  SplitMix64 rng(detail::space_stream_seed(cfg.seed));
  std::vector<std::vector<double>> d(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = cfg.lo + rng.next_double() * (cfg.hi - cfg.lo);

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];

  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));

  auto validation = validate_metric(std::move(labels), d, tol);
  if (!validation.ok())
    throw std::logic_error("random_space: closure produced an invalid space");
  return *std::move(validation.space);
}

/// Random self-map in one of three styles:
///  - uniform: every image drawn uniformly;
///  - with-fixed-point: uniform, then one uniformly chosen index is pinned
///    to itself;
///  - contractive-biased: images drawn from a small random target subset
///    (size 1..max(2, n/3)), which raises the frequency of contraction
///    members; subset size 1 degenerates to a constant map.
inline SelfMap random_map(const GeneratorConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("random_map: n must be >= 2");
  const auto n = static_cast<std::uint64_t>(cfg.n);
  SplitMix64 rng(detail::map_stream_seed(cfg.seed));
  std::vector<int> image(cfg.n, 0);

  switch (cfg.style) {
    case MapStyle::Uniform:
      for (int i = 0; i < cfg.n; ++i)
        image[i] = static_cast<int>(rng.next_below(n));
      break;
    case MapStyle::WithFixedPoint: {
      for (int i = 0; i < cfg.n; ++i)
        image[i] = static_cast<int>(rng.next_below(n));
      const auto pin = static_cast<int>(rng.next_below(n));
      image[pin] = pin;
      break;
    }
    case MapStyle::ContractiveBiased: {
      const std::uint64_t max_targets =
          std::max<std::uint64_t>(2, n / 3);
      const auto want = static_cast<size_t>(1 + rng.next_below(max_targets));
      std::vector<int> targets;
      while (targets.size() < want) {
        const auto t = static_cast<int>(rng.next_below(n));
        bool seen = false;
        for (int u : targets) seen = seen || u == t;
        if (!seen) targets.push_back(t);
      }
      for (int i = 0; i < cfg.n; ++i)
        image[i] = targets[rng.next_below(targets.size())];
      break;
    }
  }
  return SelfMap(std::move(image));
}

struct GeneratedInstance {
  FiniteMetricSpace space;
  SelfMap map;
};

inline GeneratedInstance generate_instance(const GeneratorConfig& cfg,
                                           double tol = kDefaultTol) {
  return {random_space(cfg, tol), random_map(cfg)};
}

}  // namespace fplab
