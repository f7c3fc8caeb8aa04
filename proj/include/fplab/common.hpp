#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fplab {

/// Default comparison tolerance for distances and ratios.
inline constexpr double kDefaultTol = 1e-9;

/// Thrown when an instance file or argument cannot be interpreted at all
/// (as opposed to a well-formed instance that violates the metric axioms).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a sample grid is not closed under its map.
struct GridNotClosed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when lhs_rhs is asked to evaluate a tuple that fails the
/// distinctness side-conditions of the requested class.
struct InadmissibleTuple : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Formats a double with 12 significant digits (the fixed output precision).
inline std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Rounds a double to 12 significant digits by formatting and re-parsing.
/// Values written into JSON reports go through this so serialized output
/// is stable at the documented precision.
inline double round12(double v) {
  return std::strtod(format_g12(v).c_str(), nullptr);
}

/// FNV-1a 64-bit content hash, used as the platform-stable input digest.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string digest_hex(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string("fnv1a:") + buf;
}

}  // namespace fplab
