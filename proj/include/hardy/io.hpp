#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "hardy/lhv.hpp"

namespace hardy {

inline constexpr const char* kToolVersion = "0.1.0";

/// Scenario JSON schema:
///   {"n": int, "two_s": int,
///    "parties": [{"a": [x,y,z] | {"theta": t, "phi": p},
///                 "a_prime": ...,
///                 "s_i": int(two_m), "s_j": int(two_m)}, ...]}
/// Missing directions are drawn uniformly from the sphere with the given
/// seed; missing selectors default to s_i = +s, s_j = -s; "parties" itself
/// may be omitted. Cartesian triples are normalized.
Scenario scenario_from_json(const std::string& text, std::uint64_t seed);
Scenario load_scenario(const std::string& path, std::uint64_t seed);

/// Scenario drawn entirely from the seeded sphere sampler.
Scenario generic_scenario(int n, int two_s, std::uint64_t seed);

struct RunReport {
  Scenario scenario;
  ArgumentMode mode = ArgumentMode::Relaxed;
  SubspaceReport dims;
  bool has_solution = false;
  HardySolution solution;
  bool has_certificate = false;
  Certificate certificate;
  double timing_ms = 0;  // stderr only; kept out of the JSON for diffability
};

/// Fixed key order, reals at 15 significant digits; re-serializing a parsed
/// report reproduces the bytes exactly.
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

std::string scenario_to_json(const Scenario& sc);

/// "%.15g" with C locale.
std::string format_real(double value);

}  // namespace hardy
