#ifndef HOLO_SUITES_HPP
#define HOLO_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "holo/matrix_io.hpp"

namespace holo {

enum class Suite { Cones, Sqrt, Polar, Action, Cover, All };

Suite parse_suite(const std::string& name);
std::string suite_name(Suite suite);

struct RunConfig {
  Suite suite = Suite::All;
  std::string group = "gl+:3";
  int n = 0;
  std::vector<double> deltas = {0.02};
  int trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  double radius = 0.5;
  std::string out;

  /// Throws on invalid values; resolves group/n into a full name.
  void validate();
};

struct Report {
  Json json;
  int failures = 0;
};

/// Runs the configured suite; the report is byte-identical for equal
/// configs apart from the wall_time_seconds field.
Report run_suite(const RunConfig& config);

extern const std::vector<std::string> kCounterexampleClaims;

/// Searches the targeted parametric family for the claim first, then
/// random candidates, stopping at the first verified witness.
Report find_counterexample(const std::string& claim,
                           const std::vector<double>& deltas, long budget,
                           std::uint64_t seed);

}  // namespace holo

#endif
