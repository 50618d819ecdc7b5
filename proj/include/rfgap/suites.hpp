#pragma once

// Seeded verification suites. Sample i of a run with master seed s uses the
// stream stream_seed(s, i) and nothing else, so results do not depend on the
// number of worker threads.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfgap/curvature.hpp"

namespace rfgap {

using nlohmann::json;

struct Failure {
  long index = -1;  ///< sample index, -1 for the deterministic sweeps
  std::uint64_t seed = 0;
  std::string check;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  long samples = 0;
  std::uint64_t seed = 0;
  long checks = 0;
  std::vector<Failure> failures;
  std::map<std::string, long> counts;
  std::map<std::string, std::pair<double, double>> ranges;

  [[nodiscard]] bool pass() const noexcept { return failures.empty(); }
};

/// Replaceable pieces, used to check that the suites catch broken code.
struct SuiteHooks {
  std::function<Tensor4(const Tensor4&)> symmetrize;
};

struct SuiteOptions {
  long samples = 1000;
  std::uint64_t seed = 42;
  int jobs = 1;
  SuiteHooks hooks;
};

[[nodiscard]] const std::vector<std::string>& suite_names();

/// One of core, berger, polygon, kahler. Throws std::invalid_argument otherwise.
[[nodiscard]] SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

[[nodiscard]] json to_json(const SuiteResult& r);

/// Single suite object, or for "all" an object wrapping every suite.
[[nodiscard]] json run_verify(const std::string& name, const SuiteOptions& options, bool& passed);

}  // namespace rfgap
