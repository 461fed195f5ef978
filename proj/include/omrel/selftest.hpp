#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omrel/json_io.hpp"

namespace omrel {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string summary;
  json details = json::object();
  double seconds = 0;
  double limit_seconds = 0;
  /// Passed and finished inside its time limit.
  bool ok() const { return passed && seconds < limit_seconds; }
};

struct SuiteInfo {
  std::string name;
  int criterion = 0;
  double limit_seconds = 0;
  std::string title;
};

/// In acceptance order.
const std::vector<SuiteInfo>& suites();
/// Throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 0x5eed);

}  // namespace omrel
