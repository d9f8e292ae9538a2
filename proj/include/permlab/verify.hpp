#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace permlab {

struct CheckOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when everything passed
};

/// Runs the invariant suite over fixed seeds and built-in fixtures. Output
/// is deterministic for a given build.
std::vector<CheckOutcome> run_verification();

nlohmann::ordered_json verification_report(const std::vector<CheckOutcome>& outcomes);

}  // namespace permlab
