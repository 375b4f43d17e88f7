#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcurve {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  nlohmann::json detail;
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
  /// Deterministic: contains no timing.
  nlohmann::json to_json() const;
};

inline constexpr int kCriteriaCount = 9;

/// Runs one acceptance criterion (1..9).
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Criteria 1..9 in order.
AcceptanceReport run_acceptance(std::uint64_t seed);

/// Empties the process-wide memo tables so the next computation starts cold.
void reset_default_tables();

}  // namespace qcurve
