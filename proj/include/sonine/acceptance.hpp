#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sonine/config.hpp"
#include "sonine/moebius.hpp"
#include "sonine/report.hpp"
#include "sonine/zeta.hpp"

namespace sonine {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;  // one line, deterministic
  Json detail = Json::object();
  double runtime_ms = 0.0;

  Json to_json() const;
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  Json config;
  double runtime_ms = 0.0;

  bool passed() const;
  Json to_json() const;
};

/// Acceptance criteria 1 to 9. The zero table (up to config.zero_height) and
/// the Moebius table are computed once and shared.
class AcceptanceSuite {
public:
  explicit AcceptanceSuite(RunConfig config);

  CriterionResult run(int id);
  SuiteResult run_all();

  const ZeroTable& zeros();
  const MoebiusTable& moebius();
  const RunConfig& config() const { return config_; }

private:
  RunConfig config_;
  std::optional<ZeroTable> zeros_;
  std::optional<MoebiusTable> moebius_;
};

inline constexpr int kCriterionCount = 10;
const char* criterion_name(int id);

/// Runs criteria 1 to 9 twice with fresh state and appends criterion 10:
/// the two reports agree after strip_runtime and the first run stays under
/// the time budget.
SuiteResult run_acceptance(const RunConfig& config);

}  // namespace sonine
