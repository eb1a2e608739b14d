#pragma once

#include <string>
#include <vector>

#include "adr/diagram.hpp"

namespace adr {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Run the numbered verification criteria (empty list = all 12).
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids = {}, int workers = 0);

/// Suite names accepted by the CLI: formulas, bounds, paths, nd, all.
std::vector<int> suite_criteria(const std::string& suite);

/// Render one pass/fail line per result.
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace adr
