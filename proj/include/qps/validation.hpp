#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qps {

struct Measurement {
  std::string name;
  double value;
  double tolerance;     // NaN when the value is informational only
  bool timing = false;  // wall-clock values, left out of deterministic reports
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  std::vector<Measurement> measurements;
  std::string note;
};

CriterionResult check_isometry();           // 1
CriterionResult check_multiplier_identity();  // 2
CriterionResult check_series_convergence();   // 3
CriterionResult check_constant_symbol();      // 4
CriterionResult check_residual_certificate(); // 5
CriterionResult check_essential_normality();  // 6
CriterionResult check_range_estimator();      // 7
CriterionResult check_disk_consistency();     // 8
CriterionResult check_tail_bound();           // 9
CriterionResult check_vmo_profile();          // 10

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

// "criterion  3 PASS  [2.41 s] title"
std::string summary_line(const CriterionResult& r);

}  // namespace qps
