#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sumfree {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

enum class Suite { small, full };

struct VerifyOptions {
  Suite suite = Suite::full;
  int threads = 0;
  /// When set, ratio/count tables are written here as CSV.
  std::optional<std::filesystem::path> table_dir;
  /// Restrict to these criterion ids (empty: all).
  std::vector<int> only;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

Suite parse_suite(const std::string& name);

/// Runs the acceptance criteria; the full suite uses the published ranges,
/// the small suite shrinks ranges and sample counts for a quick smoke run.
std::vector<CriterionResult> run_verification(const VerifyOptions& opts);

std::string format_result_line(const CriterionResult& r);

}  // namespace sumfree
