#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace qps::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfigError = 2,
  kInfeasible = 3,
  kIncommensurable = 4,
  kValidateFailed = 5,
};

struct RunOptions {
  std::string out_dir;  // overrides outputs.dir when set
  double seed_dt = 0.0;
  std::vector<int> criteria;  // validate only; empty runs all
};

inline constexpr const char* kVersion = "0.1.0";

// Runs one subcommand and maps failures onto exit codes; messages go to err.
int run(const std::string& subcommand, const JobConfig& cfg, const RunOptions& opt, std::ostream& log,
        std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace qps::cli
