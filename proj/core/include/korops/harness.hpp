#pragma once

// Command implementations behind the korops tool. Each returns the process
// exit code and writes its human summary to `out`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "korops/report.hpp"
#include "korops/scenario.hpp"

namespace korops {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

enum class ReportFormat { Json, Csv };

struct CheckOptions {
  /// Flags given on the command line; they win over scenario cfg keys.
  CfgOverrides flags;
  bool wall_clock = true;
  std::vector<int> psumming_sizes{1, 2, 4, 8};
  int psumming_xi = 256;
};

/// Defaults < scenario cfg.* keys < command-line flags.
CriterionConfig effective_config(const Scenario& s, const CfgOverrides& flags);

RunReport run_check(const Scenario& s, const CheckOptions& opts);

/// 2 when either verdict is INCONCLUSIVE, 0 otherwise.
int exit_code_for(const RunReport& r);

std::string render_report(const RunReport& r, ReportFormat format);
void print_summary(const RunReport& r, std::ostream& out);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomically(const std::string& path, const std::string& content);

struct VerifyOptions {
  std::uint64_t seed = 0;
  long long samples = 10000;
  long long inequality_samples = 100000;
};

struct SuiteLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<SuiteLine> verify_lemmas(const VerifyOptions& opts);
int cmd_verify_lemmas(const VerifyOptions& opts, std::ostream& out);

void cmd_scenarios_list(std::ostream& out);

}  // namespace korops
