#pragma once

// Commands behind the dhm executable. Each writes one JSON report (to
// `out`, or standard output when empty) and returns the process exit code.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace dhm {

enum ExitCode : int {
  kExitPass = 0,
  kExitConfigError = 1,
  kExitInadmissible = 2,
  kExitGateFailure = 3,
  kExitNoSpectralGap = 4,
};

struct CliOptions {
  std::string config;
  std::string out;
  /// Replaces both grid dimensions.
  std::optional<int> grid_override;
  std::optional<std::uint64_t> seed;
  /// verify: amplitude of a zbar perturbation added to slot 1+.
  std::optional<double> perturb;
  /// construct: component samples as CSV.
  std::string components_csv;
  /// search: descent trace as CSV (defaults to <out>.trace.csv).
  std::string trace_csv;
  /// kernel
  int degree = 1;
  std::string slot = "1+";
};

int cmd_construct(const CliOptions& o, std::ostream& err);
int cmd_verify(const CliOptions& o, std::ostream& err);
int cmd_census(const CliOptions& o, std::ostream& err);
int cmd_kernel(const CliOptions& o, std::ostream& err);
int cmd_search(const CliOptions& o, std::ostream& err);

}  // namespace dhm
