#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expfact/cousin.hpp"

namespace expfact {

struct RunConfig {
  /// factorize, factorize-gl2, bass, logm, dbar-selftest, gen, verify.
  std::string command;
  /// Input files; factorize accepts several and then emits a report.
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir = ".";
  /// verify: directory holding the E_*.csv and F_*.csv of a factorize run.
  std::filesystem::path factors_dir;
  std::optional<double> tol;
  std::optional<SplitMethod> method;
  std::optional<int> boundary_n;
  std::optional<double> spacing;
  std::uint64_t seed = 0;
  int zeros = 0;
  int count = 1;
  std::string domain = "disk";
  /// Leave wall-clock fields out of manifests for byte-stable output.
  bool omit_timing = false;
};

/// Validates a configuration; InvalidInput for unknown commands, non-positive
/// tolerances and missing inputs.
void validate(const RunConfig& cfg);

/// Executes one command. Returns 0 on pass, 1 on input error and 2 when a
/// residual or certificate gate fails. manifest.json is written to out_dir in
/// every case.
int run(const RunConfig& cfg);

struct ReportRow {
  std::string instance;
  std::string case_tag;
  double delta = 0.0;
  double residual = 0.0;
  double max_certificate = 0.0;
  double wall_time = 0.0;
  bool passed = false;
  std::string error;
};

/// One CSV row per instance plus a text table with min/median/max of δ,
/// residual, certificate and wall time. InvalidInput on an empty list.
void emit_report(const std::vector<ReportRow>& rows, std::ostream& csv, std::ostream& text);

}  // namespace expfact
