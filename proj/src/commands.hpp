#pragma once

#include <string>

#include "config.hpp"
#include "serialize.hpp"

namespace frcone {

/// Stable process exit codes.
enum ExitCode : int {
  kExitPass = 0,
  kExitFailed = 1,
  kExitRangeGate = 2,
  kExitParse = 3,
  kExitDivergence = 4,
};

struct CommandResult {
  int exit_code = kExitPass;
  Json report;
  /// Flat table for scaling reports; empty otherwise.
  std::string csv;
  /// One line for stdout.
  std::string summary;
  /// Error text for stderr (empty on success).
  std::string diagnostics;
  /// "<command>[-<target>]-<16 hex digits of the config hash>".
  std::string file_stem;
  std::string output_dir;
  std::string output_format;
};

/// Dispatches "check", "witness", "verify" (target lemma21 | remark21 | schur | duality)
/// and "scaling" (target scaling | blowup). Never throws for bad input: parse and
/// domain errors become exit code 3.
CommandResult run_command(const std::string& command, const std::string& target, const RunConfig& config);

/// Writes <dir>/<stem>.json, plus <stem>.csv when the format is csv and a table exists.
/// Returns the JSON path. Throws Error on I/O failure.
std::string write_report(const CommandResult& result, const std::string& directory);

}  // namespace frcone
