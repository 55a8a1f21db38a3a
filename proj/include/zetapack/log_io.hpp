#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetapack/packer.hpp"

namespace zetapack {

inline constexpr int kLogFormatVersion = 1;

struct LogParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LogVersionError : LogParseError {
  using LogParseError::LogParseError;
};

// Placement-log serialization (JSON, format_version 1). Placement records
// are sorted by n; every real is rendered as its shortest round-trip
// decimal, so a re-read reproduces bit-identical values and re-serializing
// a read log reproduces identical bytes.
std::string log_to_string(const PackingReport& report);
void write_log(const PackingReport& report, const std::filesystem::path& dest);

// Reconstructs a report for re-verification; the in-memory trace is not part
// of the format. Unknown fields are skipped and noted in `warnings`.
// Malformed input throws LogParseError (wrong version: LogVersionError) with
// position/field diagnostics in the message.
PackingReport log_from_string(const std::string& text,
                              std::vector<std::string>* warnings = nullptr);
PackingReport read_log(const std::filesystem::path& source,
                       std::vector<std::string>* warnings = nullptr);

// One row per run for sweep summaries (plain CSV, decimal point, no locale).
struct SweepRow {
  double t = 0.0;
  std::int64_t n_max = 0;
  std::optional<std::int64_t> failed_at;
  std::string error;  // non-empty when the run could not start
  double conservation_defect = 0.0;
  double max_height_sum = 0.0;
  double margin_f = 0.0;  // residual height the seed leaves
  double margin_g = 0.0;  // height budget that guarantees progress
  std::uint64_t monitor_violations = 0;
  bool verified = false;
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace zetapack
