#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "spectral_rec/config.hpp"
#include "spectral_rec/error.hpp"

namespace spectral_rec {

enum class ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kInvalidInput = 2, kInternalError = 3 };

ExitCode exit_code(ErrorKind kind);

struct RunOptions {
  bool h_model = false;
  /// 0 selects default_thread_count().
  int threads = 0;
};

/// Writes w.json, f.json and, when the curve has a global involution,
/// wkb.json into out_dir. Returns the files written.
std::vector<std::filesystem::path> run_compute(const CurveConfig& config, const std::filesystem::path& out_dir,
                                               const RunOptions& options = {});

/// Runs one suite ("correlators", "free-energies", "wkb" or "all"), writes
/// the JSON report to `report` and returns kSuccess iff every check passed.
/// A hash-valid w.json in out_dir replaces the correlator computation.
ExitCode run_verify(const CurveConfig& config, std::string_view suite, const std::filesystem::path& out_dir,
                    std::ostream& report, const RunOptions& options = {});

/// Writes the WKB document to order M to `out`.
void run_wkb(const CurveConfig& config, int order, std::ostream& out, const RunOptions& options = {});

}  // namespace spectral_rec
