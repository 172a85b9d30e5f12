#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fracmra/frft.hpp"
#include "fracmra/frwt.hpp"
#include "fracmra/mra.hpp"

namespace fracmra::cli {

enum class Command { frft, validate, orthonormalize, gram, framebounds, report, cwt };
enum class OutputFormat { json, csv };

struct RunConfig {
  Command command = Command::validate;
  double alpha = std::numbers::pi / 2;
  /// "haar", "shannon", "bspline<m>"; an "on:" prefix orthonormalizes first.
  std::string scaling = "haar";
  /// Catalog prototype, or "derived:<scaling>" for the filter construction.
  std::string wavelet = "haar";
  /// Builtin test signal name or a CSV path.
  std::string signal = "gaussian";
  int grid_n = 4096;
  double domain_half_width = 16.0;
  double tol = 1e-3;
  std::uint64_t seed = 1;
  int trials = 20;
  std::string out_path;  // empty: standard output
  OutputFormat format = OutputFormat::json;
};

/// Throws SpecError on a config that breaks the documented invariants.
void check_config(const RunConfig& config);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitVerdictFalse = 2;

struct RunOutcome {
  int exit_code = kExitOk;
  std::string artifact;  // what was written to out_path or is meant for stdout
  std::string error;     // JSON error record for the diagnostic stream
};

/// Never throws; library errors become exit code 1 with an error record.
RunOutcome run(const RunConfig& config);

SampledSignal parse_signal(std::istream& in);
SampledSignal load_signal(const std::string& path);

/// `%.17g`; non-finite values are written as null in JSON.
std::string format_number(double x);

std::string spectrum_csv(const SpectrumTable& table);
std::string cwt_csv(const CwtTable& table);
std::string report_json(const ValidationReport& report);
std::string error_json(std::string_view kind, const std::string& message, std::size_t line = 0);

}  // namespace fracmra::cli
