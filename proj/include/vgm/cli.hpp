#pragma once

// The `vgm` command line: moment, sp500 and validate subcommands.

#include <iosfwd>
#include <string>
#include <vector>

#include "vgm/moments.hpp"

namespace vgm::cli {

enum class Format { json, csv, text };

/// One computed moment with its inputs echoed back.
struct OutputRecord {
  double nu = 0.0, alpha = 0.0, beta = 0.0, mu = 0.0;
  MomentQuery query;
  double value = 0.0;
  Method method_used = Method::automatic;
  int terms_used = 0;
  double error_bound = 0.0;
  double elapsed_ms = 0.0;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumerical = 3;

/// Shortest decimal string that reads back as the same double.
std::string format_double(double v);

const std::string& csv_header();
std::string to_csv_row(const OutputRecord& r);
std::string to_json(const OutputRecord& r);
std::string to_text(const OutputRecord& r);

/// Runs the tool.  Results go to `out`, diagnostics and warnings to `err`.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vgm::cli
