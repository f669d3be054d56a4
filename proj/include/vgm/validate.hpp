#pragma once

// Self-checks run by `vgm validate`: formulas against the quadrature oracle,
// identities between formulas, and the odd-series truncation bound.

#include <optional>
#include <string>
#include <vector>

namespace vgm::selftest {

enum class Grid { quick, full };

struct Options {
  Grid grid = Grid::full;
  /// Replaces every suite's tolerance when set.
  std::optional<double> tolerance;
  unsigned threads = 1;
  /// Run only suites whose name is listed (empty: all).
  std::vector<std::string> suites;
};

struct CaseResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  /// The compared quantity (relative error, residual/bound ratio, ...).
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CaseResult> cases;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

/// Suite names in run order: "grid", "identity", "truncation".
const std::vector<std::string>& suite_names();

Report run(const Options& opt);

/// The (nu, beta/alpha, alpha*mu, r) grid at alpha = 2.
struct GridPoint {
  double nu, beta_ratio, alpha_mu;
  int r;
};
std::vector<GridPoint> moment_grid(Grid g);
inline constexpr double kGridAlpha = 2.0;

}  // namespace vgm::selftest
