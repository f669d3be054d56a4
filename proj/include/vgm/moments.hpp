#pragma once

// Raw and absolute moments of the variance-gamma distribution.
//
// All formulas assemble gamma-function products in log space and combine the
// additive terms with sign tracking, so large orders and shapes do not
// overflow intermediate products.

#include <cstdint>
#include <string>
#include <vector>

#include "vgm/vgdist.hpp"

namespace vgm {

enum class Method {
  automatic,
  raw,         // E[X^r] from the 2F1 formula and a binomial shift
  even,        // finite double sum for even r
  odd_series,  // odd r, mu != 0: 2F1 part minus a G-function series
  symmetric,   // beta = 0, odd r: finite G-function sum
  halfint,     // nu = m + 1/2: confluent hypergeometric closed form
  asymptotic,  // leading terms as alpha |mu| -> 0
  mu_zero,     // mu = 0: single 2F1
  quadrature,
  monte_carlo,
};

const char* method_name(Method m);
/// Accepts the CLI spellings (auto, odd-series, mu-zero, quad, mc, ...).
Method parse_method(const std::string& name);

enum class MomentKind { raw, central };

struct MomentQuery {
  double order_r = 1.0;
  MomentKind kind = MomentKind::raw;
  bool absolute = true;
  Method method = Method::automatic;
  double rel_tol = 1e-10;
  int max_terms = 500;
  std::uint64_t seed = 1;
  std::size_t mc_samples = 1000000;
};

struct EvalResult {
  double value = 0.0;
  Method method_used = Method::automatic;
  int terms_used = 0;
  double error_bound = 0.0;
  std::vector<std::string> warnings;
};

/// Controls for the odd-order j-series.
struct SeriesControl {
  double rel_tol = 1e-10;
  int max_terms = 500;
  /// Terms summed after the stop to measure the true residual (trace only).
  int extra_terms = 0;
};

/// Per-term record of the odd-order j-series.
struct OddSeriesTrace {
  std::vector<double> term;       // signed contribution of each j to E|X|^r
  std::vector<double> tail_bound; // bound on sum_{j' > j} |term_j'| after term j
  double residual = 0.0;          // sum of the extra_terms terms past the stop
};

/// E[X^r] for integer r >= 1.
EvalResult raw_moment(const VGParams& p, int r);

/// E|X|^r for mu = 0 and r > max(-1, -2 nu - 1).
EvalResult abs_moment_mu_zero(const VGParams& p, double r);

/// E|X|^r for even r >= 2.
EvalResult abs_moment_even(const VGParams& p, int r);

/// E|X|^r for odd r >= 1 and mu != 0.  Throws ConvergenceError when the tail
/// bound does not fall below rel_tol within max_terms, or when beta^2/alpha^2
/// exceeds 0.999.
EvalResult abs_moment_odd_series(const VGParams& p, int r, const SeriesControl& ctrl = {},
                                 OddSeriesTrace* trace = nullptr);

/// E|X|^r for beta = 0 and odd r >= 1.
EvalResult abs_moment_symmetric(const VGParams& p, int r);

/// E|X|^r for nu = m + 1/2 (m = 0, 1, ...) and real r > -1.
EvalResult abs_moment_halfint(const VGParams& p, double r);

/// Leading terms of E|X|^r for odd r as alpha |mu| -> 0.  error_bound is the
/// magnitude of the leading remainder term; a warning is attached when
/// alpha |mu| exceeds `threshold`.
EvalResult abs_moment_asymptotic(const VGParams& p, int r, double threshold = 0.1);

/// Leading remainder magnitude of abs_moment_asymptotic (0 for mu = 0).
double asymptotic_remainder(const VGParams& p, int r);

/// Asymmetric Laplace E|X|^r, r > -1, from the confluent form.
EvalResult al_abs_moment(const ALParams& a, double r);
/// The same quantity from the incomplete-gamma form (mu != 0).
EvalResult al_abs_moment_incgamma(const ALParams& a, double r);
/// Closed form of E|X| for the asymmetric Laplace law.
double al_abs_first_moment(const ALParams& a);
/// E|X - E[X]| for the asymmetric Laplace law.
double al_mean_deviation(const ALParams& a);
double al_mean_deviation_kappa(const ALKappaSigma& k);
/// Mean deviation over standard deviation, as a function of kappa alone.
double al_meandev_stddev_ratio(double kappa);

/// Dispatcher; see the README for the selection rules.
EvalResult moment(const VGParams& p, const MomentQuery& q);

}  // namespace vgm
