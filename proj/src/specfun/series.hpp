#pragma once

#include <cmath>
#include <limits>

#include "vgm/specfun.hpp"

namespace vgm::specfun::detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kLnRescale = 575.6462732485114;  // log(1e250)
inline constexpr double kRescale = 1e250;

struct SeriesSum {
  double sum = 0.0;      // relative to exp(log_ref)
  double abs_sum = 0.0;  // same scale
  double tail = 0.0;     // majorant of the discarded tail, same scale
  double log_ref = 0.0;
  int terms = 0;
  bool converged = false;
};

/// Sums t_0 + t_1 + ... where t_0 = sign0 * exp(log_t0) and t_{k+1} = t_k * ratio(k).
///
/// `ratio_limit` is lim |ratio(k)|; the tail after term k is bounded by
/// |t_k| rho / (1 - rho) with rho = max(|ratio(k)|, ratio_limit), which holds
/// once the ratios approach their limit monotonically.  Summation stops when
/// that bound is below tol * |sum|.  No stop is taken before term min_terms,
/// which callers use to step past the region where parameters are negative.
template <class Ratio>
SeriesSum sum_series(double log_t0, int sign0, Ratio&& ratio, double ratio_limit,
                     int max_terms, double tol = 0.5 * kEps, int min_terms = 0) {
  SeriesSum s;
  s.log_ref = log_t0;
  double term = sign0;
  s.sum = term;
  s.abs_sum = std::fabs(term);
  s.terms = 1;
  for (int k = 0; k < max_terms; ++k) {
    const double q = ratio(k);
    const double rho = std::max(std::fabs(q), ratio_limit);
    if (term == 0.0 && k >= min_terms) {
      s.converged = true;
      break;
    }
    if (rho < 1.0 && k >= min_terms) {
      const double bound = std::fabs(term) * rho / (1.0 - rho);
      if (bound <= tol * std::fabs(s.sum)) {
        s.tail = bound;
        s.converged = true;
        break;
      }
    }
    term *= q;
    s.sum += term;
    s.abs_sum += std::fabs(term);
    ++s.terms;
    if (s.abs_sum > kRescale) {
      term /= kRescale;
      s.sum /= kRescale;
      s.abs_sum /= kRescale;
      s.log_ref += kLnRescale;
    }
  }
  return s;
}

/// Converts a series result to an FnEval, folding the scale into the value
/// when that is representable.
inline FnEval to_eval(const SeriesSum& s, double extra_log_scale = 0.0) {
  FnEval e;
  e.value = s.sum;
  e.abs_err = kEps * (4.0 + std::sqrt(static_cast<double>(s.terms))) * s.abs_sum + s.tail;
  e.log_scale = s.log_ref + extra_log_scale;
  return e;
}

/// Folds log_scale into value when the product is a normal double.
inline FnEval fold(FnEval e) {
  if (e.log_scale == 0.0 || e.value == 0.0) {
    if (e.value == 0.0) e.log_scale = 0.0;
    return e;
  }
  const double total = std::log(std::fabs(e.value)) + e.log_scale;
  if (total < 700.0 && total > -700.0) {
    if (std::fabs(e.log_scale) < 700.0) {
      const double f = std::exp(e.log_scale);
      e.value *= f;
      e.abs_err *= f;
    } else {
      const double rel = e.abs_err / std::fabs(e.value);
      e.value = std::copysign(std::exp(total), e.value);
      e.abs_err = rel * std::fabs(e.value);
    }
    e.log_scale = 0.0;
  }
  return e;
}

/// Re-expresses e so that its log_scale equals target (value may under/overflow).
inline FnEval rescale_to(FnEval e, double target) {
  const double f = std::exp(e.log_scale - target);
  e.value *= f;
  e.abs_err *= f;
  e.log_scale = target;
  return e;
}

/// Product of two evaluations; relative errors add.  Mantissas are
/// renormalised so the product cannot overflow.
inline FnEval multiply(const FnEval& x, const FnEval& y) {
  int ex = 0, ey = 0;
  const double mx = std::frexp(x.value, &ex);
  const double my = std::frexp(y.value, &ey);
  FnEval e;
  e.value = mx * my;
  e.abs_err = std::fabs(e.value) * (x.rel_err() + y.rel_err() + kEps);
  e.log_scale = x.log_scale + y.log_scale + (ex + ey) * 0.6931471805599453;
  return fold(e);
}

inline bool is_nonpositive_integer(double a) { return a <= 0.0 && a == std::nearbyint(a); }

}  // namespace vgm::specfun::detail
