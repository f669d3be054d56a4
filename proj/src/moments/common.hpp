#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "vgm/errors.hpp"
#include "vgm/moments.hpp"
#include "vgm/specfun.hpp"

namespace vgm::detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kLnPi = 1.1447298858494002;
inline constexpr double kLn2 = std::numbers::ln2;

/// Signed sum of terms given as (log|t|, sign) with a running reference
/// scale, so neither huge nor tiny terms overflow before they are combined.
class LogSum {
 public:
  void add(double log_abs, int sign) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return;
    if (empty_) {
      ref_ = log_abs;
      sum_ = sign;
      abs_ = 1.0;
      empty_ = false;
      return;
    }
    if (log_abs > ref_) {
      const double f = std::exp(ref_ - log_abs);
      sum_ = sum_ * f + sign;
      abs_ = abs_ * f + 1.0;
      ref_ = log_abs;
    } else {
      const double t = std::exp(log_abs - ref_);
      sum_ += sign * t;
      abs_ += t;
    }
  }
  void add_value(double v) {
    if (v != 0.0) add(std::log(std::fabs(v)), v > 0.0 ? 1 : -1);
  }
  bool empty() const { return empty_; }
  /// The sum; throws OverflowError when it is not representable.
  double value() const {
    if (empty_ || sum_ == 0.0) return 0.0;
    const double l = ref_ + std::log(std::fabs(sum_));
    if (l > 709.78) throw OverflowError("moment value overflows a double");
    return std::copysign(std::exp(l), sum_);
  }
  /// log|sum|; -inf for an empty or exactly cancelled sum.
  double log_abs() const {
    if (empty_ || sum_ == 0.0) return -std::numeric_limits<double>::infinity();
    return ref_ + std::log(std::fabs(sum_));
  }
  int sign() const { return empty_ ? 0 : (sum_ > 0.0) - (sum_ < 0.0); }
  /// Sum of |terms| (may be inf in extreme cases).
  double abs_sum() const { return empty_ ? 0.0 : abs_ * std::exp(ref_); }
  double log_abs_sum() const {
    return empty_ ? -std::numeric_limits<double>::infinity() : ref_ + std::log(abs_);
  }

 private:
  bool empty_ = true;
  double ref_ = 0.0;
  double sum_ = 0.0;
  double abs_ = 0.0;
};

inline double ln_binom(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// log(1 - beta^2/alpha^2) without cancellation.
inline double ln_one_minus_z(const VGParams& p) {
  return std::log(p.alpha() - p.beta()) + std::log(p.alpha() + p.beta()) -
         2.0 * std::log(p.alpha());
}

inline double z_of(const VGParams& p) {
  const double g = p.beta() / p.alpha();
  return g * g;
}

/// log of 2^r (1-z)^(nu+1/2) / (sqrt(pi) alpha^r Gamma(nu+1/2)).
inline double ln_c0(const VGParams& p, double r) {
  return r * kLn2 + (p.nu() + 0.5) * ln_one_minus_z(p) - 0.5 * kLnPi - r * std::log(p.alpha()) -
         specfun::ln_gamma(p.nu() + 0.5);
}

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

inline bool is_integer(double r) { return std::isfinite(r) && r == std::nearbyint(r); }

inline bool is_half_integer_shape(double nu) {
  const double m = nu - 0.5;
  return m >= 0.0 && is_integer(m) && m < 1e6;
}

inline void require_abs_order(const VGParams& p, double r) {
  if (!std::isfinite(r) || !(r > -1.0) || !(r > -2.0 * p.nu() - 1.0))
    throw DomainError("absolute moment of order r exists only for r > max(-1, -2 nu - 1)");
}

/// A signed value in log form with its relative error.
struct SignedTerm {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;
  double rel_err = 0.0;
};

/// E[Y^k] for Y ~ VG(nu, alpha, beta, 0), k >= 0 an integer.
SignedTerm raw_moment_centred_at_mu(const VGParams& p, int k);

/// The finite 2F1 part of the odd-order formula,
/// sum_k (alpha mu / 2)^(2k) Gamma(h) Gamma(nu+h) [C(r,2k) F(.;1/2;z) + beta mu C(r,2k+1) F(.;3/2;z)],
/// returned as a LogSum (not yet multiplied by the leading constant).
LogSum odd_head_sum(const VGParams& p, int r, double* rel_err);

}  // namespace vgm::detail
