#pragma once

// Special-function kernel for the variance-gamma moment formulas.
//
// Accuracy contracts (relative error unless noted):
//
//   gamma_fn, ln_gamma, beta_fn    1e-14
//   bessel_k                       1e-12 on 1e-6 <= x <= 700, |order| <= 50
//   struve_l, lommel_t_tilde       1e-12 (log-scaled accumulation for x > 30)
//   hyp2f1                         1e-10 for 0 <= z <= 0.999
//   kummer_m                       1e-10 for |x| <= 700
//   tricomi_u                      1e-9, integer first parameter only
//   incomplete_gamma               1e-12
//   big_g                          1e-10
//
// Functions whose values can leave the double range return an FnEval whose
// true value is `value * exp(log_scale)`.  All routines are pure and may be
// called concurrently.

#include <cmath>

namespace vgm::specfun {

struct FnEval {
  double value = 0.0;
  /// Estimated absolute error of `value` (same scale as `value`).
  double abs_err = 0.0;
  /// True result is value * exp(log_scale).
  double log_scale = 0.0;

  bool scaled() const noexcept { return log_scale != 0.0; }
  /// The unscaled value; may overflow to inf or underflow to 0.
  double real() const noexcept { return log_scale == 0.0 ? value : value * std::exp(log_scale); }
  /// log|true value|; -inf for an exact zero.
  double log_abs() const noexcept { return std::log(std::fabs(value)) + log_scale; }
  double rel_err() const noexcept {
    return value == 0.0 ? abs_err : abs_err / std::fabs(value);
  }
};

enum class Scaling { none, exponential };

/// Argument triple of G_{mu,nu}(x).  The orders here are Bessel/Lommel
/// orders and have nothing to do with the distribution's (nu, mu).
struct GArgs {
  double order_mu;
  double order_nu;
  double x;

  /// Throws DomainError unless order_mu >= order_nu > -1/2 and x >= 0.
  GArgs(double order_mu, double order_nu, double x);
};

struct SignedLog {
  double log_abs;
  int sign;
};

// Gamma family.  Poles (non-positive integers) raise PoleError.
double gamma_fn(double a);
double ln_gamma(double a);             // a > 0
SignedLog ln_gamma_signed(double a);   // any non-pole a
double beta_fn(double a, double b);    // a, b > 0
double ln_beta(double a, double b);    // a, b > 0

/// Modified Bessel function of the second kind K_order(x), real order, x > 0.
///
/// With Scaling::exponential the returned value is e^x K (log_scale = -x).
/// Unscaled results that do not fit in a double come back with a non-zero
/// log_scale instead of overflowing.
FnEval bessel_k(double order, double x, Scaling scaling = Scaling::none);

/// Modified Struve function L_order(x), order > -3/2, x >= 0.
FnEval struve_l(double order, double x);

/// Normalised modified Lommel function of the first kind,
///
///   t~_{mu,nu}(x) = sum_k (x/2)^(2k+mu+1) / (Gamma(k+(mu-nu+3)/2) Gamma(k+(mu+nu+3)/2))
///                 = x^(mu+1) / (2^(mu+1) Gamma(a) Gamma(b)) 1F2(1; a, b; x^2/4),
///
/// so that t~_{nu,nu} = L_nu.  For x > 30 the result is returned scaled
/// (log_scale = x).
FnEval lommel_t_tilde(double order_mu, double order_nu, double x);

/// The 1F2 part of lommel_t_tilde: t~_{mu,nu}(x) / x^(mu+1).  Finite at x = 0.
FnEval lommel_t_tilde_reduced(double order_mu, double order_nu, double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for 0 <= z < 1.
///
/// Summed directly; for z > 0.999 throws ConvergenceError carrying the
/// partial sum.  Large sums are returned log-scaled.
FnEval hyp2f1(double a, double b, double c, double z);

/// Kummer's confluent hypergeometric M(a, b, x).  Negative x goes through
/// M(a,b,x) = e^x M(b-a, b, -x).
FnEval kummer_m(double a, double b, double x);

/// Tricomi's confluent hypergeometric U(a, b, x) for integer a and x > 0.
///
/// a <= 0: terminating polynomial.  a = 1: e^x x^(1-b) Gamma(b-1, x).
/// a >= 2: three-term recurrence in a seeded by U(0,b,x) = 1 and U(1,b,x),
/// run forward for small x and backward (Miller) otherwise.
FnEval tricomi_u(double a, double b, double x);

enum class IncGammaKind {
  lower,         ///< gamma(a, x) = int_0^x t^(a-1) e^-t dt, a > 0
  upper,         ///< Gamma(a, x) = int_x^inf t^(a-1) e^-t dt, any real a (x > 0 when a <= 0)
  exp_weighted,  ///< E(a, x) = int_0^x s^(a-1) e^+s ds, a > 0
};

FnEval incomplete_gamma(IncGammaKind kind, double a, double x);

/// G_{mu,nu}(x) = x (K_nu(x) t~_{mu-1,nu-1}(x) + K_{nu-1}(x) t~_{mu,nu}(x)),
/// equivalently int_0^x t^mu K_nu(t) dt / (2^(mu-1) Gamma((mu-nu+1)/2) Gamma((mu+nu+1)/2)).
///
/// Takes values in [0, 1).  The Bessel/Lommel form is used for x <= 30 and
/// quadrature of the integral for larger x.  Tiny values (large mu, small x)
/// are returned log-scaled.
FnEval big_g(const GArgs& args);

/// log of the normaliser 2^(mu-1) Gamma((mu-nu+1)/2) Gamma((mu+nu+1)/2), i.e.
/// log int_0^inf t^mu K_nu(t) dt.
double ln_big_g_norm(double order_mu, double order_nu);

}  // namespace vgm::specfun
