// Struve L, the normalised Lommel function t~ and the cumulative Bessel-K
// integral G built from them.

#include <algorithm>
#include <cmath>
#include <string>

#include "internal.hpp"
#include "series.hpp"
#include "vgm/errors.hpp"
#include "vgm/quadrature.hpp"
#include "vgm/specfun.hpp"

namespace vgm::specfun {

namespace {

using detail::kEps;

constexpr double kLargeX = 30.0;
constexpr double kLn2 = 0.6931471805599453;

// Sum_k (x/2)^(2k) / (Gamma(a+k) Gamma(b+k)) times exp(log_pre).
FnEval lommel_core(double a, double b, double x, double log_pre) {
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
    throw PoleError("lommel_t_tilde: gamma prefactor has a pole (a=" + std::to_string(a) +
                    ", b=" + std::to_string(b) + ")");
  const auto ga = ln_gamma_signed(a);
  const auto gb = ln_gamma_signed(b);
  if (x == 0.0) {
    FnEval e;
    e.value = ga.sign * gb.sign;
    e.log_scale = log_pre - ga.log_abs - gb.log_abs;
    e.abs_err = kEps * 4.0;
    return detail::fold(e);
  }
  const double h2 = 0.25 * x * x;
  auto ratio = [&](int k) { return h2 / ((a + k) * (b + k)); };
  // Signs can flip while a+k or b+k is negative; only stop once both are past 1.
  const int min_terms = static_cast<int>(std::max({0.0, std::ceil(1.0 - a), std::ceil(1.0 - b)}));
  const auto s = detail::sum_series(log_pre - ga.log_abs - gb.log_abs, ga.sign * gb.sign, ratio,
                                    0.0, 100000, 0.5 * kEps, min_terms);
  if (!s.converged) throw ConvergenceError("lommel_t_tilde: series did not converge", s.sum);
  return detail::to_eval(s);
}

void check_x(double x, const char* who) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError(std::string(who) + ": requires finite x >= 0");
}

}  // namespace

GArgs::GArgs(double mu, double nu, double xx) : order_mu(mu), order_nu(nu), x(xx) {
  if (!std::isfinite(mu) || !std::isfinite(nu)) throw DomainError("GArgs: orders must be finite");
  if (!(nu > -0.5)) throw DomainError("GArgs: requires order_nu > -1/2");
  if (!(mu >= nu)) throw DomainError("GArgs: requires order_mu >= order_nu");
  if (!(xx >= 0.0) || !std::isfinite(xx)) throw DomainError("GArgs: requires finite x >= 0");
}

FnEval lommel_t_tilde_reduced(double order_mu, double order_nu, double x) {
  check_x(x, "lommel_t_tilde_reduced");
  const double a = 0.5 * (order_mu - order_nu + 3.0);
  const double b = 0.5 * (order_mu + order_nu + 3.0);
  return detail::fold(lommel_core(a, b, x, -(order_mu + 1.0) * kLn2));
}

FnEval lommel_t_tilde(double order_mu, double order_nu, double x) {
  check_x(x, "lommel_t_tilde");
  const double p = order_mu + 1.0;
  if (x == 0.0) {
    if (p > 0.0) return {};
    if (p < 0.0) throw DomainError("lommel_t_tilde: unbounded at x = 0 for order_mu < -1");
    return lommel_t_tilde_reduced(order_mu, order_nu, 0.0);
  }
  const double a = 0.5 * (order_mu - order_nu + 3.0);
  const double b = 0.5 * (order_mu + order_nu + 3.0);
  FnEval e = lommel_core(a, b, x, p * std::log(0.5 * x));
  if (x > kLargeX) return detail::rescale_to(e, x);
  return detail::fold(e);
}

FnEval struve_l(double order, double x) {
  if (!(order > -1.5)) throw DomainError("struve_l: requires order > -3/2");
  check_x(x, "struve_l");
  return lommel_t_tilde(order, order, x);
}

double ln_big_g_norm(double order_mu, double order_nu) {
  return (order_mu - 1.0) * kLn2 + ln_gamma(0.5 * (order_mu - order_nu + 1.0)) +
         ln_gamma(0.5 * (order_mu + order_nu + 1.0));
}

namespace {

// G for large x from the defining integral.  When x is past the peak of
// t^mu K_nu(t) the complement 1 - int_x^inf is used; otherwise int_0^x.
FnEval big_g_quadrature(double mu, double nu, double x) {
  const double ln_norm = ln_big_g_norm(mu, nu);
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const FnEval k = bessel_k(nu, t, Scaling::exponential);
    return std::exp(mu * std::log(t) + std::log(k.value) + k.log_scale - ln_norm);
  };
  quad::Options opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-300;
  FnEval out;
  if (x >= mu) {
    const double end = x + 60.0 + 2.0 * std::fabs(mu);
    // Only 1 - tail is returned, so an absolute target is enough.
    opt.abs_tol = 0.25 * kEps;
    const auto tail = quad::integrate(f, x, end, opt);
    out.value = 1.0 - tail.value;
    out.abs_err = tail.abs_err + kEps;
    return out;
  }
  // Near zero the integrand behaves like t^(mu - |nu|).
  const double c = mu - std::fabs(nu);
  const double split = std::min(1.0, x);
  auto head = quad::integrate_left_singular(f, 0.0, split, c, opt);
  double value = head.value;
  double err = head.abs_err;
  if (x > split) {
    const auto rest = quad::integrate(f, split, x, opt);
    value += rest.value;
    err += rest.abs_err;
  }
  out.value = value;
  out.abs_err = err;
  return out;
}

}  // namespace

FnEval detail::big_g_from_bessel(double mu, double nu, double x, const FnEval& k_nu,
                                 const FnEval& k_nm1) {
  // t~_{mu-1,nu-1} carries x^mu and t~_{mu,nu} carries x^(mu+1); the reduced
  // forms keep x^mu separate so tiny x with large mu does not underflow.
  FnEval t1 = lommel_t_tilde_reduced(mu - 1.0, nu - 1.0, x);
  FnEval t2 = lommel_t_tilde_reduced(mu, nu, x);
  const double ln_x = std::log(x);
  t1.log_scale += (mu + 1.0) * ln_x;  // x * x^mu
  t2.log_scale += (mu + 2.0) * ln_x;  // x * x^(mu+1)
  const FnEval a = detail::multiply(k_nu, t1);
  const FnEval b = detail::multiply(k_nm1, t2);
  // Both summands are positive; bring them to a common scale and add.
  const double ref = std::max(a.log_abs(), b.log_abs());
  const FnEval as = detail::rescale_to(a, ref);
  const FnEval bs = detail::rescale_to(b, ref);
  FnEval g;
  g.value = as.value + bs.value;
  g.abs_err = as.abs_err + bs.abs_err + kEps * std::fabs(g.value);
  g.log_scale = ref;
  return detail::fold(g);
}

FnEval big_g(const GArgs& args) {
  const double mu = args.order_mu;
  const double nu = args.order_nu;
  const double x = args.x;
  if (x == 0.0) return {};
  if (x > kLargeX) return big_g_quadrature(mu, nu, x);
  return detail::big_g_from_bessel(mu, nu, x, bessel_k(nu, x, Scaling::exponential),
                                   bessel_k(nu - 1.0, x, Scaling::exponential));
}

}  // namespace vgm::specfun
