// Half-integer shape nu = m + 1/2, where K_nu is elementary, and the
// asymmetric Laplace special case m = 0.

#include <cmath>
#include <string>

#include "common.hpp"

namespace vgm {

using detail::LogSum;

namespace {

// Adds log of  int |y + mu|^r |y|^n e^{beta y - alpha |y|} dy  (mu >= 0) to s
// after the offset ln_w, piece by piece.  Returns the summed absolute error.
double add_piece_integrals(LogSum& s, double ln_w, double alpha, double beta, double mu, int n,
                           double r) {
  const double ab_minus = alpha - beta;
  const double ab_plus = alpha + beta;
  double err = 0.0;
  if (mu == 0.0) {
    const double lg = specfun::ln_gamma(r + n + 1.0);
    const double l1 = ln_w + lg - (r + n + 1.0) * std::log(ab_minus);
    const double l2 = ln_w + lg - (r + n + 1.0) * std::log(ab_plus);
    s.add(l1, 1);
    s.add(l2, 1);
    return 8.0 * detail::kEps * (std::exp(l1) + std::exp(l2));
  }
  const double ln_mu = std::log(mu);
  const double w = ab_plus * mu;
  const double ln_scale = ln_w + (r + n + 1.0) * ln_mu;
  // y > 0: mu^(r+n+1) n! U(n+1, r+n+2, (alpha-beta) mu).
  const auto uu = specfun::tricomi_u(n + 1.0, r + n + 2.0, ab_minus * mu);
  const double l1 = ln_scale + std::lgamma(n + 1.0) + uu.log_abs();
  s.add(l1, 1);
  err += uu.rel_err() * std::exp(l1);
  // -mu < y < 0: mu^(r+n+1) B(n+1, r+1) M(n+1, r+n+2, -(alpha+beta) mu).
  const auto mm = specfun::kummer_m(n + 1.0, r + n + 2.0, -w);
  const double l2 = ln_scale + specfun::ln_beta(n + 1.0, r + 1.0) + mm.log_abs();
  s.add(l2, 1);
  err += mm.rel_err() * std::exp(l2);
  // y < -mu: e^{-w} sum_i C(n,i) mu^(n-i) Gamma(r+i+1) / (alpha+beta)^(r+i+1).
  const double lp = std::log(ab_plus);
  for (int i = 0; i <= n; ++i) {
    const double l3 = ln_w - w + detail::ln_binom(n, i) + (n - i) * ln_mu +
                      specfun::ln_gamma(r + i + 1.0) - (r + i + 1.0) * lp;
    s.add(l3, 1);
    err += 8.0 * detail::kEps * std::exp(l3);
  }
  return err;
}

}  // namespace

EvalResult abs_moment_halfint(const VGParams& p, double r) {
  if (!detail::is_half_integer_shape(p.nu()))
    throw DomainError("abs_moment_halfint requires nu = m + 1/2 with m = 0, 1, 2, ...");
  if (!std::isfinite(r) || !(r > -1.0)) throw DomainError("abs_moment_halfint requires r > -1");
  const int m = static_cast<int>(p.nu() - 0.5);
  const double a = p.alpha();
  // Reflection x -> -x keeps mu >= 0.
  const double beta = p.mu() < 0.0 ? -p.beta() : p.beta();
  const double mu = std::fabs(p.mu());
  // K_{m+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_j (m+j)! / (j! (m-j)!) (2x)^{-j}.
  const double ln_base = p.log_norm() + 0.5 * (detail::kLnPi - std::log(2.0 * a));
  LogSum s;
  double err = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double ln_w = ln_base + std::lgamma(m + j + 1.0) - std::lgamma(j + 1.0) -
                        std::lgamma(m - j + 1.0) - j * std::log(2.0 * a);
    err += add_piece_integrals(s, ln_w, a, beta, mu, m - j, r);
  }
  EvalResult out;
  out.value = s.value();
  out.method_used = Method::halfint;
  out.terms_used = m + 1;
  out.error_bound = err + 4.0 * detail::kEps * s.abs_sum();
  return out;
}

EvalResult al_abs_moment(const ALParams& al, double r) {
  validate(al);
  if (!std::isfinite(r) || !(r > -1.0)) throw DomainError("al_abs_moment requires r > -1");
  const double a = al.alpha;
  const double beta = al.mu < 0.0 ? -al.beta : al.beta;
  const double mu = std::fabs(al.mu);
  const double ln_w = std::log(a - beta) + std::log(a + beta) - std::log(2.0 * a);
  LogSum s;
  const double err = add_piece_integrals(s, ln_w, a, beta, mu, 0, r);
  EvalResult out;
  out.value = s.value();
  out.method_used = Method::halfint;
  out.terms_used = 1;
  out.error_bound = err + 4.0 * detail::kEps * s.abs_sum();
  return out;
}

EvalResult al_abs_moment_incgamma(const ALParams& al, double r) {
  validate(al);
  if (!std::isfinite(r) || !(r > -1.0))
    throw DomainError("al_abs_moment_incgamma requires r > -1");
  if (al.mu == 0.0) return al_abs_moment(al, r);
  const double a = al.alpha;
  const double beta = al.mu < 0.0 ? -al.beta : al.beta;
  const double mu = std::fabs(al.mu);
  const double ln_w = std::log(a - beta) + std::log(a + beta) - std::log(2.0 * a);
  const double xm = (a - beta) * mu;
  const double xp = (a + beta) * mu;
  const auto up = specfun::incomplete_gamma(specfun::IncGammaKind::upper, r + 1.0, xm);
  const auto ew = specfun::incomplete_gamma(specfun::IncGammaKind::exp_weighted, r + 1.0, xp);
  LogSum s;
  const double l1 = ln_w + xm + up.log_abs() - (r + 1.0) * std::log(a - beta);
  const double lb = ln_w - xp - (r + 1.0) * std::log(a + beta);
  const double l2 = lb + specfun::ln_gamma(r + 1.0);
  const double l3 = lb + ew.log_abs();
  s.add(l1, 1);
  s.add(l2, 1);
  s.add(l3, 1);
  EvalResult out;
  out.value = s.value();
  out.method_used = Method::halfint;
  out.terms_used = 3;
  out.error_bound = up.rel_err() * std::exp(l1) + ew.rel_err() * std::exp(l3) +
                    8.0 * detail::kEps * s.abs_sum();
  return out;
}

double al_abs_first_moment(const ALParams& al) {
  validate(al);
  const double a = al.alpha;
  const double b = al.beta;
  if (al.mu == 0.0) {
    return ((a - b) / (a + b) + (a + b) / (a - b)) / (2.0 * a);
  }
  const double sb = al.mu > 0.0 ? b : -b;
  const double mu = std::fabs(al.mu);
  return mu + 2.0 * sb / ((a - b) * (a + b)) +
         (a - sb) / (a * (a + sb)) * std::exp(-(a + sb) * mu);
}

double al_mean_deviation(const ALParams& al) {
  validate(al);
  const double a = al.alpha;
  const double b = std::fabs(al.beta);
  return (a + b) / (a * (a - b)) * std::exp(-2.0 * b / (a + b));
}

double al_mean_deviation_kappa(const ALKappaSigma& k) {
  validate(k);
  const double s2 = std::sqrt(2.0) * k.sigma;
  const double kap = k.kappa;
  if (kap <= 1.0) return s2 / (kap * (1.0 + kap * kap)) * std::exp(kap * kap - 1.0);
  const double inv = 1.0 / kap;
  return s2 / (inv * (1.0 + inv * inv)) * std::exp(inv * inv - 1.0);
}

double al_meandev_stddev_ratio(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("requires kappa > 0");
  const double k = kappa <= 1.0 ? kappa : 1.0 / kappa;
  const double k2 = k * k;
  return 2.0 / ((1.0 + k2) * std::sqrt(1.0 + k2 * k2)) * std::exp(k2 - 1.0);
}

}  // namespace vgm
