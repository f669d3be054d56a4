// Closed forms: raw moments, mu = 0, even orders.

#include <cmath>
#include <string>

#include "common.hpp"

namespace vgm {

using detail::LogSum;
using detail::SignedTerm;

namespace detail {

SignedTerm raw_moment_centred_at_mu(const VGParams& p, int k) {
  if (k == 0) return {0.0, 1, 0.0};
  const int m = k % 2;
  const int beta_sign = sign_of(p.beta());
  if (m == 1 && beta_sign == 0) return {};
  const double ell = std::ceil(0.5 * k) + 0.5;
  const double nu = p.nu();
  const auto f = specfun::hyp2f1(ell, nu + ell, 0.5 + m, z_of(p));
  SignedTerm t;
  t.log_abs = k * kLn2 + (p.nu() + 0.5) * ln_one_minus_z(p) - 0.5 * kLnPi - k * std::log(p.alpha()) -
              specfun::ln_gamma(nu + 0.5) + specfun::ln_gamma(nu + ell) + specfun::ln_gamma(ell) +
              f.log_abs();
  if (m == 1) t.log_abs += std::log(2.0 * std::fabs(p.beta()) / p.alpha());
  t.sign = m == 1 ? beta_sign : 1;
  t.rel_err = f.rel_err() + 8.0 * kEps * (1.0 + std::fabs(t.log_abs));
  return t;
}

}  // namespace detail

namespace {

EvalResult finish(const LogSum& s, double rel_err_terms, Method m, int terms) {
  EvalResult out;
  out.value = s.value();
  out.method_used = m;
  out.terms_used = terms;
  out.error_bound = rel_err_terms + 4.0 * detail::kEps * s.abs_sum();
  return out;
}

}  // namespace

EvalResult raw_moment(const VGParams& p, int r) {
  if (r < 1) throw DomainError("raw moments require an integer order r >= 1");
  LogSum s;
  double err = 0.0;
  const double mu = p.mu();
  const int mu_sign = detail::sign_of(mu);
  for (int k = 0; k <= r; ++k) {
    if (k < r && mu_sign == 0) continue;
    const auto e = detail::raw_moment_centred_at_mu(p, k);
    if (e.sign == 0) continue;
    double la = e.log_abs + detail::ln_binom(r, k);
    int sg = e.sign;
    if (k < r) {
      la += (r - k) * std::log(std::fabs(mu));
      if (mu_sign < 0 && (r - k) % 2 == 1) sg = -sg;
    }
    s.add(la, sg);
    err += e.rel_err * std::exp(la);
  }
  return finish(s, err, Method::raw, r + 1);
}

EvalResult abs_moment_mu_zero(const VGParams& p, double r) {
  if (p.mu() != 0.0) throw DomainError("abs_moment_mu_zero requires mu = 0");
  detail::require_abs_order(p, r);
  const double h = 0.5 * (r + 1.0);
  const auto f = specfun::hyp2f1(h, p.nu() + h, 0.5, detail::z_of(p));
  const double la = detail::ln_c0(p, r) + specfun::ln_gamma(p.nu() + h) + specfun::ln_gamma(h) +
                    f.log_abs();
  if (la > 709.78) throw OverflowError("moment value overflows a double");
  EvalResult out;
  out.value = std::exp(la);
  out.method_used = Method::mu_zero;
  out.terms_used = 1;
  out.error_bound = out.value * (f.rel_err() + 8.0 * detail::kEps * (1.0 + std::fabs(la)));
  return out;
}

EvalResult abs_moment_even(const VGParams& p, int r) {
  if (r < 2 || r % 2 != 0) throw DomainError("abs_moment_even requires an even order r >= 2");
  const double nu = p.nu();
  const double z = detail::z_of(p);
  const double am = p.alpha() * p.mu();
  const double ln_pre = (nu + 0.5) * detail::ln_one_minus_z(p) - 0.5 * detail::kLnPi -
                        r * std::log(p.alpha()) - specfun::ln_gamma(nu + 0.5);
  const double ln_2g = std::log(2.0 * std::fabs(p.beta()) / p.alpha());
  LogSum s;
  double err = 0.0;
  int terms = 0;
  for (int k = 0; k <= r; ++k) {
    const int q = k % 2;
    if (k < r && am == 0.0) continue;
    if (q == 1 && p.beta() == 0.0) continue;
    const double pp = std::ceil(0.5 * k) + 0.5;
    const auto f = specfun::hyp2f1(pp, nu + pp, 0.5 + q, z);
    double la = ln_pre + detail::ln_binom(r, k) + k * detail::kLn2 + specfun::ln_gamma(nu + pp) +
                specfun::ln_gamma(pp) + f.log_abs();
    int sg = 1;
    if (k < r) {
      la += (r - k) * std::log(std::fabs(am));
      if (am < 0.0 && (r - k) % 2 == 1) sg = -sg;
    }
    if (q == 1) {
      la += ln_2g;
      if (p.beta() < 0.0) sg = -sg;
    }
    s.add(la, sg);
    err += (f.rel_err() + 8.0 * detail::kEps * (1.0 + std::fabs(la))) * std::exp(la);
    ++terms;
  }
  return finish(s, err, Method::even, terms);
}

}  // namespace vgm
