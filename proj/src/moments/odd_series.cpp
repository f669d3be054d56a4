// Odd orders: the G-function series, its symmetric reduction and the
// small alpha|mu| expansion.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "../specfun/internal.hpp"
#include "../specfun/series.hpp"
#include "common.hpp"

namespace vgm {

using detail::LogSum;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxZ = 0.999;
constexpr double kLargeU = 30.0;

void require_odd(int r, const char* who) {
  if (r < 1 || r % 2 == 0) throw DomainError(std::string(who) + " requires an odd order r >= 1");
}

// log G_{nu+n, nu}(u) for n = 0, 1, ...; K_nu and K_{nu-1} are evaluated once.
class GTable {
 public:
  GTable(double nu, double u) : nu_(nu), u_(u) {
    if (u > 0.0 && u <= kLargeU) {
      k_nu_ = specfun::bessel_k(nu, u, specfun::Scaling::exponential);
      k_nm1_ = specfun::bessel_k(nu - 1.0, u, specfun::Scaling::exponential);
    }
  }
  /// Returns log G and accumulates its relative error into *rel.
  double log_g(int n, double* rel) {
    while (static_cast<int>(cache_.size()) <= n) {
      const int i = static_cast<int>(cache_.size());
      specfun::FnEval g;
      if (u_ == 0.0) {
        g = {};
      } else if (u_ <= kLargeU) {
        g = specfun::detail::big_g_from_bessel(nu_ + i, nu_, u_, k_nu_, k_nm1_);
      } else {
        g = specfun::big_g(specfun::GArgs(nu_ + i, nu_, u_));
      }
      cache_.push_back(g.value == 0.0 ? -kInf : g.log_abs());
      err_.push_back(g.rel_err());
    }
    *rel = err_[n];
    return cache_[n];
  }

 private:
  double nu_, u_;
  specfun::FnEval k_nu_, k_nm1_;
  std::vector<double> cache_;
  std::vector<double> err_;
};

}  // namespace

namespace detail {

LogSum odd_head_sum(const VGParams& p, int r, double* rel_err) {
  const double nu = p.nu();
  const double z = z_of(p);
  const double am = p.alpha() * p.mu();
  const double bm = p.beta() * p.mu();
  LogSum s;
  double err = 0.0;
  for (int k = 0; 2 * k <= r - 1; ++k) {
    if (k > 0 && am == 0.0) break;
    const double h = 0.5 * (r - 2 * k + 1);
    const double lg = specfun::ln_gamma(h) + specfun::ln_gamma(nu + h) +
                      (k > 0 ? 2.0 * k * std::log(0.5 * std::fabs(am)) : 0.0);
    const auto f1 = specfun::hyp2f1(h, nu + h, 0.5, z);
    const double l1 = lg + ln_binom(r, 2 * k) + f1.log_abs();
    s.add(l1, 1);
    err += f1.rel_err() * std::exp(l1);
    if (bm != 0.0) {
      const auto f2 = specfun::hyp2f1(h, nu + h, 1.5, z);
      const double l2 = lg + ln_binom(r, 2 * k + 1) + std::log(std::fabs(bm)) + f2.log_abs();
      s.add(l2, sign_of(bm));
      err += f2.rel_err() * std::exp(l2);
    }
  }
  *rel_err = s.abs_sum() > 0.0 ? err / s.abs_sum() : 0.0;
  return s;
}

}  // namespace detail

EvalResult abs_moment_odd_series(const VGParams& p, int r, const SeriesControl& ctrl,
                                 OddSeriesTrace* trace) {
  require_odd(r, "abs_moment_odd_series");
  if (p.mu() == 0.0) throw DomainError("abs_moment_odd_series requires mu != 0");
  if (ctrl.max_terms < 1) throw DomainError("max_terms must be at least 1");
  const double z = detail::z_of(p);
  if (z > kMaxZ)
    throw ConvergenceError(
        "odd-order series refused: beta^2/alpha^2 > 0.999; use quadrature instead", std::nan(""));

  const double nu = p.nu();
  const double u = p.alpha() * std::fabs(p.mu());
  const double c = -2.0 * detail::sign_of(p.mu()) * p.beta() / p.alpha();
  const double ln_abs_c = c == 0.0 ? -kInf : std::log(std::fabs(c));
  const int c_sign = detail::sign_of(c);
  const double ln_c0 = detail::ln_c0(p, r);
  const double ln_half_u = std::log(0.5 * u);

  double head_rel = 0.0;
  const LogSum head = detail::odd_head_sum(p, r, &head_rel);
  LogSum total;
  total.add(head.log_abs() + ln_c0, head.sign());
  double err = head_rel * std::exp(head.log_abs_sum() + ln_c0);

  // Per-k constant part: log C(r,k) + k log(u/2), sign (-1)^k.
  std::vector<double> ln_kpart(r + 1);
  for (int k = 0; k <= r; ++k) ln_kpart[k] = detail::ln_binom(r, k) + k * ln_half_u;

  GTable gt(nu, u);
  auto term_j = [&](int j, double* rel) {
    LogSum t;
    double e = 0.0;
    const double ln_cj = j == 0 ? 0.0 : j * ln_abs_c - std::lgamma(j + 1.0);
    const int sj = (j % 2 == 1) ? c_sign : 1;
    for (int k = 0; k <= r; ++k) {
      const int n = r + j - k;
      const double s = 0.5 * (n + 1);
      double grel = 0.0;
      const double lg = gt.log_g(n, &grel);
      const double la = ln_c0 + ln_kpart[k] + ln_cj + specfun::ln_gamma(s) +
                        specfun::ln_gamma(nu + s) + lg;
      // The series enters with a minus sign.
      t.add(la, -sj * ((k % 2 == 0) ? 1 : -1));
      e += (grel + 8.0 * detail::kEps) * std::exp(la);
    }
    *rel = e;
    return t;
  };
  // Bound on sum_{j > jl} |term_j| with each G replaced by 1.
  auto tail_after = [&](int jl) {
    if (c == 0.0) return 0.0;
    LogSum b;
    const int j1 = jl + 1;
    for (int k = 0; k <= r; ++k) {
      const double rho = 0.5 * std::fabs(c) * std::max(1.0, 1.0 + (r - k + nu) / (j1 + 1.0));
      if (rho >= 1.0) return kInf;
      const double s = 0.5 * (r + j1 - k + 1);
      b.add(ln_c0 + ln_kpart[k] + j1 * ln_abs_c - std::lgamma(j1 + 1.0) + specfun::ln_gamma(s) +
                specfun::ln_gamma(nu + s) - std::log1p(-rho),
            1);
    }
    return std::exp(b.log_abs_sum());
  };

  EvalResult out;
  out.method_used = Method::odd_series;
  double tail = kInf;
  int j = 0;
  for (; j < ctrl.max_terms; ++j) {
    double e = 0.0;
    const LogSum t = term_j(j, &e);
    total.add(t.log_abs(), t.sign());
    err += e;
    tail = tail_after(j);
    if (trace) {
      trace->term.push_back(t.sign() * std::exp(t.log_abs()));
      trace->tail_bound.push_back(tail);
    }
    const double partial = std::exp(total.log_abs());
    if (tail <= ctrl.rel_tol * partial) break;
  }
  if (j == ctrl.max_terms)
    throw ConvergenceError("odd-order series did not reach rel_tol within max_terms = " +
                               std::to_string(ctrl.max_terms) +
                               " (beta/alpha too close to 1); use quadrature instead",
                           total.value());
  out.terms_used = j + 1;
  out.value = total.value();
  out.error_bound = tail + err + 4.0 * detail::kEps * total.abs_sum();
  if (trace && ctrl.extra_terms > 0) {
    double residual = 0.0;
    for (int i = 1; i <= ctrl.extra_terms; ++i) {
      double e = 0.0;
      const LogSum t = term_j(j + i, &e);
      residual += std::exp(t.log_abs_sum());
    }
    trace->residual = residual;
  }
  return out;
}

EvalResult abs_moment_symmetric(const VGParams& p, int r) {
  require_odd(r, "abs_moment_symmetric");
  if (p.beta() != 0.0) throw DomainError("abs_moment_symmetric requires beta = 0");
  const double nu = p.nu();
  const double a = p.alpha();
  const double u = a * std::fabs(p.mu());
  EvalResult out;
  out.method_used = Method::symmetric;
  if (r == 1) {
    // E|X| = (u^2 (K_nu L_{nu-1} + K_{nu-1} L_nu)(u) + u^(nu+1) K_{nu+1}(u) / (sqrt pi 2^(nu-1) Gamma(nu+1/2))) / alpha
    const double ln_tail_c = -0.5 * detail::kLnPi - (nu - 1.0) * detail::kLn2 -
                             specfun::ln_gamma(nu + 0.5);
    if (u == 0.0) {
      out.value = std::exp(ln_tail_c + nu * detail::kLn2 + specfun::ln_gamma(nu + 1.0)) / a;
      out.error_bound = 8.0 * detail::kEps * out.value;
      out.terms_used = 1;
      return out;
    }
    const auto kn = specfun::bessel_k(nu, u, specfun::Scaling::exponential);
    const auto knm1 = specfun::bessel_k(nu - 1.0, u, specfun::Scaling::exponential);
    const auto knp1 = specfun::bessel_k(nu + 1.0, u, specfun::Scaling::exponential);
    const auto l_nm1 = specfun::struve_l(nu - 1.0, u);
    const auto l_n = specfun::struve_l(nu, u);
    const auto x1 = specfun::detail::multiply(kn, l_nm1);
    const auto x2 = specfun::detail::multiply(knm1, l_n);
    LogSum s;
    const double l2u = 2.0 * std::log(u);
    s.add(x1.log_abs() + l2u, 1);
    s.add(x2.log_abs() + l2u, 1);
    const double l3 = ln_tail_c + (nu + 1.0) * std::log(u) + knp1.log_abs();
    s.add(l3, 1);
    out.value = s.value() / a;
    out.error_bound =
        (x1.rel_err() * std::exp(x1.log_abs() + l2u) + x2.rel_err() * std::exp(x2.log_abs() + l2u) +
         knp1.rel_err() * std::exp(l3) + 4.0 * detail::kEps * s.abs_sum()) /
        a;
    out.terms_used = 3;
    return out;
  }
  // General odd r: finite sums with G(u) in place of the j-series.
  const double ln_pre = r * detail::kLn2 - 0.5 * detail::kLnPi - r * std::log(a) -
                        specfun::ln_gamma(nu + 0.5);
  LogSum s;
  double err = 0.0;
  int terms = 0;
  for (int k = 0; 2 * k <= r - 1; ++k) {
    if (k > 0 && u == 0.0) break;
    const double h = 0.5 * (r - 2 * k + 1);
    const double la = ln_pre + detail::ln_binom(r, 2 * k) +
                      (k > 0 ? 2.0 * k * std::log(0.5 * u) : 0.0) + specfun::ln_gamma(h) +
                      specfun::ln_gamma(nu + h);
    s.add(la, 1);
    err += 8.0 * detail::kEps * std::exp(la);
    ++terms;
  }
  if (u > 0.0) {
    GTable gt(nu, u);
    for (int k = 0; k <= r; ++k) {
      const double h = 0.5 * (r - k + 1);
      double grel = 0.0;
      const double lg = gt.log_g(r - k, &grel);
      const double la = ln_pre + detail::ln_binom(r, k) + k * std::log(0.5 * u) +
                        specfun::ln_gamma(h) + specfun::ln_gamma(nu + h) + lg;
      s.add(la, (k % 2 == 0) ? -1 : 1);
      err += (grel + 8.0 * detail::kEps) * std::exp(la);
      ++terms;
    }
  }
  out.value = s.value();
  out.error_bound = err + 4.0 * detail::kEps * s.abs_sum();
  out.terms_used = terms;
  return out;
}

double asymptotic_remainder(const VGParams& p, int r) {
  require_odd(r, "asymptotic_remainder");
  const double u = p.alpha() * std::fabs(p.mu());
  if (u == 0.0) return 0.0;
  const double nu = p.nu();
  const double lc = detail::ln_c0(p, r) - r * detail::kLn2;
  const double lu = std::log(u);
  if (nu > 0.0)
    return std::exp(lc + specfun::ln_gamma(nu) + (r + 1) * lu - std::log(r + 1.0));
  if (nu == 0.0) return std::exp(lc + std::log(2.0 * std::fabs(lu) / (r + 1.0)) + (r + 1) * lu);
  return std::exp(lc - 2.0 * nu * detail::kLn2 + specfun::ln_gamma(-nu) +
                  specfun::ln_beta(r + 1.0, 2.0 * nu + 1.0) + (r + 1.0 + 2.0 * nu) * lu);
}

EvalResult abs_moment_asymptotic(const VGParams& p, int r, double threshold) {
  require_odd(r, "abs_moment_asymptotic");
  EvalResult out;
  if (p.mu() == 0.0) {
    out = abs_moment_mu_zero(p, r);
    out.method_used = Method::asymptotic;
    out.error_bound = 0.0;
    return out;
  }
  double rel = 0.0;
  const LogSum head = detail::odd_head_sum(p, r, &rel);
  LogSum s;
  s.add(head.log_abs() + detail::ln_c0(p, r), head.sign());
  out.value = s.value();
  out.method_used = Method::asymptotic;
  out.terms_used = (r + 1) / 2;
  out.error_bound = asymptotic_remainder(p, r);
  const double u = p.alpha() * std::fabs(p.mu());
  if (u > threshold)
    out.warnings.push_back("alpha*|mu| = " + std::to_string(u) + " exceeds " +
                           std::to_string(threshold) +
                           "; the small alpha*|mu| expansion may be inaccurate");
  return out;
}

}  // namespace vgm
