#include "vgm/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "vgm/errors.hpp"
#include "vgm/quadrature.hpp"
#include "vgm/specfun.hpp"

namespace vgm::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Acc {
  double value = 0.0;
  double err = 0.0;
  int subdivisions = 0;
  bool ok = true;

  void add(const quad::Result& r) {
    value += r.value;
    err += r.abs_err;
    subdivisions += r.subdivisions;
    ok = ok && r.converged;
  }
};

quad::Options opts(double rel_tol) {
  quad::Options o;
  o.rel_tol = rel_tol;
  o.abs_tol = 0.0;
  o.max_subdivisions = 4000;
  return o;
}

// One side of the density, x = mu + side * t / alpha, for t > 0, weighted
// by |x|^r.  dx is folded in.
class Side {
 public:
  Side(const VGParams& p, double r, int side) : p_(p), r_(r), side_(side) {
    const double a = p.alpha();
    ln_pre_ = p.log_norm() - (p.nu() + 1.0) * std::log(a);
    lambda_ = 1.0 - side * p.beta() / a;
    kink_ = -side * a * p.mu();  // t where x crosses 0; only meaningful if > 0
    const double nu = p.nu();
    c0_ = nu - std::fabs(nu) + (p.mu() == 0.0 ? r : 0.0);
    // K_nu(t) <= C t^(-1/2) e^(-t) for t >= 1.
    const auto k1 = specfun::bessel_k(nu, 1.0, specfun::Scaling::exponential);
    ln_c_ = std::max(0.5 * std::log(0.5 * std::numbers::pi) + 0.5, std::log(k1.value) + 1.0);
  }

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    return eval(t, std::fabs(p_.mu() + side_ * t / p_.alpha()));
  }

  /// At t = kink -/+ d, with |x| = d / alpha taken from d itself; t rounds
  /// and would put |x| at 0 next to the kink.
  double near_kink(double d, int dir) const {
    if (d <= 0.0) return 0.0;
    return eval(kink_ + dir * d, d / p_.alpha());
  }

  double eval(double t, double ax) const {
    if (r_ != 0.0 && ax == 0.0) return r_ > 0.0 ? 0.0 : kInf;
    const auto k = specfun::bessel_k(p_.nu(), t, specfun::Scaling::exponential);
    if (k.value == 0.0) return 0.0;
    const double l = ln_pre_ + p_.nu() * std::log(t) + std::log(k.value) + k.log_scale +
                     side_ * p_.beta() * t / p_.alpha() + (r_ != 0.0 ? r_ * std::log(ax) : 0.0);
    return std::exp(l);
  }

  double kink() const { return kink_; }
  double c0() const { return c0_; }
  double lambda() const { return lambda_; }

  /// Smallest cutoff for which the majorant is decreasing fast enough.
  double min_cutoff() const {
    const double deg = std::max(0.0, r_ + p_.nu() - 0.5);
    return std::max({1.0, 2.0 * deg / lambda_, kink_ + 1.0});
  }

  /// Bound on int_T^inf f(t) dt, valid for T >= min_cutoff().
  double tail_bound(double T) const {
    const double a = p_.alpha();
    const double l = r_ * std::log(std::fabs(p_.mu()) + T / a) + ln_pre_ + ln_c_ +
                     (p_.nu() - 0.5) * std::log(T) - lambda_ * T + std::log(2.0 / lambda_);
    return std::exp(l);
  }

 private:
  VGParams p_;
  double r_;
  int side_;
  double ln_pre_, lambda_, kink_, c0_, ln_c_;
};

// int_a^b of side f, with the behaviour at t = 0 and at the kink handled by
// endpoint substitutions.
void integrate_span(const Side& f, double r, double a, double b, double rel_tol, Acc& acc) {
  if (b <= a) return;
  const auto o = opts(rel_tol);
  std::vector<double> pts{a};
  const double k = f.kink();
  auto push = [&](double v) {
    if (v > pts.back() && v < b) pts.push_back(v);
  };
  if (a == 0.0) push(std::min(1.0, k > 0.0 ? 0.5 * k : 1.0));
  if (k > 0.0) {
    push(0.5 * k);
    push(k);
    push(k + std::min(1.0, k));
  }
  for (double g = 2.0; g < b; g *= 2.0) push(g);
  pts.push_back(b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i];
    const double hi = pts[i + 1];
    if (lo == 0.0) {
      acc.add(quad::integrate_left_singular(f, lo, hi, f.c0(), o));
    } else if (k > 0.0 && hi == k) {
      auto g = [&](double d) { return f.near_kink(d, -1); };
      acc.add(quad::integrate_left_singular(g, 0.0, hi - lo, r, o));
    } else if (k > 0.0 && lo == k) {
      auto g = [&](double d) { return f.near_kink(d, +1); };
      acc.add(quad::integrate_left_singular(g, 0.0, hi - lo, r, o));
    } else {
      acc.add(quad::integrate(f, lo, hi, o));
    }
  }
}

// Integrates one side from t_lo outwards, extending the cutoff until the
// tail majorant is below target (a callback so both sides share one estimate).
struct SideRun {
  double cutoff = 0.0;
  double tail = 0.0;
};

template <class Target>
SideRun extend(const Side& f, double r, double& from, double rel_tol, Acc& acc, Target target) {
  SideRun run;
  double T = from;
  while (true) {
    const double bound = f.tail_bound(T);
    if (bound <= target()) {
      run.cutoff = T;
      run.tail = bound;
      return run;
    }
    const double next = T + std::max(10.0 / f.lambda(), 0.5 * T);
    integrate_span(f, r, T, next, rel_tol, acc);
    T = next;
    from = T;
    if (T > 1e7) throw ConvergenceError("quadrature tail did not fall below tolerance", acc.value);
  }
}

}  // namespace

QuadResult quad_abs_moment(const VGParams& p, double r, double rel_tol) {
  if (!std::isfinite(r) || !(r > -1.0) || !(r > -2.0 * p.nu() - 1.0))
    throw DomainError("absolute moment of order r exists only for r > max(-1, -2 nu - 1)");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  const double piece_tol = std::max(0.1 * rel_tol, 1e-15);
  Side right(p, r, +1);
  Side left(p, r, -1);
  Acc acc;
  double tr = std::max(right.min_cutoff(), 40.0 / right.lambda());
  double tl = std::max(left.min_cutoff(), 40.0 / left.lambda());
  integrate_span(right, r, 0.0, tr, piece_tol, acc);
  integrate_span(left, r, 0.0, tl, piece_tol, acc);
  auto target = [&] { return rel_tol * 1e-3 * std::fabs(acc.value); };
  const auto rr = extend(right, r, tr, piece_tol, acc, target);
  const auto rl = extend(left, r, tl, piece_tol, acc, target);
  QuadResult out;
  out.value = acc.value;
  out.est_abs_err = acc.err + rr.tail + rl.tail;
  out.subdivisions = acc.subdivisions;
  out.tail_cutoff = std::max(rr.cutoff, rl.cutoff);
  if (!std::isfinite(out.value) || !acc.ok || out.est_abs_err > rel_tol * std::fabs(out.value))
    throw ConvergenceError("quadrature of the moment integral did not reach rel_tol = " +
                               shortest(rel_tol),
                           out.value);
  return out;
}

double quad_cdf(const VGParams& p, double x, double rel_tol) {
  // Mass beyond x on the side that does not contain mu, complemented if needed.
  const int side = x < p.mu() ? -1 : +1;
  const double t0 = p.alpha() * std::fabs(x - p.mu());
  Side f(VGParams(p.nu(), p.alpha(), p.beta(), 0.0), 0.0, side);
  Acc acc;
  double T = std::max({f.min_cutoff(), t0 + 40.0 / f.lambda()});
  integrate_span(f, 0.0, t0, T, rel_tol, acc);
  extend(f, 0.0, T, rel_tol, acc, [&] { return 1e-3 * rel_tol * std::fabs(acc.value) + 1e-300; });
  return side < 0 ? acc.value : 1.0 - acc.value;
}

McResult mc_abs_moment(const VGParams& p, double r, std::size_t n, std::uint64_t seed,
                       unsigned threads) {
  if (n < 2) throw DomainError("mc_abs_moment requires at least 2 draws");
  const auto xs = sample(p, seed, n, threads);
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t i = 0;
  for (double x : xs) {
    const double v = std::pow(std::fabs(x), r);
    ++i;
    const double d = v - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (v - mean);
  }
  const double var = m2 / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

QuadResult quad_kbessel_integral(double order_mu, double order_nu, double x, double rel_tol) {
  if (!(order_nu > -0.5) || !(order_mu >= order_nu))
    throw DomainError("quad_kbessel_integral requires order_mu >= order_nu > -1/2");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("quad_kbessel_integral requires x > 0");
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const auto k = specfun::bessel_k(order_nu, t, specfun::Scaling::exponential);
    return std::exp(order_mu * std::log(t) + std::log(k.value) + k.log_scale);
  };
  const auto o = opts(rel_tol);
  Acc acc;
  const double split = std::min(1.0, x);
  acc.add(quad::integrate_left_singular(f, 0.0, split, order_mu - std::fabs(order_nu), o));
  double lo = split;
  for (double g = 2.0; lo < x; g *= 2.0) {
    const double hi = std::min(g, x);
    if (hi > lo) acc.add(quad::integrate(f, lo, hi, o));
    lo = std::max(lo, hi);
  }
  if (!acc.ok) throw ConvergenceError("quad_kbessel_integral: subdivision budget exhausted", acc.value);
  return {acc.value, acc.err, acc.subdivisions, x};
}

QuadResult quad_lemma_integral(double nu, double r, double j, double u, double rel_tol) {
  if (!(nu > -0.5)) throw DomainError("quad_lemma_integral requires nu > -1/2");
  if (!(r > -1.0)) throw DomainError("quad_lemma_integral requires r > -1");
  if (!(u > 0.0)) throw DomainError("quad_lemma_integral requires u > 0");
  auto f = [&](double t) {
    if (t <= 0.0 || t >= u) return 0.0;
    const auto k = specfun::bessel_k(nu, t, specfun::Scaling::exponential);
    return std::exp(r * std::log(u - t) + (nu + j) * std::log(t) + std::log(k.value) +
                    k.log_scale);
  };
  const auto o = opts(rel_tol);
  Acc acc;
  acc.add(quad::integrate_left_singular(f, 0.0, 0.5 * u, nu + j - std::fabs(nu), o));
  acc.add(quad::integrate_right_singular(f, 0.5 * u, u, r, o));
  if (!acc.ok) throw ConvergenceError("quad_lemma_integral: subdivision budget exhausted", acc.value);
  return {acc.value, acc.err, acc.subdivisions, u};
}

}  // namespace vgm::oracle
