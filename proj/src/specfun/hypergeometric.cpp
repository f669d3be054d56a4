#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "series.hpp"
#include "vgm/errors.hpp"
#include "vgm/specfun.hpp"

namespace vgm::specfun {

namespace {

using detail::kEps;

constexpr double kHyp2f1MaxZ = 0.999;

int steps_past_negative(std::initializer_list<double> params) {
  double worst = 0.0;
  for (double p : params) worst = std::max(worst, std::ceil(1.0 - p));
  return static_cast<int>(worst);
}

void require_finite(std::initializer_list<double> params, const char* who) {
  for (double p : params)
    if (!std::isfinite(p)) throw DomainError(std::string(who) + ": non-finite argument");
}

}  // namespace

FnEval hyp2f1(double a, double b, double c, double z) {
  require_finite({a, b, c, z}, "hyp2f1");
  if (detail::is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
  if (!(z >= 0.0) || !(z < 1.0)) throw DomainError("hyp2f1: requires 0 <= z < 1");
  if (z == 0.0 || a == 0.0 || b == 0.0) return {1.0, 0.0, 0.0};

  auto ratio = [&](int k) { return (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z; };
  const int min_terms = steps_past_negative({a, b, c});
  if (z > kHyp2f1MaxZ) {
    const auto partial = detail::sum_series(0.0, 1, ratio, z, 20000, 0.5 * kEps, min_terms);
    throw ConvergenceError("hyp2f1: z = " + std::to_string(z) +
                               " exceeds 0.999; use quadrature instead",
                           detail::to_eval(partial).real());
  }
  const auto s = detail::sum_series(0.0, 1, ratio, z, 400000, 0.5 * kEps, min_terms);
  if (!s.converged) throw ConvergenceError("hyp2f1: series did not converge", s.sum);
  return detail::fold(detail::to_eval(s));
}

FnEval kummer_m(double a, double b, double x) {
  require_finite({a, b, x}, "kummer_m");
  if (detail::is_nonpositive_integer(b)) throw PoleError("kummer_m: b is a non-positive integer");
  if (x == 0.0 || a == 0.0) return {1.0, 0.0, 0.0};
  if (x < 0.0) {
    // M(a,b,x) = e^x M(b-a,b,-x): the transformed series has no cancellation
    // whenever b - a >= 0.
    FnEval e = kummer_m(b - a, b, -x);
    e.log_scale += x;
    return detail::fold(e);
  }
  auto ratio = [&](int k) { return (a + k) / ((b + k) * (k + 1.0)) * x; };
  const int min_terms = std::max(steps_past_negative({a, b}), static_cast<int>(x));
  const auto s = detail::sum_series(0.0, 1, ratio, 0.0, 400000, 0.5 * kEps, min_terms);
  if (!s.converged) throw ConvergenceError("kummer_m: series did not converge", s.sum);
  return detail::fold(detail::to_eval(s));
}

namespace {

// U(-n, b, x) = (-1)^n sum_s C(n,s) (b+s)_(n-s) (-x)^s.
FnEval tricomi_polynomial(int n, double b, double x) {
  double sum = 0.0;
  double abs_sum = 0.0;
  // Build from s = n downwards: term_s = C(n,s) (b+s)_(n-s) (-x)^s (-1)^n.
  double term = ((n % 2 == 0) ? 1.0 : -1.0) * std::pow(-x, n);
  for (int s = n; s >= 0; --s) {
    sum += term;
    abs_sum += std::fabs(term);
    if (s == 0) break;
    // term_{s-1} / term_s = s/(n-s+1) * (b+s-1) / (-x)
    term *= static_cast<double>(s) / (n - s + 1) * (b + s - 1) / (-x);
  }
  FnEval e;
  e.value = sum;
  e.abs_err = kEps * (2.0 + n) * abs_sum;
  return e;
}

FnEval tricomi_a1(double b, double x) {
  // U(1,b,x) = e^x x^(1-b) Gamma(b-1, x)
  FnEval e = incomplete_gamma(IncGammaKind::upper, b - 1.0, x);
  e.log_scale += x + (1.0 - b) * std::log(x);
  return detail::fold(e);
}

// Ratios h_a = U(a+1,b,x) / U(a,b,x) for a = 1..n-1 from the backward
// recurrence h_{a-1} = -1 / ((b - 2a - x) + a(a-b+1) h_a), i.e. the continued
// fraction for the minimal solution.  The start index doubles until the
// ratios settle.  h_0 is not taken from here: U(0) = 1 is not minimal and
// that last step cancels badly for small x.
bool tricomi_ratios(int n, double b, double x, std::vector<double>& h) {
  std::vector<double> prev;
  for (int start = std::max(2 * n, 32); start <= (1 << 22); start *= 2) {
    h.assign(n, 0.0);
    double ha = 0.0;
    for (int a = start; a >= 2; --a) {
      ha = -1.0 / ((b - 2.0 * a - x) + a * (a - b + 1.0) * ha);
      if (a - 1 < n) h[a - 1] = ha;
    }
    if (!prev.empty()) {
      bool settled = true;
      for (int i = 1; i < n; ++i)
        if (!(std::fabs(h[i] - prev[i]) <= 4.0 * kEps * std::fabs(h[i]))) settled = false;
      if (settled) return true;
    }
    prev = h;
  }
  return false;
}

}  // namespace

FnEval tricomi_u(double a, double b, double x) {
  require_finite({a, b, x}, "tricomi_u");
  if (a != std::nearbyint(a)) throw UnsupportedError("tricomi_u: only integer a is supported");
  if (!(x > 0.0)) throw DomainError("tricomi_u: requires x > 0");
  if (a <= 0.0) return tricomi_polynomial(static_cast<int>(-a), b, x);
  if (a == 1.0) return tricomi_a1(b, x);

  const int n = static_cast<int>(a);
  const FnEval u1 = tricomi_a1(b, x);
  std::vector<double> h;
  if (tricomi_ratios(n, b, x, h)) {
    // U(n) = U(1) * h_1 ... h_{n-1}; every h is positive for x > 0.
    double log_u = 0.0;
    for (int i = 1; i < n; ++i) {
      if (!(h[i] > 0.0)) throw ConvergenceError("tricomi_u: recurrence ratio lost its sign", 0.0);
      log_u += std::log(h[i]);
    }
    FnEval e = u1;
    e.log_scale += log_u;
    e.abs_err += std::fabs(e.value) * kEps * (4.0 + 4.0 * n);
    return detail::fold(e);
  }
  // Extremely small x: the backward start would have to be enormous.  The
  // forward recurrence from U(0) = 1 and U(1) is benign there because all U
  // share the leading power x^(1-b).
  const FnEval& hi = u1;
  double ref = hi.log_scale;
  double u_lo = std::exp(-ref);
  double u_hi = hi.value;
  double err = hi.rel_err();
  for (int k = 1; k < n; ++k) {
    const double next = -(u_lo + (b - 2.0 * k - x) * u_hi) / (k * (k - b + 1.0));
    u_lo = u_hi;
    u_hi = next;
    err += 4.0 * kEps;
  }
  FnEval e;
  e.value = u_hi;
  e.log_scale = ref;
  e.abs_err = err * std::fabs(u_hi);
  return detail::fold(e);
}

}  // namespace vgm::specfun
