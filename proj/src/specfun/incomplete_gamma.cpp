#include <cmath>
#include <limits>
#include <string>

#include "series.hpp"
#include "vgm/errors.hpp"
#include "vgm/specfun.hpp"

namespace vgm::specfun {

namespace {

using detail::kEps;

// gamma(a, x) for a > 0 by the series e^-x x^a sum x^k / (a)_(k+1).
FnEval lower_series(double a, double x) {
  auto ratio = [&](int k) { return x / (a + k + 1.0); };
  const auto s = detail::sum_series(a * std::log(x) - x - std::log(a), 1, ratio, 0.0, 100000);
  if (!s.converged) throw ConvergenceError("incomplete_gamma: lower series did not converge", s.sum);
  return detail::to_eval(s);
}

// Gamma(a, x) by the Legendre continued fraction (modified Lentz), any real a, x > 0.
FnEval upper_cf(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / (std::fabs(b) < tiny ? tiny : b);
  double h = d;
  int i = 1;
  for (; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  if (i == 100000) throw ConvergenceError("incomplete_gamma: continued fraction did not converge", h);
  FnEval e;
  e.value = h;
  e.abs_err = std::fabs(h) * kEps * (4.0 + 0.5 * std::sqrt(static_cast<double>(i)));
  e.log_scale = a * std::log(x) - x;
  return e;
}

// Complete Gamma(a), a > 0, as an FnEval so large a stays representable.
FnEval complete_gamma(double a) {
  FnEval e;
  if (a < 170.0) {
    e.value = std::tgamma(a);
  } else {
    e.value = 1.0;
    e.log_scale = ln_gamma(a);
  }
  e.abs_err = std::fabs(e.value) * 4.0 * kEps;
  return e;
}

// x - y for evaluations assumed positive with x > y.
FnEval subtract(const FnEval& x, const FnEval& y) {
  const double ref = x.log_scale;
  const FnEval ys = detail::rescale_to(y, ref);
  FnEval e;
  e.value = x.value - ys.value;
  e.abs_err = x.abs_err + ys.abs_err + kEps * std::fabs(e.value);
  e.log_scale = ref;
  return e;
}

bool cf_region_nonpositive(double x) { return x >= 1.5; }

FnEval upper_positive(double a, double x) {
  if (x == 0.0) return complete_gamma(a);
  // The fraction converges badly for x well below a; there gamma(a, x) << Gamma(a).
  if (x >= a + 1.0) return upper_cf(a, x);
  return subtract(complete_gamma(a), lower_series(a, x));
}

FnEval upper_any(double a, double x) {
  if (a > 0.0) return upper_positive(a, x);
  if (!(x > 0.0)) throw DomainError("incomplete_gamma: upper with a <= 0 requires x > 0");
  if (cf_region_nonpositive(x)) return upper_cf(a, x);
  // Step down from a + n in (0, 1] with Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s.
  // For s < 0 both pieces of the numerator have the same sign after division,
  // so there is no cancellation.
  const int n = static_cast<int>(std::floor(-a)) + 1;
  double s = a + n;
  double g = detail::fold(upper_positive(s, x)).real();
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    s -= 1.0;
    if (s == 0.0) throw PoleError("incomplete_gamma: internal step hit s = 0");
    g = (g - std::pow(x, s) * std::exp(-x)) / s;
    err += 3.0 * kEps;
  }
  FnEval e;
  e.value = g;
  e.abs_err = std::fabs(g) * (err + 4.0 * kEps);
  return e;
}

}  // namespace

FnEval incomplete_gamma(IncGammaKind kind, double a, double x) {
  if (!std::isfinite(a) || !std::isfinite(x)) throw DomainError("incomplete_gamma: non-finite argument");
  if (!(x >= 0.0)) throw DomainError("incomplete_gamma: requires x >= 0");
  switch (kind) {
    case IncGammaKind::lower: {
      if (!(a > 0.0)) throw DomainError("incomplete_gamma: lower requires a > 0");
      if (x == 0.0) return {};
      if (x < a + 1.0) return detail::fold(lower_series(a, x));
      return detail::fold(subtract(complete_gamma(a), upper_cf(a, x)));
    }
    case IncGammaKind::upper:
      return detail::fold(upper_any(a, x));
    case IncGammaKind::exp_weighted: {
      if (!(a > 0.0)) throw DomainError("incomplete_gamma: exp_weighted requires a > 0");
      if (x == 0.0) return {};
      // sum_k x^(a+k) / (k! (a+k)), all terms positive.
      auto ratio = [&](int k) { return x * (a + k) / ((k + 1.0) * (a + k + 1.0)); };
      const auto s = detail::sum_series(a * std::log(x) - std::log(a), 1, ratio, 0.0, 100000);
      if (!s.converged)
        throw ConvergenceError("incomplete_gamma: exp_weighted series did not converge", s.sum);
      return detail::fold(detail::to_eval(s));
    }
  }
  throw DomainError("incomplete_gamma: unknown kind");
}

}  // namespace vgm::specfun
