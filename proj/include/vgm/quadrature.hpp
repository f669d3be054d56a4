#pragma once

// Globally adaptive 21-point Gauss-Kronrod quadrature on finite intervals.
//
// The interval with the largest error estimate is bisected until the summed
// estimate meets max(abs_tol, rel_tol * |result|) or the subdivision budget
// runs out.  Panel error estimates follow QUADPACK's qk21 heuristic, which is
// conservative for smooth integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace vgm::quad {

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double abs_err = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel kronrod21(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::fabs(resk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  const double h = std::fabs(half);
  resk *= half;
  resg *= half;
  resabs *= h;
  resasc *= h;
  double err = std::fabs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk, err};
}

}  // namespace detail

/// Integrate f over [a, b].
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> heap;
  auto first = detail::kronrod21(f, a, b);
  double total = first.value;
  double total_err = first.err;
  heap.push(first);
  int splits = 0;
  auto done = [&] {
    return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
  };
  while (!done() && splits < opt.max_subdivisions) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) break;
    heap.pop();
    auto left = detail::kronrod21(f, worst.a, mid);
    auto right = detail::kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().err;
    heap.pop();
  }
  out.value = total;
  out.abs_err = total_err;
  out.subdivisions = splits;
  out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
  return out;
}

/// Integrate f over [a, b] when f(x) behaves like (x - a)^c near the left end
/// (c > -1, a logarithmic factor is allowed).  Substitutes x = a + (b-a) s^p
/// with p = 2 / (c + 1) so the transformed integrand vanishes linearly at s = 0.
template <class F>
Result integrate_left_singular(F&& f, double a, double b, double c, const Options& opt = {}) {
  const double p = std::max(1.0, 2.0 / (c + 1.0));
  const double w = b - a;
  auto g = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double sp = std::pow(s, p);
    const double x = a + w * sp;
    const double val = f(x);
    return val == 0.0 ? 0.0 : val * w * p * sp / s;
  };
  return integrate(g, 0.0, 1.0, opt);
}

/// Mirror of integrate_left_singular for behaviour (b - x)^c at the right end.
template <class F>
Result integrate_right_singular(F&& f, double a, double b, double c, const Options& opt = {}) {
  const double p = std::max(1.0, 2.0 / (c + 1.0));
  const double w = b - a;
  auto g = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double sp = std::pow(s, p);
    const double val = f(b - w * sp);
    return val == 0.0 ? 0.0 : val * w * p * sp / s;
  };
  return integrate(g, 0.0, 1.0, opt);
}

}  // namespace vgm::quad
