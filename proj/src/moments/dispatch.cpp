#include <algorithm>
#include <cmath>
#include <string>

#include "common.hpp"
#include "vgm/oracle.hpp"

namespace vgm {

const char* method_name(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::raw: return "raw";
    case Method::even: return "even";
    case Method::odd_series: return "odd-series";
    case Method::symmetric: return "symmetric";
    case Method::halfint: return "halfint";
    case Method::asymptotic: return "asymptotic";
    case Method::mu_zero: return "mu-zero";
    case Method::quadrature: return "quad";
    case Method::monte_carlo: return "mc";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  if (s == "auto" || s == "automatic") return Method::automatic;
  if (s == "raw") return Method::raw;
  if (s == "even") return Method::even;
  if (s == "odd-series" || s == "odd_series") return Method::odd_series;
  if (s == "symmetric") return Method::symmetric;
  if (s == "halfint") return Method::halfint;
  if (s == "asymptotic") return Method::asymptotic;
  if (s == "mu-zero" || s == "mu_zero") return Method::mu_zero;
  if (s == "quad" || s == "quadrature") return Method::quadrature;
  if (s == "mc" || s == "monte-carlo" || s == "monte_carlo") return Method::monte_carlo;
  throw UnsupportedError("unknown method '" + s + "'");
}

namespace {

int odd_order(double r, const char* method) {
  if (!detail::is_integer(r) || r < 1.0 || static_cast<long long>(r) % 2 == 0)
    throw DomainError(std::string("method ") + method + " requires an odd integer order");
  return static_cast<int>(r);
}

EvalResult by_quadrature(const VGParams& p, double r, double rel_tol) {
  const auto q = oracle::quad_abs_moment(p, r, rel_tol);
  EvalResult out;
  out.value = q.value;
  out.method_used = Method::quadrature;
  out.terms_used = 0;
  out.error_bound = q.est_abs_err;
  return out;
}

EvalResult by_monte_carlo(const VGParams& p, double r, const MomentQuery& q) {
  const auto mc = oracle::mc_abs_moment(p, r, q.mc_samples, q.seed);
  EvalResult out;
  out.value = mc.estimate;
  out.method_used = Method::monte_carlo;
  out.terms_used = 0;
  out.error_bound = 4.0 * mc.std_error;
  return out;
}

EvalResult forced(const VGParams& p, double r, const MomentQuery& q) {
  const bool even = detail::is_integer(r) && r >= 2.0 && static_cast<long long>(r) % 2 == 0;
  switch (q.method) {
    case Method::raw:
      if (!even) throw DomainError("method raw gives E|X|^r only for even integer r");
      return raw_moment(p, static_cast<int>(r));
    case Method::even:
      if (!even) throw DomainError("method even requires an even integer order r >= 2");
      return abs_moment_even(p, static_cast<int>(r));
    case Method::odd_series: {
      SeriesControl c{q.rel_tol, q.max_terms, 0};
      return abs_moment_odd_series(p, odd_order(r, "odd-series"), c);
    }
    case Method::symmetric:
      return abs_moment_symmetric(p, odd_order(r, "symmetric"));
    case Method::halfint:
      return abs_moment_halfint(p, r);
    case Method::asymptotic:
      return abs_moment_asymptotic(p, odd_order(r, "asymptotic"));
    case Method::mu_zero:
      return abs_moment_mu_zero(p, r);
    case Method::quadrature:
      return by_quadrature(p, r, std::max(q.rel_tol, 1e-14));
    case Method::monte_carlo:
      return by_monte_carlo(p, r, q);
    case Method::automatic:
      break;
  }
  throw DomainError("no method selected");
}

EvalResult automatic(const VGParams& p, double r, const MomentQuery& q) {
  if (p.mu() == 0.0) return abs_moment_mu_zero(p, r);
  const bool integer = detail::is_integer(r) && r >= 1.0;
  if (integer && static_cast<long long>(r) % 2 == 0) return abs_moment_even(p, static_cast<int>(r));
  if (detail::is_half_integer_shape(p.nu())) return abs_moment_halfint(p, r);
  if (integer) {
    try {
      SeriesControl c{q.rel_tol, q.max_terms, 0};
      return abs_moment_odd_series(p, static_cast<int>(r), c);
    } catch (const ConvergenceError& e) {
      auto out = by_quadrature(p, r, std::max(q.rel_tol, 1e-14));
      out.warnings.push_back(std::string("odd-order series failed (") + e.what() +
                             "); fell back to quadrature");
      return out;
    }
  }
  auto out = by_quadrature(p, r, std::max(q.rel_tol, 1e-14));
  out.warnings.push_back(
      "no closed form for non-integer r with this nu; value computed by quadrature");
  return out;
}

}  // namespace

EvalResult moment(const VGParams& params, const MomentQuery& q) {
  if (!(q.rel_tol > 0.0) || !std::isfinite(q.rel_tol)) throw DomainError("rel_tol must be positive");
  if (q.max_terms < 1) throw DomainError("max_terms must be at least 1");
  const VGParams p = q.kind == MomentKind::central ? centralize(params) : params;
  const double r = q.order_r;
  if (!q.absolute) {
    if (!detail::is_integer(r) || r < 1.0)
      throw DomainError("non-absolute moments require a positive integer order r");
    const bool even = static_cast<long long>(r) % 2 == 0;
    if (q.method == Method::automatic || q.method == Method::raw)
      return raw_moment(p, static_cast<int>(r));
    if (!even)
      throw DomainError(std::string("method ") + method_name(q.method) +
                        " computes E|X|^r and cannot give an odd non-absolute moment");
    // x^r = |x|^r for even r.
  }
  detail::require_abs_order(p, r);
  if (q.method != Method::automatic) return forced(p, r, q);
  return automatic(p, r, q);
}

}  // namespace vgm
