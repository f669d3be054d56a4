#pragma once

// Reference evaluations that share no formula with the moments module:
// adaptive quadrature of the defining integrals and Monte-Carlo averages.

#include <cstddef>
#include <cstdint>

#include "vgm/vgdist.hpp"

namespace vgm::oracle {

struct QuadResult {
  double value = 0.0;
  double est_abs_err = 0.0;
  int subdivisions = 0;
  /// For moment integrals: the truncation point in units of alpha |x - mu|
  /// (the larger of the two sides).  For finite integrals: the upper limit.
  double tail_cutoff = 0.0;
};

/// E|X|^r = int |x|^r p(x) dx.  Split at x = mu and x = 0, each side mapped to
/// t = alpha |x - mu|, both tails cut where a rigorous majorant of the
/// remaining mass drops below rel_tol * 1e-3 of the running estimate.
/// Throws ConvergenceError when the error estimate exceeds rel_tol * value.
QuadResult quad_abs_moment(const VGParams& p, double r, double rel_tol = 1e-12);

/// P(X <= x) by quadrature of the density.
double quad_cdf(const VGParams& p, double x, double rel_tol = 1e-12);

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Sample mean of |X_i|^r over n draws of vgdist::sample and its standard error.
McResult mc_abs_moment(const VGParams& p, double r, std::size_t n, std::uint64_t seed,
                       unsigned threads = 1);

/// int_0^x t^mu K_nu(t) dt, mu >= nu > -1/2.
QuadResult quad_kbessel_integral(double order_mu, double order_nu, double x,
                                 double rel_tol = 1e-12);

/// int_0^u (u - t)^r t^(nu+j) K_nu(t) dt.
QuadResult quad_lemma_integral(double nu, double r, double j, double u, double rel_tol = 1e-12);

}  // namespace vgm::oracle
