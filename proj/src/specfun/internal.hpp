#pragma once

#include "vgm/specfun.hpp"

namespace vgm::specfun::detail {

/// big_g for x <= 30 with K_nu(x) and K_{nu-1}(x) supplied by the caller
/// (exponentially scaled or not), for loops that vary only order_mu.
FnEval big_g_from_bessel(double order_mu, double order_nu, double x, const FnEval& k_nu,
                         const FnEval& k_nm1);

}  // namespace vgm::specfun::detail
