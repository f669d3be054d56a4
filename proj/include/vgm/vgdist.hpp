#pragma once

// The variance-gamma distribution VG(nu, alpha, beta, mu):
//
//   p(x) = M e^{beta (x-mu)} |x-mu|^nu K_nu(alpha |x-mu|),
//   M    = (alpha^2 - beta^2)^(nu+1/2) / (sqrt(pi) (2 alpha)^nu Gamma(nu+1/2)),
//
// with nu > -1/2, 0 <= |beta| < alpha.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vgm {

class VGParams {
 public:
  /// Throws DomainError naming the violated constraint.
  VGParams(double nu, double alpha, double beta, double mu);

  double nu() const noexcept { return nu_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double mu() const noexcept { return mu_; }
  /// log of the normalising constant M.
  double log_norm() const noexcept { return log_norm_; }
  double norm() const;

  bool operator==(const VGParams& o) const noexcept {
    return nu_ == o.nu_ && alpha_ == o.alpha_ && beta_ == o.beta_ && mu_ == o.mu_;
  }

 private:
  double nu_, alpha_, beta_, mu_;
  double log_norm_;
};

VGParams new_vg(double nu, double alpha, double beta, double mu);

double pdf(const VGParams& p, double x);
double mean(const VGParams& p);
double variance(const VGParams& p);
VGParams shift(const VGParams& p, double a);
/// Parameters of X - E[X].
VGParams centralize(const VGParams& p);
/// Law of the sum of n iid copies.
VGParams convolve_iid(const VGParams& p, int n);

/// Asymmetric Laplace AL(alpha, beta, mu) = VG(1/2, alpha, beta, mu).
struct ALParams {
  double alpha;
  double beta;
  double mu;
};

/// The (kappa, sigma) form: alpha = (kappa^-1 + kappa) / (sqrt2 sigma),
/// beta = (kappa^-1 - kappa) / (sqrt2 sigma).
struct ALKappaSigma {
  double kappa;
  double sigma;
  double location;
};

/// Mean of n iid products U V of zero-mean bivariate normals.
struct ProductNormalParams {
  double sigma_u;
  double sigma_v;
  double rho;
  int n = 1;
};

void validate(const ALParams& a);
void validate(const ALKappaSigma& k);
void validate(const ProductNormalParams& q);

VGParams from_al(const ALParams& a);
ALParams from_al_kappa(const ALKappaSigma& k);
ALKappaSigma to_al_kappa(const ALParams& a);
VGParams from_normal_product(const ProductNormalParams& q);

/// iid draws from the normal variance-mean mixture X = mu + beta V + sqrt(V) N,
/// V ~ Gamma(shape nu + 1/2, rate (alpha^2 - beta^2)/2).  Draws are produced
/// in fixed-size chunks, each with its own generator seeded from (seed, chunk
/// index), so the output does not depend on `threads`.
std::vector<double> sample(const VGParams& p, std::uint64_t seed, std::size_t count,
                           unsigned threads = 1);

/// Chunk length used by sample(); exposed for tests.
inline constexpr std::size_t kSampleChunk = 1 << 16;

}  // namespace vgm
