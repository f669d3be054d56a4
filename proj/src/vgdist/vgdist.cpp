#include "vgm/vgdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "vgm/errors.hpp"
#include "vgm/specfun.hpp"

namespace vgm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// (2 nu + 1) beta / (alpha^2 - beta^2); shared by mean and centralize so the
// centred mean cancels exactly.
double mean_offset(double nu, double alpha, double beta) {
  return (2.0 * nu + 1.0) * beta / ((alpha - beta) * (alpha + beta));
}

}  // namespace

VGParams::VGParams(double nu, double alpha, double beta, double mu)
    : nu_(nu), alpha_(alpha), beta_(beta), mu_(mu) {
  if (!std::isfinite(nu) || !std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(mu))
    throw DomainError("VG parameters must be finite");
  if (!(nu > -0.5)) throw DomainError("VG requires nu > -1/2, got nu = " + fmt(nu));
  if (!(std::fabs(beta) < alpha))
    throw DomainError("VG requires 0 <= |beta| < alpha, got alpha = " + fmt(alpha) +
                      ", beta = " + fmt(beta));
  const double diff = (alpha - beta) * (alpha + beta);
  log_norm_ = (nu + 0.5) * std::log(diff) - 0.5 * std::log(std::numbers::pi) -
              nu * std::log(2.0 * alpha) - specfun::ln_gamma(nu + 0.5);
  if (!std::isfinite(log_norm_)) throw DomainError("VG normalising constant is not finite");
}

double VGParams::norm() const { return std::exp(log_norm_); }

VGParams new_vg(double nu, double alpha, double beta, double mu) {
  return VGParams(nu, alpha, beta, mu);
}

double pdf(const VGParams& p, double x) {
  const double d = std::fabs(x - p.mu());
  if (d == 0.0) {
    if (p.nu() <= 0.0) return std::numeric_limits<double>::infinity();
    // x^nu K_nu(x) -> 2^(nu-1) Gamma(nu), scaled by alpha^-nu.
    return std::exp(p.log_norm() + (p.nu() - 1.0) * std::log(2.0) +
                    specfun::ln_gamma(p.nu()) - p.nu() * std::log(p.alpha()));
  }
  const auto k = specfun::bessel_k(p.nu(), p.alpha() * d, specfun::Scaling::exponential);
  if (k.value == 0.0) return 0.0;
  return std::exp(p.log_norm() + p.beta() * (x - p.mu()) + p.nu() * std::log(d) +
                  std::log(k.value) + k.log_scale);
}

double mean(const VGParams& p) { return p.mu() + mean_offset(p.nu(), p.alpha(), p.beta()); }

double variance(const VGParams& p) {
  const double diff = (p.alpha() - p.beta()) * (p.alpha() + p.beta());
  const double k = 2.0 * p.nu() + 1.0;
  return k / diff + 2.0 * p.beta() * p.beta() * k / (diff * diff);
}

VGParams shift(const VGParams& p, double a) { return {p.nu(), p.alpha(), p.beta(), p.mu() + a}; }

VGParams centralize(const VGParams& p) {
  return {p.nu(), p.alpha(), p.beta(), -mean_offset(p.nu(), p.alpha(), p.beta())};
}

VGParams convolve_iid(const VGParams& p, int n) {
  if (n < 1) throw DomainError("convolve_iid requires n >= 1");
  return {n * p.nu() + 0.5 * (n - 1), p.alpha(), p.beta(), n * p.mu()};
}

void validate(const ALParams& a) {
  if (!std::isfinite(a.alpha) || !std::isfinite(a.beta) || !std::isfinite(a.mu))
    throw DomainError("AL parameters must be finite");
  if (!(std::fabs(a.beta) < a.alpha))
    throw DomainError("AL requires 0 <= |beta| < alpha, got alpha = " + fmt(a.alpha) +
                      ", beta = " + fmt(a.beta));
}

void validate(const ALKappaSigma& k) {
  if (!(k.kappa > 0.0) || !std::isfinite(k.kappa)) throw DomainError("AL requires kappa > 0");
  if (!(k.sigma > 0.0) || !std::isfinite(k.sigma)) throw DomainError("AL requires sigma > 0");
  if (!std::isfinite(k.location)) throw DomainError("AL location must be finite");
}

void validate(const ProductNormalParams& q) {
  if (!(q.sigma_u > 0.0) || !std::isfinite(q.sigma_u)) throw DomainError("requires sigma_u > 0");
  if (!(q.sigma_v > 0.0) || !std::isfinite(q.sigma_v)) throw DomainError("requires sigma_v > 0");
  if (!(q.rho > -1.0 && q.rho < 1.0)) throw DomainError("requires -1 < rho < 1");
  if (q.n < 1) throw DomainError("requires n >= 1");
}

VGParams from_al(const ALParams& a) {
  validate(a);
  return {0.5, a.alpha, a.beta, a.mu};
}

ALParams from_al_kappa(const ALKappaSigma& k) {
  validate(k);
  const double c = 1.0 / (std::numbers::sqrt2 * k.sigma);
  return {c * (1.0 / k.kappa + k.kappa), c * (1.0 / k.kappa - k.kappa), k.location};
}

ALKappaSigma to_al_kappa(const ALParams& a) {
  validate(a);
  // alpha + beta = sqrt2 / (sigma kappa), alpha - beta = sqrt2 kappa / sigma.
  const double kappa = std::sqrt((a.alpha - a.beta) / (a.alpha + a.beta));
  const double sigma = std::sqrt(2.0 / ((a.alpha - a.beta) * (a.alpha + a.beta)));
  return {kappa, sigma, a.mu};
}

VGParams from_normal_product(const ProductNormalParams& q) {
  validate(q);
  const double s = q.sigma_u * q.sigma_v;
  const double d = s * (1.0 - q.rho) * (1.0 + q.rho);
  return {0.5 * (q.n - 1), q.n / d, q.n * q.rho / d, 0.0};
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void fill_chunk(const VGParams& p, std::uint64_t seed, std::size_t chunk, double* out,
                std::size_t len) {
  std::mt19937_64 gen(splitmix64(seed ^ splitmix64(chunk)));
  const double rate = 0.5 * (p.alpha() - p.beta()) * (p.alpha() + p.beta());
  std::gamma_distribution<double> mix(p.nu() + 0.5, 1.0 / rate);
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < len; ++i) {
    const double v = mix(gen);
    out[i] = p.mu() + p.beta() * v + std::sqrt(v) * normal(gen);
  }
}

}  // namespace

std::vector<double> sample(const VGParams& p, std::uint64_t seed, std::size_t count,
                           unsigned threads) {
  std::vector<double> out(count);
  const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
  auto work = [&](unsigned w, unsigned stride) {
    for (std::size_t c = w; c < chunks; c += stride) {
      const std::size_t begin = c * kSampleChunk;
      fill_chunk(p, seed, c, out.data() + begin, std::min(kSampleChunk, count - begin));
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads <= 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace vgm
