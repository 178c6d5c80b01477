#pragma once

// Discrete fractional Fourier transforms built from a Fourier-invariant
// eigenbasis: K(alpha) = sum_m exp(-i pi m alpha/2) b_m b_m^T.

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "finosc/spectral.hpp"
#include "finosc/thetagauss.hpp"

namespace finosc {

struct FrftKernel {
  BasisKind kind;
  double alpha;
  Operator K;
};

inline FrftKernel frft_kernel(const SpectralBasis& basis, double alpha) {
  const Lattice& lat = basis.lattice();
  const int d = lat.dim();
  if (basis.size() != d || basis.vectors().cols() != d)
    throw std::invalid_argument("frft_kernel needs a complete basis of d vectors");
  for (int m = 0; m < d; ++m) {
    const BasisLabel& l = basis.label(m);
    if (l.fourier_index != m || l.alternations != m || l.fourier_class != m % 4)
      throw numerical_error("basis labels inconsistent at m=" + std::to_string(m) +
                            "; refusing to build fractional powers");
  }
  CVector phase(d);
  for (int m = 0; m < d; ++m) phase(m) = std::polar(1.0, -pi * m * alpha / 2.0);
  const CMatrix v = basis.vectors().cast<cplx>();
  CMatrix k = v * phase.asDiagonal() * v.transpose();
  return {basis.kind(), alpha, Operator(lat, std::move(k))};
}

inline Signal apply_frft(const FrftKernel& kernel, const Signal& phi) { return kernel.K.apply(phi); }

/// 1 on {-sqrt(delta), 0, sqrt(delta)}, 0 elsewhere.
inline Signal rectangular_signal(const Lattice& lat) {
  return Signal::generate(lat, [](int n) { return std::abs(n) <= 1 ? 1.0 : 0.0; });
}

/// Samples of the theta Gaussian g_kappa.
inline Signal gaussian_signal(const Lattice& lat, double kappa) {
  return theta_gaussian(lat, kappa).amp;
}

/// Kernels keyed by (basis kind, alpha); bases are supplied at construction.
class KernelCache {
 public:
  KernelCache(std::shared_ptr<const SpectralBasis> frame, std::shared_ptr<const SpectralBasis> harper)
      : frame_(std::move(frame)), harper_(std::move(harper)) {}

  std::shared_ptr<const FrftKernel> get(BasisKind kind, double alpha) {
    const std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(kind, alpha);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const SpectralBasis& b = kind == BasisKind::frame ? *frame_ : *harper_;
    auto k = std::make_shared<const FrftKernel>(frft_kernel(b, alpha));
    cache_.emplace(key, k);
    return k;
  }

 private:
  std::shared_ptr<const SpectralBasis> frame_, harper_;
  std::mutex mu_;
  std::map<std::pair<BasisKind, double>, std::shared_ptr<const FrftKernel>> cache_;
};

}  // namespace finosc
