#pragma once

// Periodic (Zak / theta) Gaussians on R_d and the finite ground state.
//
//   gk(x) = sum_l exp(-(k pi/d)(l d + x)^2)                        (spatial)
//         = (k d)^{-1/2} sum_l cos(2 pi l x/d) exp(-pi l^2/(k d))   (frequency)
//
// Both series are evaluated with an explicit truncation L and a bound on the
// omitted tail. The spatial form decays like exp(-pi k d l^2), the frequency
// form like exp(-pi l^2/(k d)); production paths pick the faster one.

#include <algorithm>
#include <cmath>
#include <limits>

#include "finosc/lattice.hpp"

namespace finosc {

inline constexpr double default_series_tol = 1e-18;

struct SeriesValue {
  double value = 0.0;
  int truncation = 0;    ///< terms with |l| <= truncation were summed
  double tail_bound = 0; ///< bound on the sum of the omitted terms
};

enum class ThetaSeries { spatial, frequency };

namespace detail {

inline void check_series_args(double kappa, double tol) {
  if (!(kappa > 0.0)) throw std::invalid_argument("theta gaussian needs kappa > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("series tolerance must be positive");
}

// Bound on sum_{j>=0} first * r^j, doubled for the two signs of l.
inline double two_sided_tail(double first, double ratio) {
  return 2.0 * first / (1.0 - std::min(ratio, 0.5));
}

}  // namespace detail

/// Spatial theta sum at real x with |x| <= xmax governing the truncation.
inline SeriesValue theta_spatial(int d, double kappa, double x, double tol,
                                 double xmax) {
  detail::check_series_args(kappa, tol);
  const double c = kappa * pi / d;
  // worst omitted term: |(L+1)d - xmax|
  int L = 0;
  auto omitted = [&](int l) {
    const double r = std::max(0.0, (l + 1.0) * d - xmax);
    return std::exp(-c * r * r);
  };
  while (omitted(L) >= tol) ++L;
  double acc = 0.0;
  // accumulate small terms first
  for (int l = L; l >= 1; --l) {
    const double a = l * d + x, b = -l * d + x;
    acc += std::exp(-c * a * a) + std::exp(-c * b * b);
  }
  acc += std::exp(-c * x * x);
  return {acc, L, detail::two_sided_tail(omitted(L), std::exp(-kappa * pi * d))};
}

inline SeriesValue theta_spatial(int d, double kappa, double x,
                                 double tol = default_series_tol) {
  return theta_spatial(d, kappa, x, tol, std::abs(x));
}

/// Frequency (Fourier) form of the same periodic Gaussian (Lemma 1 identity).
inline SeriesValue theta_frequency(int d, double kappa, double x,
                                   double tol = default_series_tol) {
  detail::check_series_args(kappa, tol);
  const double kd = kappa * d;
  const double pref = 1.0 / std::sqrt(kd);
  auto term = [&](int l) { return pref * std::exp(-pi * l * l / kd); };
  int L = 0;
  while (term(L + 1) >= tol) ++L;
  double acc = 0.0;
  for (int l = L; l >= 1; --l) acc += 2.0 * std::cos(2.0 * pi * l * x / d) * term(l);
  acc += pref;
  const double ratio = std::exp(-pi * (2.0 * L + 3.0) / kd);
  return {acc, L, detail::two_sided_tail(term(L + 1), ratio)};
}

/// Samples gk(n sqrt(delta)), n = -s..s, with both series forms retained.
struct ThetaGaussian {
  Lattice lattice;
  double kappa;
  Signal amp;
  ThetaSeries series;  ///< series used for amp
  int truncation;
  double tail_bound;
  Signal other_series;  ///< the same samples via the other series form
  double other_tail_bound;

  double operator[](long n) const { return amp[n].real(); }
};

inline ThetaSeries preferred_series(int d, double kappa) {
  return kappa * d >= 1.0 ? ThetaSeries::spatial : ThetaSeries::frequency;
}

inline ThetaGaussian theta_gaussian(const Lattice& lat, double kappa,
                                    double tol = default_series_tol) {
  detail::check_series_args(kappa, tol);
  const int d = lat.dim();
  const double xmax = lat.half();
  CVector spatial(d), frequency(d);
  int Ls = 0, Lf = 0;
  double ts = 0.0, tf = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n) {
    // evenness is exact: evaluate at |n| only
    const SeriesValue a = theta_spatial(d, kappa, std::abs(n), tol, xmax);
    const SeriesValue b = theta_frequency(d, kappa, std::abs(n), tol);
    spatial(lat.pos(n)) = a.value;
    frequency(lat.pos(n)) = b.value;
    Ls = std::max(Ls, a.truncation);
    Lf = std::max(Lf, b.truncation);
    ts = std::max(ts, a.tail_bound);
    tf = std::max(tf, b.tail_bound);
  }
  Signal s(lat, spatial), f(lat, frequency);
  if (preferred_series(d, kappa) == ThetaSeries::spatial)
    return {lat, kappa, s, ThetaSeries::spatial, Ls, ts, f, tf};
  return {lat, kappa, f, ThetaSeries::frequency, Lf, tf, s, ts};
}

/// theta_3(z, i t) = sum_a exp(-pi t a^2) exp(2 pi i a z), real for real z.
inline double jacobi_theta3(double z, double tau_imag, double tol = default_series_tol) {
  if (!(tau_imag > 0.0)) throw std::invalid_argument("jacobi_theta3 needs Im(tau) > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("series tolerance must be positive");
  auto term = [&](int a) { return std::exp(-pi * tau_imag * a * a); };
  int L = 0;
  while (term(L + 1) >= tol) ++L;
  double acc = 0.0;
  for (int a = L; a >= 1; --a) acc += 2.0 * std::cos(2.0 * pi * a * z) * term(a);
  return acc + 1.0;
}

/// Normalized finite ground state g = g1 / N.
struct GroundState {
  Lattice lattice;
  double norm_N;       ///< sqrt(sum_u g1(u)^2)
  double norm_series;  ///< N from the double-series identity
  Signal amp;

  double operator[](long n) const { return amp[n].real(); }
};

/// N^2 = sum_r exp(-pi r^2/d) sum_l exp(-pi (l d - r)^2/d), truncated at tol.
inline double ground_norm_series(const Lattice& lat, double tol = default_series_tol) {
  const int d = lat.dim();
  const int R = static_cast<int>(std::ceil(std::sqrt(-std::log(tol) * d / pi))) + 1;
  double acc = 0.0;
  for (int r = -R; r <= R; ++r) {
    double inner = 0.0;
    const int lo = static_cast<int>(std::floor(static_cast<double>(r - R) / d));
    const int hi = static_cast<int>(std::ceil(static_cast<double>(r + R) / d));
    for (int l = lo; l <= hi; ++l) {
      const double t = static_cast<double>(l) * d - r;
      inner += std::exp(-pi * t * t / d);
    }
    acc += std::exp(-pi * static_cast<double>(r) * r / d) * inner;
  }
  return std::sqrt(acc);
}

inline GroundState ground_state(const Lattice& lat) {
  const ThetaGaussian g1 = theta_gaussian(lat, 1.0);
  const double n_samples = g1.amp.norm();
  const double n_series = ground_norm_series(lat);
  if (std::abs(n_samples - n_series) > 1e-12 * n_samples)
    throw numerical_error("ground-state norm: sample and series forms disagree");
  return {lat, n_samples, n_series, Signal(lat, g1.amp.amplitudes() / n_samples)};
}

}  // namespace finosc
