#pragma once

// Continuous-side references sampled on the lattice: Hermite-Gaussians,
// displaced continuous ground states, Mehta functions, the continuous
// fractional Fourier transform by Hermite expansion, and deviation metrics.

#include <functional>
#include <vector>

#include "finosc/hermite.hpp"
#include "finosc/phasespace.hpp"
#include "finosc/spectral.hpp"

namespace finosc {

/// delta^{1/4} Psi_m(n sqrt(delta)).
struct HermiteSample {
  Lattice lattice;
  int m;
  Signal amp;
};

inline HermiteSample hermite_sample(const Lattice& lat, int m) {
  const double scale = std::sqrt(lat.step());
  return {lat, m, Signal::generate(lat, [&](int n) { return scale * hermite_gaussian(m, lat.point(n)); })};
}

/// delta^{1/4} e^{-i alpha beta/2} e^{i beta x} Psi_0(x - alpha) at x = n sqrt(delta).
inline Signal displaced_ground_sample(const Lattice& lat, const PhasePoint& p) {
  const double alpha = p.alpha(lat), beta = p.beta(lat);
  const double scale = std::sqrt(lat.step());
  return Signal::generate(lat, [&](int n) {
    const double x = lat.point(n);
    return scale * std::polar(hermite_gaussian(0, x - alpha), beta * x - 0.5 * alpha * beta);
  });
}

/// max over n in [nmin, nmax] of |D(a,b) g - delta^{1/4} D(alpha,beta) Psi_0|.
inline double coherent_state_deviation(const CoherentFrame& frame, const PhasePoint& p,
                                       int nmin = -8, int nmax = 8) {
  const Lattice& lat = frame.lattice();
  const Signal& discrete = frame.state(p);
  const Signal continuous = displaced_ground_sample(lat, p);
  double worst = 0.0;
  for (int n = nmin; n <= nmax; ++n) worst = std::max(worst, std::abs(discrete[n] - continuous[n]));
  return worst;
}

struct Table1Entry {
  int alpha_idx;
  int beta_idx;
  double deviation;
};

inline constexpr std::array<int, 4> table1_steps{1, 3, 6, 9};

/// 4x4 grid over alpha, beta in {1,3,6,9} sqrt(delta); needs s >= 9.
inline std::vector<Table1Entry> table1(const CoherentFrame& frame) {
  const Lattice& lat = frame.lattice();
  if (lat.half() < 9)
    throw std::invalid_argument("table1 needs d >= 19 (alpha, beta up to 9 sqrt(delta)), got d=" +
                                std::to_string(lat.dim()));
  std::vector<Table1Entry> out;
  for (int a : table1_steps)
    for (int b : table1_steps) out.push_back({a, b, coherent_state_deviation(frame, {a, b})});
  return out;
}

/// Phi_m(n) = sum_l Psi_m((l d + n) sqrt(delta)), unscaled.
inline Signal mehta_function(const Lattice& lat, int m, double tol = 1e-18) {
  if (m < 0 || m >= lat.dim())
    throw std::invalid_argument("mehta index " + std::to_string(m) + " outside [0, d-1]");
  if (!(tol > 0.0)) throw std::invalid_argument("series tolerance must be positive");
  // beyond the turning point sqrt(2m+1), |Psi_m(x)| <= exp(-(|x|-x_t)^2/2)
  const double reach = std::sqrt(2.0 * m + 1.0) + std::sqrt(-2.0 * std::log(tol));
  const double period = lat.dim() * lat.step();
  const int L = static_cast<int>(std::ceil(reach / period)) + 1;
  return Signal::generate(lat, [&](int n) {
    double acc = 0.0;
    for (int l = -L; l <= L; ++l) acc += hermite_gaussian(m, (static_cast<double>(l) * lat.dim() + n) * lat.step());
    return acc;
  });
}

struct DeviationRow {
  int m;
  double delta_f;  ///< frame eigenvector f_m
  double delta_h;  ///< Harper function h_m
  double delta_m;  ///< Mehta function, delta^{1/4} Phi_m
  double delta_r;  ///< ladder state
};

struct DeviationReport {
  Lattice lattice;
  std::vector<DeviationRow> rows;
};

/// Per-index max-abs deviations from delta^{1/4} Psi_m sampled on the lattice.
inline DeviationReport deviation_report(const SpectralBasis& frame_basis,
                                        const SpectralBasis& harper_basis,
                                        const std::vector<Signal>& ladder,
                                        bool normalize_ladder = false) {
  const Lattice& lat = frame_basis.lattice();
  require_same(lat, harper_basis.lattice());
  const int d = lat.dim();
  if (static_cast<int>(ladder.size()) != d)
    throw std::invalid_argument("deviation_report needs d ladder states");
  const double scale = std::sqrt(lat.step());

  DeviationReport rep{lat, {}};
  for (int m = 0; m < d; ++m) {
    require_same(lat, ladder[static_cast<std::size_t>(m)].lattice());
    const Signal psi = hermite_sample(lat, m).amp;
    const Signal phi(lat, scale * mehta_function(lat, m).amplitudes());
    CVector r = ladder[static_cast<std::size_t>(m)].amplitudes();
    if (normalize_ladder) r /= r.norm();
    rep.rows.push_back({m, max_abs_distance(frame_basis.vector(m), psi),
                        max_abs_distance(harper_basis.vector(m), psi), max_abs_distance(phi, psi),
                        max_abs_distance(Signal(lat, r), psi)});
  }
  return rep;
}

struct OracleGrid {
  double lo = -12.0;
  double hi = 12.0;
  double step = 1e-3;
};

inline constexpr int default_oracle_terms = 200;

/// F^alpha[psi] at the lattice points, by truncated Hermite expansion with
/// trapezoid-rule coefficients. Unscaled samples of the continuous transform.
inline Signal continuous_frft_oracle(const std::function<double(double)>& psi, double alpha,
                                     const Lattice& lat, int M = default_oracle_terms,
                                     OracleGrid grid = {}) {
  if (M < 1 || M > max_hermite_order + 1)
    throw std::invalid_argument("oracle term count " + std::to_string(M) + " outside [1, " +
                                std::to_string(max_hermite_order + 1) + "]");
  const auto points = static_cast<long>(std::llround((grid.hi - grid.lo) / grid.step));
  std::vector<double> coeff(static_cast<std::size_t>(M), 0.0), h(static_cast<std::size_t>(M));
  for (long i = 0; i <= points; ++i) {
    const double x = grid.lo + static_cast<double>(i) * grid.step;
    const double w = (i == 0 || i == points) ? 0.5 * grid.step : grid.step;
    const double f = psi(x);
    if (f == 0.0) continue;
    hermite_gaussians(x, h);
    for (int m = 0; m < M; ++m) coeff[static_cast<std::size_t>(m)] += w * f * h[static_cast<std::size_t>(m)];
  }
  return Signal::generate(lat, [&](int n) {
    hermite_gaussians(lat.point(n), h);
    cplx acc = 0.0;
    for (int m = M - 1; m >= 0; --m)
      acc += coeff[static_cast<std::size_t>(m)] * h[static_cast<std::size_t>(m)] *
             std::polar(1.0, -pi * m * alpha / 2.0);
    return acc;
  });
}

}  // namespace finosc
