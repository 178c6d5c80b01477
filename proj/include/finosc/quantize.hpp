#pragma once

// Finite frame quantization of phase-space symbols, the frame Hamiltonian
// H_d with its circulant fast path, the raising operator and ladder states.

#include <string>
#include <vector>

#include "finosc/phasespace.hpp"
#include "finosc/spectral.hpp"

namespace finosc {

struct PhaseSymbol {
  std::string name;
  std::function<cplx(double, double)> fn;

  cplx operator()(double alpha, double beta) const { return fn(alpha, beta); }
};

/// (alpha^2 + beta^2)/2
inline PhaseSymbol harmonic_symbol() {
  return {"harmonic", [](double a, double b) { return cplx(0.5 * (a * a + b * b)); }};
}

/// (alpha - i beta)/sqrt(2)
inline PhaseSymbol raising_symbol() {
  return {"raising", [](double a, double b) { return cplx(a, -b) / std::sqrt(2.0); }};
}

/// (alpha + i beta)/sqrt(2)
inline PhaseSymbol lowering_symbol() {
  return {"lowering", [](double a, double b) { return cplx(a, b) / std::sqrt(2.0); }};
}

inline PhaseSymbol constant_symbol(cplx c) {
  return {"constant", [c](double, double) { return c; }};
}

/// A_f = (1/d) sum_p f(p) |p><p|, summed directly over all d^2 frame states.
inline Operator frame_quantize(const CoherentFrame& frame, const PhaseSymbol& f) {
  const Lattice& lat = frame.lattice();
  const int d = lat.dim();
  CMatrix acc = CMatrix::Zero(d, d);
  frame.for_each([&](const PhasePoint& p, const Signal& v) {
    acc.noalias() += f(p.alpha(lat), p.beta(lat)) * (v.amplitudes() * v.amplitudes().adjoint());
  });
  return Operator(lat, acc / static_cast<double>(d));
}

struct FrameHamiltonian {
  Lattice lattice;
  Operator H;     ///< A_f - 1/2 for f = (alpha^2+beta^2)/2
  RVector tau;    ///< tau_0 .. tau_s
  RVector omega;  ///< omega_0 .. omega_s
  Signal conv;    ///< cyclic convolution q^2 * g^2

  /// tau_k for any integer k (cyclic, even in k).
  double tau_at(long k) const { return tau(std::abs(lattice.wrap(k))); }
  double omega_at(long k) const { return omega(std::abs(lattice.wrap(k))); }
};

/// q^2 * g^2 evaluated on the lattice: conv(k) = sum_a (a^2 delta) g^2(k-a).
inline Signal harmonic_convolution(const GroundState& g) {
  const Lattice& lat = g.lattice;
  return Signal::generate(lat, [&](int k) {
    double acc = 0.0;
    for (int a = -lat.half(); a <= lat.half(); ++a) {
      const double ga = g[k - a];
      acc += a * a * lat.delta() * ga * ga;
    }
    return acc;
  });
}

/// Fast path: H = -1/2 + D_f + F^+ D_f F with D_f = diag(conv/2).
inline FrameHamiltonian frame_hamiltonian(const Lattice& lat) {
  const int s = lat.half();
  const GroundState g = ground_state(lat);
  const Signal conv = harmonic_convolution(g);
  const Operator f = dft_operator(lat);
  const Operator fi = dft_operator(lat, Direction::inverse);
  const Operator df = Operator::diagonal(Signal(lat, 0.5 * conv.amplitudes()));
  const Operator h = cplx(-0.5) * Operator::identity(lat) + df + fi * df * f;

  const Signal fconv = f.apply(conv);
  const double tau0 = pi / lat.dim() * s * (s + 1.0) / 3.0;
  RVector tau(s + 1), omega(s + 1);
  for (int k = 0; k <= s; ++k) {
    tau(k) = fconv[k].real() / (2.0 * std::sqrt(static_cast<double>(lat.dim())));
    omega(k) = tau0 + 0.5 * conv[k].real();
  }
  return {lat, h, tau, omega, conv};
}

/// trace(H_d) / (d^2/2), the ratio against sum_{n<d} (n + 1/2).
inline double trace_ratio(const Lattice& lat) {
  const FrameHamiltonian fh = frame_hamiltonian(lat);
  const double d = lat.dim();
  return fh.H.matrix().trace().real() / (0.5 * d * d);
}

/// <p|H_d|p> from the closed form in conv and g^2.
inline double coherent_expectation(const FrameHamiltonian& fh, const CoherentFrame& frame,
                                   const PhasePoint& p) {
  require_same(fh.lattice, frame.lattice());
  const Lattice& lat = fh.lattice;
  const GroundState& g = frame.ground();
  double acc = 0.0;
  for (int u = -lat.half(); u <= lat.half(); ++u) {
    const double ga = g[u - p.a], gb = g[u - p.b];
    acc += fh.conv[u].real() * (ga * ga + gb * gb);
  }
  return -0.5 + 0.5 * acc;
}

struct WielandtHoffman {
  double lhs;  ///< (1/d) sum |n - lambda_n|
  double rhs;  ///< distance bound from the equidistant circulant C_d
};

inline WielandtHoffman wielandt_hoffman_gap(const FrameHamiltonian& fh) {
  const Lattice& lat = fh.lattice;
  const int d = lat.dim();
  const EigenSystem es = eigh(fh.H + cplx(0.5) * Operator::identity(lat));
  double lhs = 0.0;
  for (int n = 1; n <= d; ++n) lhs += std::abs(n - es.values(n - 1));
  lhs /= d;

  const CirculantSpec cd = equidistant_circulant(lat);
  double off = 0.0;
  for (int k = 1; k < d; ++k) off += std::norm(fh.tau_at(k) - cd.coefficient(k));
  double diag = 0.0;
  for (int k = -lat.half(); k <= lat.half(); ++k) diag += std::norm(fh.omega_at(k) - cd.coefficient(0));
  return {lhs, std::sqrt(off + diag / d)};
}

namespace detail {

/// sum_{b=-s}^{s} b exp(2 pi i b k/d), closed form (zero at k = 0).
inline cplx weighted_root_sum(const Lattice& lat, long k) {
  const int kk = lat.wrap(k);
  if (kk == 0) return 0.0;
  const double sign = (kk % 2 == 0) ? 1.0 : -1.0;
  return -I * sign * (lat.dim() / 2.0) / std::sin(pi * kk / lat.dim());
}

}  // namespace detail

/// a_d^+ = A_f for f = (alpha - i beta)/sqrt(2), with the sum over beta done
/// in closed form: O(d^2) work instead of O(d^4).
inline Operator raising_operator(const CoherentFrame& frame) {
  const Lattice& lat = frame.lattice();
  const GroundState& g = frame.ground();
  const int d = lat.dim();
  // first moment M(n) = sum_a a g^2(n-a); autocorrelation R(k) = sum_j g(j) g(j-k)
  RVector moment(d), autocorr(d);
  for (int n = -lat.half(); n <= lat.half(); ++n) {
    double m = 0.0, r = 0.0;
    for (int a = -lat.half(); a <= lat.half(); ++a) {
      m += a * g[n - a] * g[n - a];
      r += g[a] * g[a - n];
    }
    moment(lat.pos(n)) = m;
    autocorr(lat.pos(n)) = r;
  }
  const double scale = std::sqrt(pi / d) / d;
  CMatrix out(d, d);
  for (int n = -lat.half(); n <= lat.half(); ++n)
    for (int m = -lat.half(); m <= lat.half(); ++m) {
      cplx e = -I * detail::weighted_root_sum(lat, n - m) * autocorr(lat.pos(n - m));
      if (n == m) e += static_cast<double>(d) * moment(lat.pos(n));
      out(lat.pos(n), lat.pos(m)) = scale * e;
    }
  return Operator(lat, std::move(out));
}

/// f_0 = g, f_{n+1} = a^+ f_n / sqrt(n+1); returned unnormalized.
inline std::vector<Signal> ladder_states(const CoherentFrame& frame, int count) {
  const Lattice& lat = frame.lattice();
  if (count < 1 || count > lat.dim())
    throw std::invalid_argument("ladder count " + std::to_string(count) + " outside [1, " +
                                std::to_string(lat.dim()) + "]");
  const Operator up = raising_operator(frame);
  std::vector<Signal> out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(frame.ground().amp);
  for (int n = 0; n + 1 < count; ++n)
    out.push_back(Signal(lat, up.matrix() * out.back().amplitudes() / std::sqrt(n + 1.0)));
  return out;
}

/// Eigenbasis f_m of H_d; values are H_d eigenvalues (about m + 1/2).
inline SpectralBasis frame_basis(const FrameHamiltonian& fh) {
  return oscillator_basis(fh.H, BasisKind::frame);
}

inline SpectralBasis frame_basis(const Lattice& lat) { return frame_basis(frame_hamiltonian(lat)); }

}  // namespace finosc
