#pragma once

// Invariant checks run by `finosc verify`. Each check reports the measured
// residual and the tolerance it is held to.

#include <random>
#include <string>
#include <vector>

#include "finosc/finosc.hpp"

namespace finosc::cli {

struct Check {
  int d;
  std::string name;
  double value;
  double tol;
  bool ok() const { return value <= tol; }  // NaN fails
};

namespace detail {

inline double fro(const CMatrix& m) { return m.norm(); }
template <class E>
double maxabs(const Eigen::MatrixBase<E>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

inline CVector random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(nd(rng), nd(rng));
  return v;
}

}  // namespace detail

inline std::vector<Check> verify_lattice(const Lattice& lat) {
  using namespace detail;
  const int d = lat.dim();
  std::vector<Check> out;
  out.push_back({d, "lattice.delta_times_d", std::abs(lat.delta() * d - 2.0 * pi) / (2.0 * pi), 1e-15});

  std::mt19937_64 rng(1);
  const Signal a(lat, random_vector(d, rng)), b(lat, random_vector(d, rng));
  double periodic = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n) periodic += std::abs(a[n] - a[n + d]) + std::abs(a[n] - a[n - 3 * d]);
  out.push_back({d, "lattice.periodic_access", periodic, 0.0});
  out.push_back({d, "lattice.inner_product_hermitian",
                 std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) / (a.norm() * b.norm()), 1e-14});
  return out;
}

inline std::vector<Check> verify_fourier(const Lattice& lat) {
  using namespace detail;
  const int d = lat.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const Operator f = dft_operator(lat);
  const Operator fi = dft_operator(lat, Direction::inverse);
  std::vector<Check> out;
  out.push_back({d, "fourier.unitary", fro(f.matrix() * fi.matrix() - id), 1e-13});
  const CMatrix f2 = f.matrix() * f.matrix();
  out.push_back({d, "fourier.fourth_power_identity", fro(f2 * f2 - id), 1e-12});

  double parity = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n)
    for (int m = -lat.half(); m <= lat.half(); ++m)
      parity = std::max(parity, std::abs(f2(lat.pos(n), lat.pos(m)) - (n == -m ? 1.0 : 0.0)));
  out.push_back({d, "fourier.square_is_parity", parity, 1e-13});

  const FourierProjectors pr = fourier_projectors(lat);
  CMatrix sum = CMatrix::Zero(d, d), spectral = CMatrix::Zero(d, d);
  double idem = 0.0, cross = 0.0;
  const std::array<cplx, 4> mi{cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  for (int j = 0; j < 4; ++j) {
    const CMatrix& p = pr.pi[static_cast<std::size_t>(j)].matrix();
    sum += p;
    spectral += mi[static_cast<std::size_t>(j)] * p;
    idem = std::max(idem, fro(p * p - p));
    for (int k = 0; k < 4; ++k)
      if (k != j) cross = std::max(cross, fro(p * pr.pi[static_cast<std::size_t>(k)].matrix()));
  }
  out.push_back({d, "fourier.projectors_complete", fro(sum - id), 1e-12});
  out.push_back({d, "fourier.projectors_idempotent", idem, 1e-12});
  out.push_back({d, "fourier.projectors_orthogonal", cross, 1e-12});
  out.push_back({d, "fourier.spectral_representation", fro(spectral - f.matrix()), 1e-12});

  const CoordinateTransforms ct = closed_form_coordinate_transforms(lat);
  const Signal q = coordinate_signal(lat);
  const Signal q2(lat, q.amplitudes().cwiseProduct(q.amplitudes()));
  out.push_back({d, "fourier.closed_form_coordinate", max_abs_distance(ct.of_coordinate, f.apply(q)), 1e-12});
  out.push_back({d, "fourier.closed_form_square", max_abs_distance(ct.of_square, f.apply(q2)), 1e-12});

  double roots = 0.0;
  for (int n = -2 * d; n <= 2 * d; ++n) {
    cplx acc = 0.0;
    for (int a = -lat.half(); a <= lat.half(); ++a) acc += root_of_unity(lat, a, n, 1);
    roots = std::max(roots, std::abs(acc - (n % d == 0 ? cplx(d) : cplx(0))));
  }
  out.push_back({d, "fourier.root_of_unity_sum", roots, 1e-10});

  const CirculantSpec cd = equidistant_circulant(lat);
  const Signal lam = cd.eigenvalues();
  std::vector<double> ev;
  double imag = 0.0;
  for (int k = -lat.half(); k <= lat.half(); ++k) {
    ev.push_back(lam[k].real());
    imag = std::max(imag, std::abs(lam[k].imag()));
  }
  std::sort(ev.begin(), ev.end());
  double equi = imag;
  for (int k = 0; k < d; ++k) equi = std::max(equi, std::abs(ev[static_cast<std::size_t>(k)] - (k + 1)));
  out.push_back({d, "fourier.equidistant_circulant_spectrum", equi, 1e-11});
  const CMatrix diag = lam.amplitudes().asDiagonal();
  out.push_back({d, "fourier.circulant_diagonalized",
                 fro(cd.materialize().matrix() - fi.matrix() * diag * f.matrix()), 1e-12});
  return out;
}

inline std::vector<Check> verify_thetagauss(const Lattice& lat) {
  using namespace detail;
  const int d = lat.dim();
  std::vector<Check> out;
  const Operator f = dft_operator(lat);

  double agree = 0.0;
  for (double kappa : {0.25, 0.5, 1.0, 2.0, 10.0}) {
    const ThetaGaussian g = theta_gaussian(lat, kappa);
    const double peak = g.amp.amplitudes().cwiseAbs().maxCoeff();
    const double allowed = 10.0 * (g.tail_bound + g.other_tail_bound) + 64.0 * 2.2e-16 * peak;
    agree = std::max(agree, max_abs_distance(g.amp, g.other_series) / allowed);
  }
  out.push_back({d, "thetagauss.series_forms_agree (ratio to bound)", agree, 1.0});

  const ThetaGaussian g1 = theta_gaussian(lat, 1.0), g2 = theta_gaussian(lat, 2.0), gh = theta_gaussian(lat, 0.5);
  const double c2 = g2[0], ch = gh[0];
  double t1 = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n)
    t1 = std::max(t1, std::abs(g1[n] * g1[n] - ((2 * c2 - ch) * g2[n] - (c2 - ch) * gh[2 * n])));
  out.push_back({d, "thetagauss.square_identity", t1, 1e-13});

  const GroundState g = ground_state(lat);
  const Signal gsq(lat, g.amp.amplitudes().cwiseProduct(g.amp.amplitudes()));
  const Signal fgsq = f.apply(gsq);
  double t2 = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n)
    for (int m = -lat.half(); m <= lat.half(); ++m) {
      double acc = 0.0;
      for (int a = -lat.half(); a <= lat.half(); ++a) acc += g[n - a] * g[m - a];
      t2 = std::max(t2, std::abs(acc / std::sqrt(static_cast<double>(d)) - fgsq[n - m]));
    }
  out.push_back({d, "thetagauss.autocorrelation_identity", t2, 1e-12});

  double fg = 0.0;
  for (double kappa : {0.25, 0.5, 1.0, 2.0, 10.0}) {
    const Signal lhs = f.apply(theta_gaussian(lat, kappa).amp);
    const Signal rhs(lat, theta_gaussian(lat, 1.0 / kappa).amp.amplitudes() / std::sqrt(kappa));
    fg = std::max(fg, max_abs_distance(lhs, rhs));
  }
  out.push_back({d, "thetagauss.fourier_gauss_law", fg, 1e-11});
  out.push_back({d, "thetagauss.norm_two_routes", std::abs(g.norm_N - g.norm_series) / g.norm_N, 1e-13});
  out.push_back({d, "thetagauss.ground_unit_norm", std::abs(g.amp.norm() - 1.0), 1e-14});
  out.push_back({d, "thetagauss.ground_fourier_fixed", max_abs_distance(f.apply(g.amp), g.amp), 1e-12});
  double th3 = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n)
    th3 = std::max(th3, std::abs(g1[n] - jacobi_theta3(static_cast<double>(n) / d, 1.0 / d) / std::sqrt(static_cast<double>(d))));
  out.push_back({d, "thetagauss.jacobi_theta3_form", th3, 1e-12});
  return out;
}

inline std::vector<Check> verify_phasespace(const Lattice& lat, const CoherentFrame& frame) {
  using namespace detail;
  const int d = lat.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  std::vector<Check> out;
  const Operator p = momentum_operator(lat);
  out.push_back({d, "phasespace.momentum_hermitian", fro(p.matrix() - p.matrix().adjoint()), 1e-13});

  double unitary = 0.0;
  for (int a = -lat.half(); a <= lat.half(); ++a)
    for (int b = -lat.half(); b <= lat.half(); ++b) {
      const Operator D = displacement(lat, {a, b});
      unitary = std::max(unitary, fro(D.matrix() * D.matrix().adjoint() - id));
    }
  out.push_back({d, "phasespace.displacement_unitary", unitary, 1e-13});

  double law = 0.0;
  const int h = lat.half();
  for (int a1 = -h / 2; a1 <= h / 2; ++a1)
    for (int b2 = -h / 2; b2 <= h / 2; ++b2) {
      const int b1 = (a1 + 1) % (h / 2 + 1), a2 = -b2 / 2;
      const double phase = -0.5 * lat.delta() * (a1 * b2 - a2 * b1);
      const CMatrix lhs = displacement(lat, {a1, b1}).matrix() * displacement(lat, {a2, b2}).matrix();
      const CMatrix rhs = std::polar(1.0, phase) * displacement(lat, {a1 + a2, b1 + b2}).matrix();
      law = std::max(law, fro(lhs - rhs));
    }
  out.push_back({d, "phasespace.group_law", law, 1e-12});

  out.push_back({d, "phasespace.frame_tight", fro(frame_operator(frame).matrix() - id), 1e-11});

  const Operator f = dft_operator(lat);
  const Operator fi = dft_operator(lat, Direction::inverse);
  double cov = 0.0, cov_inv = 0.0, norms = 0.0;
  frame.for_each([&](const PhasePoint& pt, const Signal& v) {
    cov = std::max(cov, max_abs_distance(f.apply(v), frame.state({pt.b, -pt.a})));
    cov_inv = std::max(cov_inv, max_abs_distance(fi.apply(v), frame.state({-pt.b, pt.a})));
    norms = std::max(norms, std::abs(v.norm() - 1.0));
  });
  out.push_back({d, "phasespace.fourier_covariance F|a,b> = |b,-a>", cov, 1e-11});
  out.push_back({d, "phasespace.fourier_covariance F+|a,b> = |-b,a>", cov_inv, 1e-11});
  out.push_back({d, "phasespace.states_unit_norm", norms, 1e-13});

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(-h, h);
  double ov = 0.0;
  for (int k = 0; k < 50; ++k) {
    const PhasePoint p1{pick(rng), pick(rng)}, p2{pick(rng), pick(rng)};
    ov = std::max(ov, std::abs(overlap(frame, p1, p2) - inner_product(frame.state(p1), frame.state(p2))));
  }
  out.push_back({d, "phasespace.overlap_closed_form", ov, 1e-12});
  return out;
}

inline std::vector<Check> verify_quantize(const Lattice& lat, const CoherentFrame& frame,
                                          const FrameHamiltonian& fh) {
  using namespace detail;
  const int d = lat.dim();
  const int s = lat.half();
  const CMatrix id = CMatrix::Identity(d, d);
  std::vector<Check> out;

  const Operator brute = frame_quantize(frame, harmonic_symbol());
  out.push_back({d, "quantize.fast_path_equals_brute_force", maxabs(fh.H.matrix() - (brute.matrix() - 0.5 * id)), 1e-11});
  out.push_back({d, "quantize.constant_symbol_identity", fro(frame_quantize(frame, constant_symbol(1.0)).matrix() - id), 1e-11});
  out.push_back({d, "quantize.trace_law",
                 std::abs(fh.H.matrix().trace().real() - (-d / 2.0 + 2.0 * pi * s * (s + 1.0) / 3.0)), 1e-10});
  const Operator f = dft_operator(lat);
  out.push_back({d, "quantize.fourier_invariance", fro(f.matrix() * fh.H.matrix() - fh.H.matrix() * f.matrix()), 1e-10});
  out.push_back({d, "quantize.hamiltonian_real", fh.H.matrix().imag().cwiseAbs().maxCoeff(), 1e-12});
  out.push_back({d, "quantize.hamiltonian_symmetric", maxabs(fh.H.matrix() - fh.H.matrix().transpose()), 1e-12});

  double centro = 0.0, toeplitz = 0.0;
  for (int n = -s; n <= s; ++n)
    for (int m = -s; m <= s; ++m) {
      centro = std::max(centro, std::abs(fh.H.at(n, m) - fh.H.at(-n, -m)));
      const double expect = n == m ? fh.omega_at(n) - 0.5 : fh.tau_at(n - m);
      toeplitz = std::max(toeplitz, std::abs(fh.H.at(n, m) - expect));
    }
  out.push_back({d, "quantize.centro_symmetry", centro, 1e-12});
  out.push_back({d, "quantize.tau_omega_structure", toeplitz, 1e-11});

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(-s, s);
  double ce = 0.0;
  for (int k = 0; k < 50; ++k) {
    const PhasePoint p{pick(rng), pick(rng)};
    const CVector& v = frame.state(p).amplitudes();
    ce = std::max(ce, std::abs(coherent_expectation(fh, frame, p) - v.dot(fh.H.matrix() * v).real()));
  }
  out.push_back({d, "quantize.coherent_expectation", ce, 1e-11});

  const EigenSystem af = eigh(fh.H + cplx(0.5) * Operator::identity(lat));
  out.push_back({d, "quantize.positivity (-min eigenvalue)", -af.values(0), 1e-10});
  const WielandtHoffman wh = wielandt_hoffman_gap(fh);
  out.push_back({d, "quantize.wielandt_hoffman (lhs - rhs)", wh.lhs - wh.rhs, 0.0});

  const Operator up = raising_operator(frame);
  out.push_back({d, "quantize.raising_equals_brute_force", maxabs(up.matrix() - frame_quantize(frame, raising_symbol()).matrix()), 1e-12});
  out.push_back({d, "quantize.raising_real", up.matrix().imag().cwiseAbs().maxCoeff(), 1e-11});
  double anti = 0.0;
  for (int n = -s; n <= s; ++n)
    for (int m = -s; m <= s; ++m) anti = std::max(anti, std::abs(up.at(n, m) + up.at(-n, -m)));
  out.push_back({d, "quantize.raising_antisymmetry", anti, 1e-11});
  out.push_back({d, "quantize.conjugate_symbol_adjoint",
                 maxabs(up.adjoint().matrix() - frame_quantize(frame, lowering_symbol()).matrix()), 1e-12});

  const std::vector<Signal> lad = ladder_states(frame, d);
  double rec = 0.0;
  for (int n = 0; n + 1 < d; ++n) {
    const CVector lhs = up.matrix() * lad[static_cast<std::size_t>(n)].amplitudes();
    const CVector rhs = std::sqrt(n + 1.0) * lad[static_cast<std::size_t>(n + 1)].amplitudes();
    rec = std::max(rec, maxabs(CVector(lhs - rhs)) / std::max(1.0, maxabs(lhs)));
  }
  out.push_back({d, "quantize.ladder_recurrence", rec, 1e-14});
  return out;
}

inline std::vector<Check> verify_basis(const SpectralBasis& b, const Operator& energy) {
  using namespace detail;
  const Lattice& lat = b.lattice();
  const int d = lat.dim();
  const std::string tag = std::string("spectral.") + to_string(b.kind()) + ".";
  std::vector<Check> out;
  const RMatrix& v = b.vectors();
  out.push_back({d, tag + "orthonormal", (v.transpose() * v - RMatrix::Identity(d, d)).norm(), 1e-11});

  const Operator f = dft_operator(lat);
  const std::array<cplx, 4> mi{cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  double fe = 0.0, res = 0.0;
  int alt = 0, labels = 0;
  const RMatrix h = energy.matrix().real();
  for (int m = 0; m < d; ++m) {
    const CVector x = v.col(m).cast<cplx>();
    fe = std::max(fe, maxabs(CVector(f.matrix() * x - mi[static_cast<std::size_t>(m % 4)] * x)));
    res = std::max(res, (h * v.col(m) - b.value(m) * v.col(m)).norm());
    alt += sign_alternations(b.vector(m)) != m;
    const BasisLabel& l = b.label(m);
    labels += l.alternations != m || l.fourier_index != m || l.fourier_class != m % 4 ||
              (l.parity == Parity::even) != (m % 2 == 0);
  }
  out.push_back({d, tag + "fourier_eigenrelation", fe, 1e-9});
  out.push_back({d, tag + "eigen_residual", res, 1e-10 * h.norm()});
  out.push_back({d, tag + "alternation_mismatches", static_cast<double>(alt), 0.0});
  out.push_back({d, tag + "label_mismatches", static_cast<double>(labels), 0.0});
  RVector sorted = b.values();
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 < d; ++k) gap = std::min(gap, sorted(k + 1) - sorted(k));
  out.push_back({d, tag + "spectral_gap (1e-8 / min gap)", 1e-8 / gap, 1.0});
  return out;
}

inline std::vector<Check> verify_frft(const SpectralBasis& b) {
  using namespace detail;
  const Lattice& lat = b.lattice();
  const int d = lat.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const std::string tag = std::string("frft.") + to_string(b.kind()) + ".";
  std::vector<Check> out;
  const std::array<double, 6> grid{0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
  double uni = 0.0, add = 0.0, per = 0.0, sym = 0.0;
  for (double a : grid) {
    const CMatrix ka = frft_kernel(b, a).K.matrix();
    uni = std::max(uni, fro(ka.adjoint() * ka - id));
    sym = std::max(sym, maxabs(CMatrix(ka - ka.transpose())));
    per = std::max(per, fro(frft_kernel(b, a + 4.0).K.matrix() - ka));
    for (double c : grid) add = std::max(add, fro(ka * frft_kernel(b, c).K.matrix() - frft_kernel(b, a + c).K.matrix()));
  }
  out.push_back({d, tag + "unitary", uni, 1e-10});
  out.push_back({d, tag + "additive", add, 1e-9});
  out.push_back({d, tag + "period_four", per, 1e-9});
  out.push_back({d, tag + "symmetric_kernel", sym, 1e-11});
  out.push_back({d, tag + "order_zero_identity", fro(frft_kernel(b, 0.0).K.matrix() - id), 1e-10});
  out.push_back({d, tag + "order_one_is_dft", fro(frft_kernel(b, 1.0).K.matrix() - dft_operator(lat).matrix()), 1e-9});
  return out;
}

inline std::vector<Check> verify_reference(const Lattice& lat) {
  const int d = lat.dim();
  std::vector<Check> out;
  double mehta = 0.0;
  const Signal phi0 = mehta_function(lat, 0);
  const ThetaGaussian g1 = theta_gaussian(lat, 1.0);
  const double c = 1.0 / std::sqrt(std::sqrt(pi));
  for (int n = -lat.half(); n <= lat.half(); ++n) mehta = std::max(mehta, std::abs(phi0[n].real() - c * g1[n]));
  out.push_back({d, "reference.mehta_ground_is_theta", mehta, 1e-12});

  const double kappa = 10.0;
  const Signal g10 = gaussian_signal(lat, kappa);
  auto psi = [kappa](double x) { return std::exp(-0.5 * kappa * x * x); };
  out.push_back({d, "reference.oracle_order_zero", max_abs_distance(continuous_frft_oracle(psi, 0.0, lat), g10), 1e-6});
  const Signal ft = Signal::generate(lat, [&](int n) {
    const double x = lat.point(n);
    return std::exp(-0.5 * x * x / kappa) / std::sqrt(kappa);
  });
  out.push_back({d, "reference.oracle_order_one", max_abs_distance(continuous_frft_oracle(psi, 1.0, lat), ft), 1e-6});
  return out;
}

/// Full suite for one lattice dimension.
inline std::vector<Check> verify_dimension(int d) {
  const Lattice lat(d);
  std::vector<Check> out;
  auto add = [&](std::vector<Check> more) { out.insert(out.end(), more.begin(), more.end()); };
  add(verify_lattice(lat));
  add(verify_fourier(lat));
  add(verify_thetagauss(lat));
  const CoherentFrame frame(lat);
  add(verify_phasespace(lat, frame));
  const FrameHamiltonian fh = frame_hamiltonian(lat);
  add(verify_quantize(lat, frame, fh));
  // a basis that cannot be ordered is reported as one failed check
  auto basis_checks = [&](const char* name, const Operator& energy, BasisKind kind) {
    try {
      const SpectralBasis b = oscillator_basis(energy, kind);
      add(verify_basis(b, energy));
      add(verify_frft(b));
    } catch (const numerical_error&) {
      out.push_back({lat.dim(), std::string(name) + " basis construction", 1.0, 0.0});
    }
  };
  basis_checks("frame", fh.H, BasisKind::frame);
  basis_checks("harper", cplx(-1.0) * harper_hamiltonian(lat).H, BasisKind::harper);
  add(verify_reference(lat));
  return out;
}

}  // namespace finosc::cli
