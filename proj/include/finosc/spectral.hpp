#pragma once

// Real-symmetric eigensolver, the Harper finite-difference Hamiltonian and
// ordered, sign-fixed, Fourier-labeled oscillator eigenbases.

#include <algorithm>
#include <numeric>
#include <vector>

#include "finosc/fourier.hpp"
#include "finosc/hermite.hpp"

namespace finosc {

struct EigenSystem {
  RVector values;   ///< ascending
  RMatrix vectors;  ///< column k belongs to values(k)
};

/// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius norm drops
/// below 1e-14 * ||A||_F; throws after max_sweeps.
inline EigenSystem jacobi_eigh(RMatrix a, int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigh needs a square matrix");
  RMatrix v = RMatrix::Identity(n, n);
  const double fro = a.norm();
  const double target = 1e-14 * fro;

  auto off_norm = [&] {
    double acc = 0.0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) acc += a(p, q) * a(p, q);
    return std::sqrt(2.0 * acc);
  };

  bool converged = fro == 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (off_norm() <= target) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  if (!converged && off_norm() > target)
    throw numerical_error("jacobi_eigh: no convergence after " + std::to_string(max_sweeps) +
                          " sweeps");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  EigenSystem out{RVector(n), RMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// Real part of a Hermite operator, after checking that it is real symmetric.
inline RMatrix real_symmetric_part(const Operator& op, double tol = 1e-10) {
  const CMatrix& m = op.matrix();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double imag = m.imag().cwiseAbs().maxCoeff();
  const double asym = (m.real() - m.real().transpose()).cwiseAbs().maxCoeff();
  if (imag > tol * scale || asym > tol * scale)
    throw std::invalid_argument("operator is not real symmetric (max |Im| = " +
                                std::to_string(imag) + ", max asymmetry = " +
                                std::to_string(asym) + ")");
  return 0.5 * (m.real() + m.real().transpose());
}

inline EigenSystem eigh(const Operator& sym) { return jacobi_eigh(real_symmetric_part(sym)); }

/// Finite-difference oscillator: second difference plus its Fourier conjugate.
struct HarperHamiltonian {
  Lattice lattice;
  Operator H;
};

inline HarperHamiltonian harper_hamiltonian(const Lattice& lat) {
  const int d = lat.dim();
  CMatrix h = CMatrix::Zero(d, d);
  for (int n = -lat.half(); n <= lat.half(); ++n) {
    h(lat.pos(n), lat.pos(n)) = 2.0 * (std::cos(2.0 * pi * n / d) - 2.0);
    // cyclic neighbours; the wrap at n = +-s supplies the corner entries
    h(lat.pos(n), lat.pos(n + 1)) += 1.0;
    h(lat.pos(n + 1), lat.pos(n)) += 1.0;
  }
  return {lat, Operator(lat, std::move(h))};
}

/// Sign changes between consecutive entries n, n+1 (n = -s..s-1). Entries
/// below 1e-12 * max|v| count as zeros and are skipped.
inline int sign_alternations(std::span<const double> v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  const double floor = 1e-12 * peak;
  int count = 0;
  double last = 0.0;
  for (double x : v) {
    if (std::abs(x) <= floor) continue;
    if (last != 0.0 && (x > 0.0) != (last > 0.0)) ++count;
    last = x;
  }
  return count;
}

inline int sign_alternations(const Signal& v) {
  const RVector re = v.real();
  if (v.amplitudes().imag().cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("sign_alternations needs a real-valued signal");
  return sign_alternations(std::span<const double>(re.data(), static_cast<std::size_t>(re.size())));
}

enum class BasisKind { harper, frame };
enum class Parity { even, odd };

inline const char* to_string(BasisKind k) { return k == BasisKind::harper ? "harper" : "frame"; }
inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct BasisLabel {
  int alternations = 0;
  Parity parity = Parity::even;
  int fourier_class = 0;  ///< F v = (-i)^fourier_class v, in 0..3
  int fourier_index = 0;  ///< m in 0..d-1 with m = fourier_class (mod 4)
  int eigen_rank = 0;     ///< position in ascending eigenvalue order
};

/// d real orthonormal eigenvectors ordered by sign alternations, so that
/// vector m has m alternations and F v_m = (-i)^m v_m.
class SpectralBasis {
 public:
  SpectralBasis(const Lattice& lat, BasisKind kind, RVector values, RMatrix vectors,
                std::vector<BasisLabel> labels)
      : lat_(lat), kind_(kind), values_(std::move(values)), vectors_(std::move(vectors)),
        labels_(std::move(labels)) {}

  const Lattice& lattice() const { return lat_; }
  BasisKind kind() const { return kind_; }
  int size() const { return static_cast<int>(values_.size()); }
  /// Energy of vector m (eigenvalue of the operator the basis was built from).
  double value(int m) const { return values_(m); }
  const RVector& values() const { return values_; }
  const RMatrix& vectors() const { return vectors_; }
  const BasisLabel& label(int m) const { return labels_.at(static_cast<std::size_t>(m)); }
  Signal vector(int m) const { return Signal(lat_, vectors_.col(m).cast<cplx>()); }

 private:
  Lattice lat_;
  BasisKind kind_;
  RVector values_;
  RMatrix vectors_;
  std::vector<BasisLabel> labels_;
};

namespace detail {

inline Parity parity_of(const Lattice& lat, const RVector& v) {
  double even = 0.0, odd = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n) {
    even = std::max(even, std::abs(v(lat.pos(n)) - v(lat.pos(-n))));
    odd = std::max(odd, std::abs(v(lat.pos(n)) + v(lat.pos(-n))));
  }
  if (std::min(even, odd) > 1e-10)
    throw numerical_error("eigenvector is neither even nor odd");
  return even <= odd ? Parity::even : Parity::odd;
}

inline int fourier_class_of(const Operator& f, const RVector& v) {
  const CVector c = v.cast<cplx>();
  const cplx z = c.dot(f.matrix() * c);
  const std::array<cplx, 4> roots{cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  int best = 0;
  for (int k = 1; k < 4; ++k)
    if (std::abs(z - roots[k]) < std::abs(z - roots[best])) best = k;
  if (std::abs(z - roots[best]) > 0.1)
    throw numerical_error("eigenvector has no unambiguous Fourier eigenvalue");
  return best;
}

}  // namespace detail

/// Builds the ordered basis of a Fourier-invariant real symmetric operator.
/// `energy` must grow with the quantum number (for Harper pass -H).
inline SpectralBasis oscillator_basis(const Operator& energy, BasisKind kind) {
  const Lattice& lat = energy.lattice();
  const int d = lat.dim();
  const Operator f = dft_operator(lat);
  const RMatrix h = real_symmetric_part(energy);
  const double comm = (f.matrix() * energy.matrix() - energy.matrix() * f.matrix()).norm();
  if (comm > 1e-9 * std::max(1.0, h.norm()))
    throw std::invalid_argument("operator does not commute with F (||FH-HF|| = " +
                                std::to_string(comm) + ")");

  const EigenSystem es = jacobi_eigh(h);
  for (int k = 0; k + 1 < d; ++k)
    if (es.values(k + 1) - es.values(k) < 1e-10)
      throw numerical_error("degenerate eigenvalues; basis is not unique");

  std::vector<BasisLabel> raw(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const RVector v = es.vectors.col(k);
    auto& l = raw[static_cast<std::size_t>(k)];
    l.alternations = sign_alternations(std::span<const double>(v.data(), static_cast<std::size_t>(d)));
    l.parity = detail::parity_of(lat, v);
    l.fourier_class = detail::fourier_class_of(f, v);
    l.eigen_rank = k;
  }

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return raw[static_cast<std::size_t>(i)].alternations < raw[static_cast<std::size_t>(j)].alternations;
  });

  RVector values(d);
  RMatrix vectors(d, d);
  std::vector<BasisLabel> labels(static_cast<std::size_t>(d));
  const double quarter_root = std::sqrt(lat.step());
  for (int m = 0; m < d; ++m) {
    const int k = order[static_cast<std::size_t>(m)];
    BasisLabel l = raw[static_cast<std::size_t>(k)];
    if (l.alternations != m)
      throw numerical_error("sign alternation counts are not 0..d-1 (position " +
                            std::to_string(m) + " has " + std::to_string(l.alternations) + ")");
    if (l.fourier_class != m % 4 || (l.parity == Parity::even) != (m % 2 == 0))
      throw numerical_error("inconsistent labels at position " + std::to_string(m));
    l.fourier_index = m;

    RVector v = es.vectors.col(k);
    double ov = 0.0;
    for (int n = -lat.half(); n <= lat.half(); ++n)
      ov += v(lat.pos(n)) * quarter_root * hermite_gaussian(m, lat.point(n));
    if (ov < 0.0) v = -v;

    values(m) = es.values(k);
    vectors.col(m) = v;
    labels[static_cast<std::size_t>(m)] = l;
  }
  return SpectralBasis(lat, kind, std::move(values), std::move(vectors), std::move(labels));
}

/// Harper functions h_m: eigenvectors of the Harper Hamiltonian, built from
/// the energy operator -H so that h_0 is the nodeless state.
inline SpectralBasis harper_basis(const Lattice& lat) {
  const HarperHamiltonian hh = harper_hamiltonian(lat);
  return oscillator_basis(cplx(-1.0) * hh.H, BasisKind::harper);
}

}  // namespace finosc
