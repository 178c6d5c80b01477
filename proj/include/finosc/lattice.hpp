#pragma once

// Discrete configuration space R_d = {-s, ..., s} * sqrt(delta), delta = 2*pi/d,
// and the d-dimensional Hilbert space of periodic functions on it.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace finosc {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Raised when an iterative or labeling step cannot reach a well-defined
/// answer (non-convergence, degenerate spectrum, ambiguous Fourier class).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Odd dimension d = 2s+1 >= 5 together with its grid spacing.
class Lattice {
 public:
  explicit Lattice(int d) : d_(d) {
    if (d % 2 == 0)
      throw std::invalid_argument("lattice dimension must be odd, got " +
                                  std::to_string(d));
    if (d < 5)
      throw std::invalid_argument("lattice dimension must be at least 5, got " +
                                  std::to_string(d));
    s_ = (d - 1) / 2;
    delta_ = 2.0 * pi / d;
    step_ = std::sqrt(delta_);
  }

  int dim() const { return d_; }
  int half() const { return s_; }
  /// delta = 2*pi/d; lattice points are n*sqrt(delta).
  double delta() const { return delta_; }
  double step() const { return step_; }

  /// Reduces any integer index into the symmetric range [-s, s].
  int wrap(long n) const {
    long r = (n + s_) % d_;
    if (r < 0) r += d_;
    return static_cast<int>(r) - s_;
  }
  /// Storage position (0..d-1) of the symmetric index n (periodic).
  Eigen::Index pos(long n) const { return wrap(n) + s_; }
  /// Symmetric index of storage position p.
  int index(Eigen::Index p) const { return static_cast<int>(p) - s_; }
  double point(long n) const { return static_cast<double>(n) * step_; }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.d_ == b.d_; }

 private:
  int d_;
  int s_ = 0;
  double delta_ = 0.0;
  double step_ = 0.0;
};

inline Lattice make_lattice(int d) { return Lattice(d); }

inline void require_same(const Lattice& a, const Lattice& b) {
  if (!(a == b))
    throw std::invalid_argument("lattice mismatch: d=" + std::to_string(a.dim()) +
                                " vs d=" + std::to_string(b.dim()));
}

/// Element of l^2(R_d): d complex amplitudes phi(n*sqrt(delta)), n = -s..s,
/// extended periodically.
class Signal {
 public:
  Signal(const Lattice& lat, CVector amp) : lat_(lat), amp_(std::move(amp)) {
    if (amp_.size() != lat.dim())
      throw std::invalid_argument("signal length " + std::to_string(amp_.size()) +
                                  " does not match d=" + std::to_string(lat.dim()));
  }
  explicit Signal(const Lattice& lat) : Signal(lat, CVector::Zero(lat.dim())) {}

  /// Builds amp[n] = f(n) for n = -s..s.
  template <class F>
  static Signal generate(const Lattice& lat, F&& f) {
    CVector v(lat.dim());
    for (int n = -lat.half(); n <= lat.half(); ++n) v(lat.pos(n)) = cplx(f(n));
    return Signal(lat, std::move(v));
  }

  const Lattice& lattice() const { return lat_; }
  const CVector& amplitudes() const { return amp_; }
  /// Periodic access: n and n+d address the same amplitude.
  cplx operator[](long n) const { return amp_(lat_.pos(n)); }

  double norm() const { return amp_.norm(); }
  RVector real() const { return amp_.real(); }

 private:
  Lattice lat_;
  CVector amp_;
};

/// epsilon_n: the canonical basis vector concentrated at index n.
inline Signal basis_signal(const Lattice& lat, long n) {
  CVector v = CVector::Zero(lat.dim());
  v(lat.pos(n)) = 1.0;
  return Signal(lat, std::move(v));
}

/// <a, b> = sum conj(a[n]) b[n].
inline cplx inner_product(const Signal& a, const Signal& b) {
  require_same(a.lattice(), b.lattice());
  return a.amplitudes().dot(b.amplitudes());
}

/// q(n sqrt(delta)) = n sqrt(delta).
inline Signal coordinate_signal(const Lattice& lat) {
  return Signal::generate(lat, [&](int n) { return lat.point(n); });
}

/// d x d matrix in the {epsilon_n} basis; at(n, m) = <epsilon_n|A|epsilon_m>.
class Operator {
 public:
  Operator(const Lattice& lat, CMatrix mat) : lat_(lat), mat_(std::move(mat)) {
    if (mat_.rows() != lat.dim() || mat_.cols() != lat.dim())
      throw std::invalid_argument("operator shape does not match d=" +
                                  std::to_string(lat.dim()));
  }

  static Operator identity(const Lattice& lat) {
    return Operator(lat, CMatrix::Identity(lat.dim(), lat.dim()));
  }
  static Operator diagonal(const Signal& diag) {
    return Operator(diag.lattice(), diag.amplitudes().asDiagonal().toDenseMatrix());
  }

  const Lattice& lattice() const { return lat_; }
  const CMatrix& matrix() const { return mat_; }
  cplx at(long n, long m) const { return mat_(lat_.pos(n), lat_.pos(m)); }

  Operator adjoint() const { return Operator(lat_, mat_.adjoint()); }

  Signal apply(const Signal& phi) const {
    require_same(lat_, phi.lattice());
    return Signal(lat_, mat_ * phi.amplitudes());
  }

  friend Operator operator*(const Operator& a, const Operator& b) {
    require_same(a.lat_, b.lat_);
    return Operator(a.lat_, a.mat_ * b.mat_);
  }
  friend Operator operator+(const Operator& a, const Operator& b) {
    require_same(a.lat_, b.lat_);
    return Operator(a.lat_, a.mat_ + b.mat_);
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    require_same(a.lat_, b.lat_);
    return Operator(a.lat_, a.mat_ - b.mat_);
  }
  friend Operator operator*(cplx z, const Operator& a) { return Operator(a.lat_, z * a.mat_); }

 private:
  Lattice lat_;
  CMatrix mat_;
};

inline double frobenius_distance(const Operator& a, const Operator& b) {
  require_same(a.lattice(), b.lattice());
  return (a.matrix() - b.matrix()).norm();
}

inline double max_abs_distance(const Signal& a, const Signal& b) {
  require_same(a.lattice(), b.lattice());
  return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

}  // namespace finosc
