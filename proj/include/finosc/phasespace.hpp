#pragma once

// Finite phase space R_d x R_d: position/momentum, displacement operators and
// the d^2-element coherent-state frame |a,b>_d = D(a,b) g.

#include <vector>

#include "finosc/fourier.hpp"
#include "finosc/thetagauss.hpp"

namespace finosc {

/// (alpha, beta) = (a, b) * sqrt(delta) with a, b in [-s, s].
struct PhasePoint {
  int a = 0;
  int b = 0;

  static PhasePoint checked(const Lattice& lat, int a, int b) {
    if (std::abs(a) > lat.half() || std::abs(b) > lat.half())
      throw std::invalid_argument("phase point (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") outside R_d^2 for d=" +
                                  std::to_string(lat.dim()));
    return {a, b};
  }

  double alpha(const Lattice& lat) const { return lat.point(a); }
  double beta(const Lattice& lat) const { return lat.point(b); }

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

namespace detail {

/// exp(-i alpha beta / 2) for alpha = a sqrt(delta), beta = b sqrt(delta):
/// exp(-i pi ab/d), with ab reduced mod 2d.
inline cplx half_symplectic_phase(const Lattice& lat, long a, long b) {
  const long period = 2L * lat.dim();
  long k = (a * b) % period;
  if (k < 0) k += period;
  const double angle = -pi * static_cast<double>(k) / lat.dim();
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

/// Q = diag(n sqrt(delta)).
inline Operator position_operator(const Lattice& lat) {
  return Operator::diagonal(coordinate_signal(lat));
}

/// P = F^+ Q F.
inline Operator momentum_operator(const Lattice& lat) {
  return dft_operator(lat, Direction::inverse) * position_operator(lat) * dft_operator(lat);
}

/// D acting as (D phi)(u) = e^{-i alpha beta/2} e^{i beta u} phi(u - alpha) for
/// arbitrary integer step counts (a, b); the phase uses the unreduced product.
inline Operator displacement_steps(const Lattice& lat, long a, long b) {
  const int d = lat.dim();
  const cplx global = detail::half_symplectic_phase(lat, a, b);
  CMatrix m = CMatrix::Zero(d, d);
  for (int n = -lat.half(); n <= lat.half(); ++n)
    m(lat.pos(n), lat.pos(n - a)) = global * root_of_unity(lat, b, n, 1);
  return Operator(lat, std::move(m));
}

inline Operator displacement(const Lattice& lat, const PhasePoint& p) {
  PhasePoint::checked(lat, p.a, p.b);
  return displacement_steps(lat, p.a, p.b);
}

/// The d^2 coherent states, stored row-major over (a, b).
class CoherentFrame {
 public:
  explicit CoherentFrame(const Lattice& lat) : lat_(lat), ground_(ground_state(lat)) {
    const int d = lat.dim();
    states_.reserve(static_cast<std::size_t>(d) * d);
    for (int a = -lat.half(); a <= lat.half(); ++a)
      for (int b = -lat.half(); b <= lat.half(); ++b) {
        const cplx global = detail::half_symplectic_phase(lat, a, b);
        states_.push_back(Signal::generate(lat, [&](int n) {
          return global * root_of_unity(lat, b, n, 1) * ground_[n - a];
        }));
      }
  }

  const Lattice& lattice() const { return lat_; }
  const GroundState& ground() const { return ground_; }

  const Signal& state(const PhasePoint& p) const {
    return states_[static_cast<std::size_t>(lat_.pos(p.a) * lat_.dim() + lat_.pos(p.b))];
  }

  /// Visits every phase point in row-major (a, b) order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (int a = -lat_.half(); a <= lat_.half(); ++a)
      for (int b = -lat_.half(); b <= lat_.half(); ++b) {
        const PhasePoint p{a, b};
        fn(p, state(p));
      }
  }

 private:
  Lattice lat_;
  GroundState ground_;
  std::vector<Signal> states_;
};

inline CoherentFrame coherent_frame(const Lattice& lat) { return CoherentFrame(lat); }

/// <p1|p2> from the closed-form sum over u, without touching the stored states.
inline cplx overlap(const CoherentFrame& frame, const PhasePoint& p1, const PhasePoint& p2) {
  const Lattice& lat = frame.lattice();
  const GroundState& g = frame.ground();
  const cplx phase = std::conj(detail::half_symplectic_phase(lat, p1.a, p1.b)) *
                     detail::half_symplectic_phase(lat, p2.a, p2.b);
  cplx acc = 0.0;
  for (int n = -lat.half(); n <= lat.half(); ++n)
    acc += root_of_unity(lat, p2.b - p1.b, n, 1) * g[n - p1.a] * g[n - p2.a];
  return phase * acc;
}

/// S = (1/d) sum_p |p><p|; equals the identity for a tight frame.
inline Operator frame_operator(const CoherentFrame& frame) {
  const int d = frame.lattice().dim();
  CMatrix acc = CMatrix::Zero(d, d);
  frame.for_each([&](const PhasePoint&, const Signal& v) {
    acc.noalias() += v.amplitudes() * v.amplitudes().adjoint();
  });
  return Operator(frame.lattice(), acc / static_cast<double>(d));
}

}  // namespace finosc
