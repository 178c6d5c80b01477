#pragma once

// Finite Fourier transform on R_d, its spectral projectors, closed-form
// transforms of the coordinate function, and circulant matrices.

#include <array>
#include <cassert>

#include "finosc/lattice.hpp"

namespace finosc {

enum class Direction { forward, inverse };

/// exp(sign * 2*pi*i * n*m / d) with n*m reduced mod d before the
/// trigonometric call so large products keep full precision.
inline cplx root_of_unity(const Lattice& lat, long n, long m, int sign) {
  const long k = lat.wrap(n * m);
  const double angle = sign * 2.0 * pi * static_cast<double>(k) / lat.dim();
  return {std::cos(angle), std::sin(angle)};
}

/// F(n,m) = d^{-1/2} exp(-2 pi i nm/d); the inverse flips the sign (= F^+).
inline Operator dft_operator(const Lattice& lat, Direction dir = Direction::forward) {
  const int d = lat.dim();
  const int sign = dir == Direction::forward ? -1 : 1;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  CMatrix f(d, d);
  for (int n = -lat.half(); n <= lat.half(); ++n)
    for (int m = -lat.half(); m <= lat.half(); ++m)
      f(lat.pos(n), lat.pos(m)) = scale * root_of_unity(lat, n, m, sign);
  return Operator(lat, std::move(f));
}

/// Orthogonal projectors onto the eigenspaces of F for eigenvalue (-i)^m.
struct FourierProjectors {
  std::array<Operator, 4> pi;
};

inline FourierProjectors fourier_projectors(const Lattice& lat) {
  const Operator id = Operator::identity(lat);
  const Operator f1 = dft_operator(lat);
  const Operator f2 = f1 * f1;
  const Operator f3 = f2 * f1;
  const std::array<const Operator*, 4> powers{&id, &f1, &f2, &f3};
  // i^{mk} for m,k = 0..3
  const std::array<cplx, 4> ipow{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

  auto projector = [&](int m) {
    CMatrix acc = CMatrix::Zero(lat.dim(), lat.dim());
    for (int k = 0; k < 4; ++k) acc += ipow[(m * k) % 4] * powers[k]->matrix();
    return Operator(lat, 0.25 * acc);
  };
  return FourierProjectors{{projector(0), projector(1), projector(2), projector(3)}};
}

/// F[q] and F[q^2] from their closed forms (no matrix-vector product).
struct CoordinateTransforms {
  Signal of_coordinate;
  Signal of_square;
};

inline CoordinateTransforms closed_form_coordinate_transforms(const Lattice& lat) {
  const double d = lat.dim();
  const double s = lat.half();
  auto of_q = [&](int n) -> cplx {
    assert(std::abs(n) <= lat.half());
    if (n == 0) return 0.0;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * I * std::sqrt(pi) / (std::sqrt(2.0) * std::sin(pi * n / d));
  };
  auto of_q2 = [&](int n) -> cplx {
    assert(std::abs(n) <= lat.half());
    if (n == 0) return 2.0 * pi / std::sqrt(d) * s * (s + 1.0) / 3.0;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double sn = std::sin(pi * n / d);
    return sign * pi * std::cos(pi * n / d) / (std::sqrt(d) * sn * sn);
  };
  return {Signal::generate(lat, of_q), Signal::generate(lat, of_q2)};
}

/// Circulant matrix given by its first column: entry (n,m) = c[(n-m) mod d].
class CirculantSpec {
 public:
  CirculantSpec(const Lattice& lat, CVector first_column)
      : lat_(lat), column_(std::move(first_column)) {
    if (column_.size() != lat.dim())
      throw std::invalid_argument("circulant first column has length " +
                                  std::to_string(column_.size()) + ", expected d=" +
                                  std::to_string(lat.dim()));
  }

  const Lattice& lattice() const { return lat_; }
  /// c_k, k taken modulo d.
  cplx coefficient(long k) const { return column_(lat_.pos(k)); }

  Operator materialize() const {
    const int d = lat_.dim();
    CMatrix m(d, d);
    for (int n = -lat_.half(); n <= lat_.half(); ++n)
      for (int k = -lat_.half(); k <= lat_.half(); ++k)
        m(lat_.pos(n), lat_.pos(k)) = coefficient(n - k);
    return Operator(lat_, std::move(m));
  }

  /// lambda_k = sum_j c_j exp(-2 pi i kj/d), ordered so that the circulant
  /// equals F^+ diag(lambda) F.
  Signal eigenvalues() const {
    return Signal::generate(lat_, [&](int k) {
      cplx acc = 0.0;
      for (int j = -lat_.half(); j <= lat_.half(); ++j)
        acc += coefficient(j) * root_of_unity(lat_, k, j, -1);
      return acc;
    });
  }

 private:
  Lattice lat_;
  CVector column_;
};

inline CirculantSpec circulant(const Lattice& lat, CVector first_column) {
  return CirculantSpec(lat, std::move(first_column));
}

inline CirculantSpec circulant(const Signal& first_column) {
  return CirculantSpec(first_column.lattice(), first_column.amplitudes());
}

inline Operator materialize(const CirculantSpec& circ) { return circ.materialize(); }

/// C_d = F^+ diag(1, ..., d) F, via the closed form of its coefficients.
inline CirculantSpec equidistant_circulant(const Lattice& lat) {
  const Signal column = Signal::generate(lat, [&](int k) -> cplx {
    if (k == 0) return (lat.dim() + 1) / 2.0;
    const cplx w = root_of_unity(lat, k, 1, 1);
    return w / (w - 1.0);
  });
  return circulant(column);
}

}  // namespace finosc
