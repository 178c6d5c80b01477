#include <gtest/gtest.h>

#include "finosc/finosc.hpp"
#include "oracles.hpp"

using namespace finosc;

TEST(Lattice, DimensionTwentyOne) {
  const Lattice lat = make_lattice(21);
  EXPECT_EQ(lat.dim(), 21);
  EXPECT_EQ(lat.half(), 10);
  EXPECT_DOUBLE_EQ(lat.delta(), 2.0 * pi / 21.0);
  EXPECT_LT(std::abs(lat.delta() * 21 - 2.0 * pi) / (2.0 * pi), 1e-15);
}

TEST(Lattice, SmallestAdmissible) {
  const Lattice lat = make_lattice(5);
  EXPECT_EQ(lat.half(), 2);
  EXPECT_DOUBLE_EQ(lat.delta(), 2.0 * pi / 5.0);
}

TEST(Lattice, RejectsEvenAndSmall) {
  EXPECT_THROW(make_lattice(4), std::invalid_argument);
  EXPECT_THROW(make_lattice(22), std::invalid_argument);
  EXPECT_THROW(make_lattice(3), std::invalid_argument);
  EXPECT_THROW(make_lattice(1), std::invalid_argument);
  EXPECT_THROW(make_lattice(-7), std::invalid_argument);
}

TEST(Lattice, WrapRoundTrips) {
  const Lattice lat(21);
  for (long n = -10; n <= 10; ++n) {
    EXPECT_EQ(lat.wrap(n), n);
    EXPECT_EQ(lat.index(lat.pos(n)), n);
    EXPECT_EQ(lat.wrap(n + 21), n);
    EXPECT_EQ(lat.wrap(n - 5 * 21), n);
  }
}

TEST(Signal, PeriodicAccessIsBitExact) {
  const Lattice lat(21);
  const Signal a(lat, oracle::random_vector(21, 3));
  for (int n = -10; n <= 10; ++n) {
    EXPECT_EQ(a[n], a[n + 21]);
    EXPECT_EQ(a[n], a[n - 42]);
  }
}

TEST(Signal, LengthMismatchThrows) {
  const Lattice lat(7);
  EXPECT_THROW(Signal(lat, CVector::Zero(5)), std::invalid_argument);
}

TEST(InnerProduct, CanonicalBasis) {
  const Lattice lat(21);
  EXPECT_EQ(inner_product(basis_signal(lat, 3), basis_signal(lat, 3)), cplx(1.0));
  EXPECT_EQ(inner_product(basis_signal(lat, 3), basis_signal(lat, 4)), cplx(0.0));
  for (int n = -10; n <= 10; ++n) EXPECT_EQ(basis_signal(lat, n).norm(), 1.0);
}

TEST(InnerProduct, GroundStateByDirectSum) {
  const Lattice lat(21);
  const GroundState g = ground_state(lat);
  double acc = 0.0;
  for (int n = -10; n <= 10; ++n) acc += g[n] * g[n];
  EXPECT_NEAR(acc, 1.0, 1e-14);
  EXPECT_NEAR(inner_product(g.amp, g.amp).real(), 1.0, 1e-14);
}

TEST(InnerProduct, SesquilinearProperties) {
  const Lattice lat(21);
  for (unsigned seed = 0; seed < 20; ++seed) {
    const Signal a(lat, oracle::random_vector(21, 3 * seed + 1));
    const Signal b(lat, oracle::random_vector(21, 3 * seed + 2));
    const Signal c(lat, oracle::random_vector(21, 3 * seed + 3));
    const cplx z(0.3 * seed - 1.0, 0.7);
    const Signal bc(lat, b.amplitudes() + z * c.amplitudes());
    const double scale = a.norm() * (b.norm() + std::abs(z) * c.norm());
    EXPECT_LT(std::abs(inner_product(a, bc) - (inner_product(a, b) + z * inner_product(a, c))), 1e-14 * scale);
    EXPECT_LT(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))), 1e-14 * a.norm() * b.norm());
    // conjugate-linear in the first slot
    const Signal za(lat, z * a.amplitudes());
    EXPECT_LT(std::abs(inner_product(za, b) - std::conj(z) * inner_product(a, b)),
              1e-14 * std::abs(z) * a.norm() * b.norm());
  }
}

TEST(InnerProduct, LatticeMismatchThrows) {
  EXPECT_THROW(inner_product(basis_signal(Lattice(5), 0), basis_signal(Lattice(7), 0)), std::invalid_argument);
}

TEST(CoordinateSignal, Values) {
  const Lattice lat(21);
  const Signal q = coordinate_signal(lat);
  EXPECT_EQ(q[0], cplx(0.0));
  EXPECT_DOUBLE_EQ(q[10].real(), 10.0 * std::sqrt(2.0 * pi / 21.0));
  EXPECT_NEAR(std::abs(q.amplitudes().sum()), 0.0, 1e-14);
}

TEST(Operator, ShapeAndAccess) {
  const Lattice lat(5);
  EXPECT_THROW(Operator(lat, CMatrix::Zero(4, 4)), std::invalid_argument);
  const Operator d = Operator::diagonal(coordinate_signal(lat));
  EXPECT_DOUBLE_EQ(d.at(2, 2).real(), 2.0 * lat.step());
  EXPECT_EQ(d.at(2, 2), d.at(-3, -3));
  EXPECT_THROW(d * Operator::identity(Lattice(7)), std::invalid_argument);
}
