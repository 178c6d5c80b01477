#include <gtest/gtest.h>

#include <thread>

#include "finosc/finosc.hpp"
#include "oracles.hpp"

using namespace finosc;

namespace {

struct Bases {
  Lattice lat;
  SpectralBasis frame;
  SpectralBasis harper;
};

const Bases& bases21() {
  static const Bases b{Lattice(21), frame_basis(Lattice(21)), harper_basis(Lattice(21))};
  return b;
}

double maxabs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Kernel, GroupLaws) {
  for (const SpectralBasis* b : {&bases21().frame, &bases21().harper}) {
    const CMatrix k0 = frft_kernel(*b, 0.0).K.matrix();
    const CMatrix k1 = frft_kernel(*b, 1.0).K.matrix();
    const CMatrix ka = frft_kernel(*b, 0.3).K.matrix();
    const CMatrix kb = frft_kernel(*b, 0.45).K.matrix();
    const CMatrix kab = frft_kernel(*b, 0.75).K.matrix();
    const CMatrix k4 = frft_kernel(*b, 4.0).K.matrix();
    EXPECT_LT(maxabs(k0 - CMatrix::Identity(21, 21)), 1e-12);
    EXPECT_LT(maxabs(k1 - oracle::dft(21)), 1e-10);
    EXPECT_LT(maxabs(ka * kb - kab), 1e-12);
    EXPECT_LT(maxabs(k4 - CMatrix::Identity(21, 21)), 1e-12);
    EXPECT_LT(maxabs(ka * ka.adjoint() - CMatrix::Identity(21, 21)), 1e-12);
    EXPECT_LT(maxabs(ka - ka.transpose()), 1e-14);
    EXPECT_LT(maxabs(frft_kernel(*b, -0.3).K.matrix() - ka.adjoint()), 1e-12);
  }
}

TEST(Kernel, ParityAtTwo) {
  const CMatrix k2 = frft_kernel(bases21().frame, 2.0).K.matrix();
  const Lattice& lat = bases21().lat;
  for (int n = -10; n <= 10; ++n)
    for (int m = -10; m <= 10; ++m)
      EXPECT_NEAR(std::abs(k2(lat.pos(n), lat.pos(m)) - (n == -m ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(Transform, GaussianAtOneGivesWideGaussian) {
  const Lattice& lat = bases21().lat;
  const Signal g10 = gaussian_signal(lat, 10.0);
  const Signal out = apply_frft(frft_kernel(bases21().frame, 1.0), g10);
  const ThetaGaussian wide = theta_gaussian(lat, 0.1);
  EXPECT_LT((out.amplitudes() - wide.amp.amplitudes() / std::sqrt(10.0)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(out.norm(), g10.norm(), 1e-12);
}

TEST(Transform, DeltaAtTwoIsFixed) {
  const Signal e0 = basis_signal(bases21().lat, 0);
  for (const SpectralBasis* b : {&bases21().frame, &bases21().harper})
    EXPECT_LT(max_abs_distance(apply_frft(frft_kernel(*b, 2.0), e0), e0), 1e-12);
}

TEST(Transform, FrameCloserToContinuousForNarrowGaussian) {
  const Lattice& lat = bases21().lat;
  const Signal g10 = gaussian_signal(lat, 10.0);
  const Signal ref = continuous_frft_oracle([](double x) { return std::exp(-5.0 * x * x); }, 0.5, lat);
  const double ef = max_abs_distance(apply_frft(frft_kernel(bases21().frame, 0.5), g10), ref);
  const double eh = max_abs_distance(apply_frft(frft_kernel(bases21().harper, 0.5), g10), ref);
  EXPECT_LT(ef, eh);
  EXPECT_LT(ef, 0.1);
}

TEST(Signals, Rectangular) {
  const Lattice& lat = bases21().lat;
  const Signal r = rectangular_signal(lat);
  EXPECT_NEAR(r.norm() * r.norm(), 3.0, 1e-15);
  for (int n = -10; n <= 10; ++n) EXPECT_EQ(r[n], r[-n]);
  const CVector fr = oracle::dft(21) * r.amplitudes();
  for (int k = -10; k <= 10; ++k)
    EXPECT_NEAR(std::abs(fr(lat.pos(k)) - (1.0 + 2.0 * std::cos(2 * oracle::pi * k / 21)) / std::sqrt(21.0)), 0.0, 1e-14);
}

TEST(Signals, GaussianIsThetaGaussian) {
  const Lattice lat(21);
  const Signal g = gaussian_signal(lat, 10.0);
  for (int n = -10; n <= 10; ++n) EXPECT_NEAR(g[n].real(), oracle::theta_sum(21, 10.0, n), 1e-14);
}

TEST(Cache, ReturnsSameKernel) {
  KernelCache cache(std::make_shared<const SpectralBasis>(bases21().frame),
                    std::make_shared<const SpectralBasis>(bases21().harper));
  const auto a = cache.get(BasisKind::frame, 0.5);
  EXPECT_EQ(a.get(), cache.get(BasisKind::frame, 0.5).get());
  EXPECT_NE(a.get(), cache.get(BasisKind::harper, 0.5).get());
  EXPECT_EQ(cache.get(BasisKind::harper, 0.5)->kind, BasisKind::harper);
  EXPECT_LT(maxabs(a->K.matrix() - frft_kernel(bases21().frame, 0.5).K.matrix()), 1e-15);
}

TEST(Cache, ConcurrentAccess) {
  KernelCache cache(std::make_shared<const SpectralBasis>(bases21().frame),
                    std::make_shared<const SpectralBasis>(bases21().harper));
  std::vector<const FrftKernel*> seen(8);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { seen[t] = cache.get(BasisKind::frame, 0.25).get(); });
  for (auto& th : threads) th.join();
  for (int t = 1; t < 8; ++t) EXPECT_EQ(seen[t], seen[0]);
}

TEST(Kernel, RejectsInconsistentBasis) {
  const SpectralBasis& good = bases21().frame;
  RMatrix v = good.vectors();
  v.col(3).swap(v.col(4));
  std::vector<BasisLabel> labels;
  for (int m = 0; m < 21; ++m) labels.push_back(good.label(m));
  std::swap(labels[3], labels[4]);
  const SpectralBasis bad(good.lattice(), good.kind(), good.values(), v, labels);
  EXPECT_THROW(frft_kernel(bad, 0.5), numerical_error);
}

TEST(Kernel, RejectsIncompleteBasis) {
  const SpectralBasis& good = bases21().frame;
  std::vector<BasisLabel> labels;
  for (int m = 0; m < 20; ++m) labels.push_back(good.label(m));
  const SpectralBasis part(good.lattice(), good.kind(), good.values().head(20), good.vectors().leftCols(20), labels);
  EXPECT_THROW(frft_kernel(part, 0.5), std::invalid_argument);
}
