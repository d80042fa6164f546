#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mlconn/generators.hpp"
#include "mlconn/spectra.hpp"
#include "oracles.hpp"

namespace mlconn {
namespace {

TEST(FullSpectrum, SmallClosedForms) {
  const Spectrum k2 = full_spectrum(complete_graph(2).laplacian());
  EXPECT_NEAR(k2.values(0), 0.0, 1e-12);
  EXPECT_NEAR(k2.values(1), 2.0, 1e-12);
  const Spectrum p3 = full_spectrum(path_graph(3).laplacian());
  EXPECT_NEAR(p3.values(0), 0.0, 1e-12);
  EXPECT_NEAR(p3.values(1), 1.0, 1e-12);
  EXPECT_NEAR(p3.values(2), 3.0, 1e-12);
}

TEST(FullSpectrum, MatchesCharacteristicPolynomialRoots) {
  std::mt19937_64 rng(2024);
  const Eigen::MatrixXd l = testing::random_connected_layer(10, 0.4, 0.5, 1.5, rng).laplacian();
  const Eigen::VectorXd roots = testing::charpoly_eigenvalues(l);
  const Spectrum s = full_spectrum(l);
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(s.values(k), roots(k), 1e-8);
}

TEST(FullSpectrum, Invariants) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd l = testing::random_connected_layer(15, 0.3, 0.1, 4.0, rng).laplacian();
    const Spectrum s = full_spectrum(l);
    for (int k = 1; k < s.size(); ++k) EXPECT_LE(s.values(k - 1), s.values(k));
    EXPECT_LE((s.vectors.transpose() * s.vectors - Eigen::MatrixXd::Identity(15, 15)).cwiseAbs().maxCoeff(),
              1e-10);
    const double scale = std::max(1.0, s.values(14));
    EXPECT_LE((l * s.vectors - s.vectors * s.values.asDiagonal()).cwiseAbs().maxCoeff(), 1e-9 * scale);
    EXPECT_NEAR(s.values.sum(), l.trace(), 1e-9 * l.trace());
  }
}

TEST(FullSpectrum, Deterministic) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd l = testing::random_connected_layer(20, 0.3, 0.1, 2.0, rng).laplacian();
  const Spectrum a = full_spectrum(l);
  const Spectrum b = full_spectrum(l);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Fiedler, PathOfThree) {
  const FiedlerData fd = fiedler(path_graph(3).laplacian());
  EXPECT_NEAR(fd.lambda2, 1.0, 1e-12);
  EXPECT_EQ(fd.multiplicity, 1);
  EXPECT_NEAR(fd.vector(0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(fd.vector(1), 0.0, 1e-12);
  EXPECT_NEAR(fd.vector(2), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Fiedler, DisconnectedUnionHasZeroLambda2) {
  const MultilayerNetwork net(path_graph(3), cycle_graph(4), InterlayerPattern::all_pairs(3, 4));
  const FiedlerData fd = fiedler(net.intralayer_laplacian());
  EXPECT_NEAR(fd.lambda2, 0.0, 1e-12);
  EXPECT_NEAR(fd.vector.sum(), 0.0, 1e-10);
}

TEST(Fiedler, TwoK2UniformAllPairs) {
  const MultilayerNetwork net(complete_graph(2), complete_graph(2), InterlayerPattern::all_pairs(2, 2));
  const Eigen::MatrixXd l = build_supra_laplacian(net, uniform_assignment(net.pattern(), 1.0)).matrix;
  EXPECT_NEAR(fiedler(l).lambda2, 1.0, 1e-12);
  EXPECT_NEAR(testing::reference_lambda2(l), 1.0, 1e-12);
}

TEST(Fiedler, VectorConventionsAndRayleigh) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd l = testing::random_connected_layer(12, 0.3, 0.2, 2.0, rng).laplacian();
    const FiedlerData fd = fiedler(l);
    EXPECT_NEAR(fd.vector.norm(), 1.0, 1e-12);
    EXPECT_NEAR(fd.vector.sum(), 0.0, 1e-10);
    EXPECT_NEAR(fd.vector.dot(l * fd.vector), fd.lambda2, 1e-9);
    EXPECT_NEAR(fd.lambda2, testing::reference_lambda2(l), 1e-9);
    for (int i = 0; i < fd.vector.size(); ++i) {
      if (std::abs(fd.vector(i)) > 1e-9) {
        EXPECT_GT(fd.vector(i), 0.0);
        break;
      }
    }
  }
}

TEST(Fiedler, MultiplicityOfCycle) {
  const FiedlerData fd = fiedler(cycle_graph(6).laplacian());
  EXPECT_EQ(fd.multiplicity, 2);
  EXPECT_EQ(fd.cluster_basis.cols(), 2);
  EXPECT_NEAR(fd.lambda2, 1.0, 1e-12);
}

TEST(SpecificConnectivity, Values) {
  for (int n : {2, 5, 9}) EXPECT_NEAR(specific_connectivity(complete_graph(n)), 1.0, 1e-12);
  EXPECT_NEAR(specific_connectivity(path_graph(3)), 1.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace mlconn
