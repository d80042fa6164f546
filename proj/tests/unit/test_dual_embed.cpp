#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "mlconn/closed_form.hpp"
#include "mlconn/dual_embed.hpp"
#include "mlconn/error.hpp"
#include "mlconn/generators.hpp"
#include "mlconn/spectra.hpp"
#include "mlconn/weight_opt.hpp"
#include "oracles.hpp"

namespace mlconn {
namespace {

const MultilayerNetwork& sparse_second_layer() {
  static const MultilayerNetwork net = testing::geometric_instance(30, 15, 0.6798, 0.0712, 1);
  return net;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kInvalidArgument;
}

void expect_axes_are_eigenvectors(const MultilayerNetwork& net, const EmbeddingSolution& s) {
  const Eigen::MatrixXd l = build_supra_laplacian(net, s.assignment).matrix;
  for (Eigen::Index k = 0; k < s.coordinates.cols(); ++k) {
    const Eigen::VectorXd axis = s.coordinates.col(k);
    if (axis.norm() < 1e-8) continue;
    const Eigen::VectorXd unit = axis / axis.norm();
    EXPECT_LE((l * unit - s.lambda2 * unit).norm(), 1e-6);
  }
}

TEST(RecoverEmbedding, ClumpedBelowThreshold) {
  const int n = 30;
  const int m = 15;
  const OptimizationResult r = maximize_lambda2(sparse_second_layer(), 1.0);
  const EmbeddingSolution s = recover_embedding(sparse_second_layer(), r);
  EXPECT_EQ(embedding_dimension(s), 1);
  EXPECT_LE(within_layer_variance(s, 1), 1e-8);
  EXPECT_LE(within_layer_variance(s, 2), 1e-8);
  const double h = 1.0 / std::sqrt(double(n) * m * (n + m));
  const double sign = s.coordinates(0, 0) > 0 ? 1.0 : -1.0;
  for (int i = 0; i < n; ++i) EXPECT_NEAR(sign * s.coordinates(i, 0), m * h, 1e-6);
  for (int j = 0; j < m; ++j) EXPECT_NEAR(sign * s.coordinates(n + j, 0), -n * h, 1e-6);
  const double mean1 = s.coordinates.topRows(n).mean();
  const double mean2 = s.coordinates.bottomRows(m).mean();
  EXPECT_NEAR(n * mean1 + m * mean2, 0.0, 1e-8);
  EXPECT_TRUE(verify_embedding(sparse_second_layer(), 1.0, s).ok());
  EXPECT_NEAR(s.objective, r.lambda2_star, 1e-5);
  expect_axes_are_eigenvectors(sparse_second_layer(), s);
}

TEST(RecoverEmbedding, BetweenThresholdsLayer1StaysClumped) {
  const OptimizationResult r = maximize_lambda2(sparse_second_layer(), 10.0);
  ASSERT_TRUE(r.converged);
  const EmbeddingSolution s = recover_embedding(sparse_second_layer(), r);
  EXPECT_LT(within_layer_variance(s, 1), 1e-8);
  EXPECT_GT(within_layer_variance(s, 2), 1e-4);
  EXPECT_LE(embedding_dimension(s), r.fiedler_multiplicity);
  const EmbeddingReport rep = verify_embedding(sparse_second_layer(), 10.0, s);
  for (const auto& v : rep.violations) ADD_FAILURE() << to_string(v.check) << ": " << v.message;
  EXPECT_LE(std::abs(s.objective - r.lambda2_star), 1e-5 * std::max(1.0, r.lambda2_star));
  expect_axes_are_eigenvectors(sparse_second_layer(), s);
}

TEST(RecoverEmbedding, SmallInstanceAgainstGridOracle) {
  // Reflection-symmetric 3+3 instance: the optimum splits evenly, a grid point.
  const MultilayerNetwork net(path_graph(3), path_graph(3),
                              InterlayerPattern::explicit_pairs(3, 3, {{0, 0}, {2, 2}}));
  const double c = 1.0;
  const OptimizationResult oracle = oracle_grid_optimum(net, c, 0.01);
  const OptimizationResult r = maximize_lambda2(net, c);
  ASSERT_TRUE(r.converged);
  const EmbeddingSolution s = recover_embedding(net, r);
  EXPECT_NEAR(s.objective, oracle.lambda2_star, 1e-5);
  const EmbeddingReport rep = verify_embedding(net, c, s);
  for (const auto& v : rep.violations) ADD_FAILURE() << to_string(v.check) << ": " << v.message;
  expect_axes_are_eigenvectors(net, s);
}

TEST(RecoverEmbedding, StrongDualityOnRandomInstances) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 4; ++trial) {
    const MultilayerNetwork net(testing::random_connected_layer(6, 0.5, 0.5, 1.5, rng),
                                testing::random_connected_layer(5, 0.5, 0.5, 1.5, rng),
                                InterlayerPattern::all_pairs(6, 5));
    for (double c : {1.0, 6.0, 20.0}) {
      const OptimizationResult r = maximize_lambda2(net, c);
      ASSERT_TRUE(r.converged);
      const EmbeddingSolution s = recover_embedding(net, r);
      EXPECT_LE(std::abs(s.objective - r.lambda2_star), 1e-5 * std::max(1.0, r.lambda2_star));
      EXPECT_LE(embedding_dimension(s), r.fiedler_multiplicity);
      const EmbeddingReport rep = verify_embedding(net, c, s);
      for (const auto& v : rep.violations) ADD_FAILURE() << to_string(v.check) << ": " << v.message;
      expect_axes_are_eigenvectors(net, s);
    }
  }
}

TEST(RecoverEmbedding, Errors) {
  OptimizationResult r = maximize_lambda2(sparse_second_layer(), 1.0);
  r.converged = false;
  EXPECT_EQ(kind_of([&] { recover_embedding(sparse_second_layer(), r); }), ErrorKind::kUnconverged);

  // K8 + K8 under uniform weights far above the threshold: lambda2 has 14 copies.
  const MultilayerNetwork k8(complete_graph(8), complete_graph(8), InterlayerPattern::all_pairs(8, 8));
  OptimizationResult big;
  big.assignment = uniform_assignment(k8.pattern(), 100.0);
  big.lambda2_star = 8.0 + 100.0 / 8.0;
  big.converged = true;
  EXPECT_EQ(kind_of([&] { recover_embedding(k8, big); }), ErrorKind::kClusterTooLarge);

  // Uniform weights are not optimal past c*, so no dual embedding certifies them.
  OptimizationResult bogus;
  bogus.assignment = uniform_assignment(sparse_second_layer().pattern(), 10.0);
  bogus.lambda2_star = testing::reference_lambda2(build_supra_laplacian(sparse_second_layer(), bogus.assignment).matrix);
  bogus.converged = true;
  EXPECT_EQ(kind_of([&] { recover_embedding(sparse_second_layer(), bogus); }), ErrorKind::kDualityGapTooLarge);
}

TEST(VerifyEmbedding, TranslationBreaksCentering) {
  EmbeddingSolution s = recover_embedding(sparse_second_layer(), maximize_lambda2(sparse_second_layer(), 1.0));
  s.coordinates.array() += 0.01;
  s.dual_matrix = s.coordinates * s.coordinates.transpose();
  const EmbeddingReport rep = verify_embedding(sparse_second_layer(), 1.0, s);
  EXPECT_TRUE(rep.has(EmbeddingCheck::kCentering));
}

TEST(EmbeddingDimension, ZeroMatrix) {
  EmbeddingSolution s;
  s.n = 2;
  s.m = 2;
  s.dual_matrix = Eigen::MatrixXd::Zero(4, 4);
  s.coordinates = Eigen::MatrixXd::Zero(4, 0);
  EXPECT_EQ(embedding_dimension(s), 0);
}

TEST(ScaleSolution, Invariants) {
  const int n = 30;
  const int m = 15;
  const double c = 1.0;
  const EmbeddingSolution clumped = recover_embedding(sparse_second_layer(), maximize_lambda2(sparse_second_layer(), c));
  const ScaledEmbedding a = scale_solution(clumped, c, clumped.lambda2);
  EXPECT_NEAR(a.coordinates.squaredNorm(), 1.0 / upper_bound_F(n, m, c), 1e-6);

  const double c2 = 10.0;
  const OptimizationResult r = maximize_lambda2(sparse_second_layer(), c2);
  const EmbeddingSolution s = recover_embedding(sparse_second_layer(), r);
  const ScaledEmbedding b = scale_solution(s, c2, r.lambda2_star);
  EXPECT_NEAR(b.weights.sum(), 1.0 / r.lambda2_star, 1e-6);
  EXPECT_NEAR(b.coordinates.squaredNorm(), 1.0 / r.lambda2_star, 1e-6);
  const ScaledEmbedding own = scale_solution(s, c2, s.objective);
  EXPECT_LE(own.max_interlink_constraint, 1.0 + 1e-8);

  EXPECT_EQ(kind_of([&] { scale_solution(s, c2, 0.0); }), ErrorKind::kZeroLambda);
}

}  // namespace
}  // namespace mlconn
