#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mlconn/closed_form.hpp"
#include "mlconn/diffusion.hpp"
#include "mlconn/error.hpp"
#include "mlconn/generators.hpp"
#include "mlconn/spectra.hpp"
#include "mlconn/weight_opt.hpp"
#include "oracles.hpp"

namespace mlconn {
namespace {

Eigen::MatrixXd ten_node_laplacian() {
  std::mt19937_64 rng(1010);
  return testing::random_connected_layer(10, 0.35, 0.3, 1.5, rng).laplacian();
}

TEST(Simulate, ConsensusIsFixed) {
  const Eigen::MatrixXd l = ten_node_laplacian();
  const DiffusionTrajectory t = simulate(l, Eigen::VectorXd::Ones(10), uniform_times(5.0, 11));
  for (const auto& x : t.states) EXPECT_LE((x - Eigen::VectorXd::Ones(10)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Simulate, FiedlerModeDecaysExponentially) {
  const Eigen::MatrixXd l = ten_node_laplacian();
  const FiedlerData fd = fiedler(l);
  const DiffusionTrajectory t = simulate(l, fd.vector, uniform_times(4.0, 9));
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    const Eigen::VectorXd& x = t.states[k];
    const double dev = (x.array() - x.mean()).matrix().norm();
    EXPECT_NEAR(dev, std::exp(-fd.lambda2 * t.times[k]), 1e-10);
  }
}

TEST(Simulate, MatchesRungeKutta) {
  const Eigen::MatrixXd l = ten_node_laplacian();
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Eigen::VectorXd x0(10);
  for (int i = 0; i < 10; ++i) x0(i) = g(rng);
  const DiffusionTrajectory t = simulate(l, x0, {0.0, 0.5, 2.0});
  EXPECT_LE((t.states[1] - testing::rk4_diffusion(l, x0, 0.5, 1e-3)).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE((t.states[2] - testing::rk4_diffusion(l, x0, 2.0, 1e-3)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Simulate, ConservationAndMonotoneEnergy) {
  const Eigen::MatrixXd l = ten_node_laplacian();
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  Eigen::VectorXd x0(10);
  for (int i = 0; i < 10; ++i) x0(i) = u(rng);
  const DiffusionTrajectory t = simulate(l, x0, uniform_times(10.0, 200));
  EXPECT_EQ(t.states.front(), x0);
  double prev = INFINITY;
  for (const auto& x : t.states) {
    EXPECT_NEAR(x.sum(), x0.sum(), 1e-8);
    const double dev = (x.array() - x.mean()).matrix().norm();
    EXPECT_LE(dev, prev + 1e-12);
    prev = dev;
  }
}

TEST(Simulate, RejectsBadTimes) {
  const Eigen::MatrixXd l = ten_node_laplacian();
  EXPECT_THROW(simulate(l, Eigen::VectorXd::Ones(10), {0.5, 1.0}), Error);
  EXPECT_THROW(simulate(l, Eigen::VectorXd::Ones(10), {0.0, 2.0, 1.0}), Error);
  EXPECT_THROW(simulate(l, Eigen::VectorXd::Ones(9), {0.0}), Error);
}

TEST(EstimateRate, SingleMode) {
  // Two nodes joined by weight 0.25: lambda2 = 0.5.
  Eigen::MatrixXd l(2, 2);
  l << 0.25, -0.25, -0.25, 0.25;
  const DiffusionTrajectory t = simulate(l, Eigen::Vector2d(1.0, -1.0), uniform_times(20.0, 101));
  EXPECT_NEAR(estimate_rate(t), 0.5, 1e-6);
}

TEST(EstimateRate, GenericStartNearLambda2) {
  const Eigen::MatrixXd l = ten_node_laplacian();
  const double l2 = fiedler(l).lambda2;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  Eigen::VectorXd x0(10);
  for (int i = 0; i < 10; ++i) x0(i) = g(rng);
  const DiffusionTrajectory t = simulate(l, x0, uniform_times(30.0 / l2, 400));
  EXPECT_NEAR(estimate_rate(t), l2, 0.01 * l2);
}

TEST(EstimateRate, Consensus) {
  const Eigen::MatrixXd l = ten_node_laplacian();
  const DiffusionTrajectory t = simulate(l, Eigen::VectorXd::Constant(10, 3.0), uniform_times(5.0, 50));
  try {
    estimate_rate(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateTrajectory);
  }
}

TEST(Phases, LayersMoveAsUnitsThenSplit) {
  const MultilayerNetwork net = testing::geometric_instance(30, 15, 0.6798, 0.0712, 1);
  const double l21 = fiedler(net.layer1().laplacian()).lambda2;
  const double l22 = fiedler(net.layer2().laplacian()).lambda2;
  const ThresholdReport thr = thresholds_allpairs(l21, l22, 30, 15);
  Eigen::VectorXd x0(45);
  x0.head(30).setConstant(1.0);
  x0.tail(15).setConstant(-1.0);
  const auto spreads = [&](double c) {
    const OptimizationResult r = maximize_lambda2(net, c);
    const DiffusionTrajectory t =
        simulate(build_supra_laplacian(net, r.assignment), x0, uniform_times(20.0 / r.lambda2_star, 200));
    double s1 = 0.0;
    double s2 = 0.0;
    for (const auto& x : t.states) {
      s1 = std::max(s1, within_layer_spread(x, 0, 30));
      s2 = std::max(s2, within_layer_spread(x, 30, 15));
    }
    return std::pair{s1, s2};
  };
  const auto [a1, a2] = spreads(0.5 * thr.c_star);
  EXPECT_LT(a1, 1e-6);
  EXPECT_LT(a2, 1e-6);
  const auto [b1, b2] = spreads(0.5 * (thr.c_star + *thr.c_star_star));
  EXPECT_LT(b1, 1e-6);
  EXPECT_GT(b2, 1e-3);
}

TEST(Helpers, SpreadAndTimes) {
  EXPECT_NEAR(within_layer_spread(Eigen::Vector4d(1, 3, 5, 5), 0, 2), 1.0, 1e-15);
  EXPECT_EQ(within_layer_spread(Eigen::Vector4d(1, 3, 5, 5), 2, 2), 0.0);
  EXPECT_THROW(within_layer_spread(Eigen::Vector4d(1, 3, 5, 5), 3, 2), Error);
  const auto t = uniform_times(2.0, 5);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 2.0);
  EXPECT_THROW(uniform_times(1.0, 1), Error);
}

}  // namespace
}  // namespace mlconn
