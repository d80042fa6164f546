#pragma once

// Analytic results for two-layer networks: the budget bound on lambda2,
// regular (constant row/column sum) interlink weights, the spectrum under
// uniform all-pairs weights and the thresholds and super-diffusion windows it
// implies, plus bounds driven by the layer Fiedler vectors.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mlconn/multinet.hpp"
#include "mlconn/spectra.hpp"

namespace mlconn {

/// (1/n + 1/m) c: no interlink allocation with total c beats this lambda2.
double upper_bound_F(int n, int m, double budget);

struct RegularityWitness {
  bool feasible = false;
  /// Present iff feasible: W 1_m = (c/n) 1_n and W^T 1_n = (c/m) 1_m.
  std::optional<WeightAssignment> weights;
};

/// Exact feasibility of regular weights supported on the pattern. Uses
/// uniform weights when the pattern is biregular, otherwise an integer
/// transportation max-flow (row supplies m, column demands n, scaled by
/// c/(nm)).
RegularityWitness regularity_witness(const InterlayerPattern& pattern, int n,
                                     int m, double budget);

/// Spectrum of the supra-Laplacian under uniform all-pairs weights c/(nm),
/// assembled from the layer spectra. Eigenvectors are not populated.
Eigen::VectorXd uniform_allpairs_spectrum(const Spectrum& layer1,
                                          const Spectrum& layer2, int n, int m,
                                          double budget);

/// min((1/n+1/m)c, l21 + c/n, l22 + c/m).
double uniform_lambda2(double l21, double l22, int n, int m, double budget);

enum class TransitionCase { kCase1, kCase2, kCase3, kDegenerate };

std::string to_string(TransitionCase c);

struct ThresholdReport {
  TransitionCase case_label = TransitionCase::kDegenerate;
  double c_star = 0.0;
  std::optional<double> c_star_star;
  std::vector<std::string> formulas_used;
};

/// Transition budgets of the uniform all-pairs lambda2 curve. Cases are keyed
/// on the specific connectivities s1 = l21/n and s2 = l22/m:
///   s1 > s2 with n > m       -> Case1, c* = n l22, c** = (l21-l22)/(1/m-1/n)
///   s1 < s2 with n >= m      -> Case2, c* = m l21
///   s1 > s2 with n <= m      -> Case3, c* = n l22
///   s1 < s2 with n < m       -> Case1 with the layers' roles exchanged
///   |s1 - s2| <= 1e-12 s     -> Degenerate (common crossing reported)
ThresholdReport thresholds_allpairs(double l21, double l22, int n, int m);

struct SuperdiffusionReport {
  bool condition_holds = false;
  TransitionCase case_label = TransitionCase::kDegenerate;
  /// (left, middle, right) of the strict chain left < middle < right.
  std::array<double, 3> inequality_values{};
};

/// Whether the uniform all-pairs curve exceeds max(l21, l22) already at
/// some c <= c*. Strict comparison, no tolerance.
SuperdiffusionReport superdiffusion_window(double l21, double l22, int n, int m);

struct LayerFiedlerBounds {
  double bound1 = 0.0;
  double bound2 = 0.0;
};

/// lambda2^(1) + u^T diag(W 1_m) u and lambda2^(2) + v^T diag(W^T 1_n) v,
/// both strictly above lambda2 of the supra-Laplacian for c > 0.
LayerFiedlerBounds layer_fiedler_bounds(const FiedlerData& layer1,
                                        const FiedlerData& layer2,
                                        const Eigen::MatrixXd& weights);
LayerFiedlerBounds layer_fiedler_bounds(const MultilayerNetwork& network,
                                        const WeightAssignment& assignment);

/// Bracket (n l2_min / 2, n l2_min) for c* of a k-to-k pattern with n = m.
std::pair<double, double> ktok_threshold_bounds(double l2_min, int n);

}  // namespace mlconn
