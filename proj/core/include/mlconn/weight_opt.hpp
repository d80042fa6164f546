#pragma once

// Maximizing lambda2 of the supra-Laplacian over interlink weights with a
// fixed total budget on an admissible pattern.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mlconn/closed_form.hpp"
#include "mlconn/multinet.hpp"

namespace mlconn {

enum class StepRule {
  /// Log-barrier path following on max lambda s.t. L(w) - lambda I >= 0 on
  /// the complement of the all-ones vector.
  kInteriorPoint,
  /// Projected supergradient ascent with diminishing steps.
  kSupergradient,
};

enum class SolveMode { kAnalytic, kIterative };

std::string to_string(StepRule rule);
std::string to_string(SolveMode mode);

struct SolverOptions {
  double tol_gap = 1e-4;
  int max_iter = 5000;
  StepRule step_rule = StepRule::kInteriorPoint;
  std::uint64_t rng_seed = 42;
  /// Eigencluster tolerance; defaults to 1e-6 max(1, lambda_N).
  std::optional<double> eigen_cluster_tol;
  /// detect_threshold_numeric gives up above this multiple of the largest
  /// admissible crossing estimate.
  double threshold_cap_factor = 64.0;
  /// Relative bracket width at which threshold bisection stops.
  double threshold_rel_tol = 1e-7;
  bool warm_start = true;
};

struct OptimizationResult {
  WeightAssignment assignment;
  double lambda2_star = 0.0;
  /// Shift lambda2* / N applied along the all-ones direction.
  double mu = 0.0;
  double certified_upper = 0.0;
  double gap = 0.0;
  SolveMode mode = SolveMode::kIterative;
  int iterations = 0;
  int fiedler_multiplicity = 0;
  bool converged = false;
};

/// Analytic path when a regular assignment attains (1/n+1/m)c, otherwise the
/// iterative solver selected by options.step_rule. `initial` (aligned with
/// the pattern, any positive scale) seeds the iterative solver.
/// Throws kInfeasiblePattern for c > 0 with an empty pattern. A solve that
/// stops before reaching the gap tolerance returns converged = false.
OptimizationResult maximize_lambda2(const MultilayerNetwork& network,
                                    double budget,
                                    const SolverOptions& options = {},
                                    const std::optional<Eigen::VectorXd>& initial = std::nullopt);

/// Throws kNotRegular if the witness is infeasible.
OptimizationResult analytic_optimum(const RegularityWitness& witness, int n,
                                    int m, double budget);

/// Exhaustive search on the budget simplex with spacing grid_step * c.
/// Throws kTooManyPairs beyond four admissible pairs.
OptimizationResult oracle_grid_optimum(const MultilayerNetwork& network,
                                       double budget, double grid_step);

/// Throws kInvalidArgument unless budgets ascend.
std::vector<std::pair<double, OptimizationResult>> sweep_budget(
    const MultilayerNetwork& network, const std::vector<double>& budgets,
    const SolverOptions& options = {});

/// Smallest budget at which lambda2 and lambda3 of the optimally weighted
/// supra-Laplacian coincide. Throws kNotRegular when no regular assignment
/// exists and kNoCoalescence when a layer is disconnected or the bracket
/// search passes the cap.
double detect_threshold_numeric(const MultilayerNetwork& network,
                                const SolverOptions& options = {});

}  // namespace mlconn
