#pragma once

// Run reports: JSON trees with schema_version 1, serialized with every
// floating-point value at 17 significant digits.

#include <string>

#include <nlohmann/json.hpp>

#include "mlconn/closed_form.hpp"
#include "mlconn/design_tools.hpp"
#include "mlconn/diffusion.hpp"
#include "mlconn/dual_embed.hpp"
#include "mlconn/multinet.hpp"
#include "mlconn/weight_opt.hpp"

namespace mlconn::cli {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Pretty-printed, two-space indent, keys in insertion order, trailing
/// newline. Non-finite reals become null.
std::string dump_report(const Json& report);
Json parse_report(const std::string& text);

Json network_json(const MultilayerNetwork& network);
Json thresholds_json(const ThresholdReport& report);
Json superdiffusion_json(const SuperdiffusionReport& report);
Json result_json(const OptimizationResult& result);
Json embedding_json(const EmbeddingSolution& solution, const EmbeddingReport& checks);
Json greedy_json(const GreedyPlan& plan);
Json trajectory_json(const DiffusionTrajectory& trajectory);
Json vector_json(const Eigen::VectorXd& v);

}  // namespace mlconn::cli
