#include "mlconn_cli/report.hpp"

#include <algorithm>
#include <cmath>

#include "mlconn/csv.hpp"

namespace mlconn::cli {

namespace {

std::string real_text(double v) {
  if (!std::isfinite(v)) return "null";
  std::string s = format_real(v);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          write(j[k], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        write(j[k], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += real_text(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

Json pair_list(const std::vector<NodePair>& pairs) {
  Json a = Json::array();
  for (const NodePair& p : pairs) a.push_back({p.i, p.j});
  return a;
}

Json edge_list(const LayerGraph& g) {
  Json a = Json::array();
  for (const Edge& e : g.edges()) a.push_back({e.i, e.j, e.weight});
  return a;
}

}  // namespace

std::string dump_report(const Json& report) {
  std::string out;
  write(report, out, 0);
  out += "\n";
  return out;
}

Json parse_report(const std::string& text) { return Json::parse(text); }

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

Json network_json(const MultilayerNetwork& network) {
  const InterlayerPattern& p = network.pattern();
  Json j;
  j["n"] = network.n();
  j["m"] = network.m();
  j["layer1_edges"] = edge_list(network.layer1());
  j["layer2_edges"] = edge_list(network.layer2());
  j["pattern"] = to_string(p.kind());
  if (p.kind() == PatternKind::kKToK) j["k"] = p.k();
  j["admissible_pairs"] = p.size();
  if (p.kind() == PatternKind::kExplicit) j["pairs"] = pair_list(p.pairs());
  return j;
}

Json thresholds_json(const ThresholdReport& report) {
  Json j;
  j["case"] = to_string(report.case_label);
  j["c_star"] = report.c_star;
  j["c_star_star"] = report.c_star_star ? Json(*report.c_star_star) : Json(nullptr);
  j["formulas"] = report.formulas_used;
  return j;
}

Json superdiffusion_json(const SuperdiffusionReport& report) {
  Json j;
  j["condition_holds"] = report.condition_holds;
  j["case"] = to_string(report.case_label);
  j["inequality_values"] = {report.inequality_values[0], report.inequality_values[1],
                            report.inequality_values[2]};
  return j;
}

Json result_json(const OptimizationResult& r) {
  Json j;
  j["c"] = r.assignment.budget;
  j["lambda2_star"] = r.lambda2_star;
  j["mu"] = r.mu;
  j["certified_upper"] = r.certified_upper;
  j["gap"] = r.gap;
  j["mode"] = to_string(r.mode);
  j["iterations"] = r.iterations;
  j["multiplicity"] = r.fiedler_multiplicity;
  j["converged"] = r.converged;
  Json w = Json::array();
  for (const InterlinkWeight& e : r.assignment.entries) w.push_back({e.i, e.j, e.weight});
  j["weights"] = std::move(w);
  return j;
}

Json embedding_json(const EmbeddingSolution& s, const EmbeddingReport& checks) {
  Json j;
  j["nu"] = s.nu;
  j["objective"] = s.objective;
  j["lambda2"] = s.lambda2;
  j["dimension"] = embedding_dimension(s);
  j["variance_layer1"] = within_layer_variance(s, 1);
  j["variance_layer2"] = within_layer_variance(s, 2);
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < s.coordinates.rows(); ++i) {
    rows.push_back(vector_json(s.coordinates.row(i).transpose()));
  }
  j["coordinates"] = std::move(rows);
  Json v = Json::array();
  for (const EmbeddingViolation& e : checks.violations) {
    v.push_back({{"check", to_string(e.check)}, {"value", e.value}, {"message", e.message}});
  }
  j["violations"] = std::move(v);
  return j;
}

Json greedy_json(const GreedyPlan& plan) {
  Json j;
  j["r"] = plan.r;
  j["w0"] = plan.w0;
  j["edges"] = pair_list(plan.added_edges);
  j["lambda2_trace"] = plan.lambda2_trace;
  return j;
}

Json trajectory_json(const DiffusionTrajectory& t) {
  Json j;
  j["times"] = t.times;
  Json states = Json::array();
  for (const Eigen::VectorXd& x : t.states) states.push_back(vector_json(x));
  j["states"] = std::move(states);
  return j;
}

}  // namespace mlconn::cli
