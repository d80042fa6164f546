// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mlconn/closed_form.hpp"
#include "mlconn/design_tools.hpp"
#include "mlconn/diffusion.hpp"
#include "mlconn/dual_embed.hpp"
#include "mlconn/error.hpp"
#include "mlconn/generators.hpp"
#include "mlconn/spectra.hpp"
#include "mlconn/weight_opt.hpp"
#include "oracles.hpp"

namespace {

using namespace mlconn;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Every optimization result produced anywhere in this run, for the global
// bound check.
struct Solved {
  MultilayerNetwork network;
  OptimizationResult result;
};
std::vector<Solved> g_solved;

OptimizationResult solve(const MultilayerNetwork& net, double c) {
  OptimizationResult r = maximize_lambda2(net, c);
  g_solved.push_back({net, r});
  return r;
}

double layer_lambda2(const LayerGraph& g) { return fiedler(g.laplacian()).lambda2; }

Outcome threshold_reproduction() {
  struct Row {
    const char* label;
    double l21, l22;
    int n, m;
    double c_star;
    double c_star_star;  // 0 when absent
  };
  const Row rows[] = {{"30+15 sparse", 0.6798, 0.0712, 30, 15, 2.1373, 18.2554},
                      {"30+10", 0.9123, 0.6546, 30, 10, 9.1235, 0.0},
                      {"20+30", 1.3902, 0.4766, 20, 30, 9.5320, 0.0},
                      {"30+15 tight", 0.5444, 0.0828, 30, 15, 2.4834, 13.8486}};
  Outcome o{true, ""};
  double slowest = 0.0;
  for (const Row& r : rows) {
    const auto t0 = Clock::now();
    const ThresholdReport rep = thresholds_allpairs(r.l21, r.l22, r.n, r.m);
    slowest = std::max(slowest, seconds_since(t0));
    const double e1 = std::abs(rep.c_star - r.c_star);
    o.detail += std::string(r.label) + " c*=" + fmt("%.4f", rep.c_star) + fmt(" (err %.1e)", e1);
    if (e1 > 2e-3) o.pass = false;
    if (r.c_star_star > 0.0) {
      const double e2 = rep.c_star_star ? std::abs(*rep.c_star_star - r.c_star_star) : INFINITY;
      o.detail += " c**=" + (rep.c_star_star ? fmt("%.4f", *rep.c_star_star) : std::string("none")) +
                  fmt(" (err %.1e)", e2);
      if (e2 > 2e-3) o.pass = false;
    }
    o.detail += "; ";
  }
  if (slowest >= 1e-3) o.pass = false;
  o.detail += fmt("slowest %.1e s", slowest);
  return o;
}

Outcome linear_regime() {
  const auto t0 = Clock::now();
  const LayerGraph g1 =
      first_connected([](std::uint64_t s) { return random_geometric(30, 0.35, s); }, 20260);
  const LayerGraph g2 =
      first_connected([](std::uint64_t s) { return random_geometric(15, 0.45, s); }, 40520);
  const MultilayerNetwork net(g1, g2, InterlayerPattern::all_pairs(30, 15));
  const double c_star = detect_threshold_numeric(net);
  double worst = 0.0;
  bool analytic = true;
  for (int k = 1; k <= 10; ++k) {
    const double c = c_star * k / 11.0;
    const OptimizationResult r = solve(net, c);
    const double f = upper_bound_F(30, 15, c);
    worst = std::max(worst, std::abs(r.lambda2_star - f) / f);
    analytic = analytic && r.mode == SolveMode::kAnalytic;
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-4 && analytic && elapsed < 10.0,
          fmt("numeric c*=%.5f", c_star) + fmt(", max rel err %.1e", worst) +
              (analytic ? ", all analytic" : ", NOT all analytic") + fmt(", %.2f s", elapsed)};
}

std::vector<std::pair<MultilayerNetwork, double>> small_instances() {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> size(2, 5);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> budget(0.5, 5.0);
  std::vector<std::pair<MultilayerNetwork, double>> out;
  while (out.size() < 20) {
    const int n = size(rng);
    const int m = size(rng);
    const int p = std::min(count(rng), n * m);
    std::vector<NodePair> all;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) all.push_back({i, j});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(p));
    out.emplace_back(MultilayerNetwork(testing::random_connected_layer(n, 0.6, 0.3, 2.0, rng),
                                       testing::random_connected_layer(m, 0.6, 0.3, 2.0, rng),
                                       InterlayerPattern::explicit_pairs(n, m, all)),
                     budget(rng));
  }
  return out;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& [net, c] : small_instances()) {
    const OptimizationResult r = solve(net, c);
    const OptimizationResult o = oracle_grid_optimum(net, c, 0.01);
    worst = std::max(worst, std::abs(r.lambda2_star - o.lambda2_star));
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-3 && elapsed < 300.0,
          fmt("20 instances, max |solver - grid| = %.1e", worst) + fmt(", %.1f s", elapsed)};
}

Outcome duality_certificate() {
  std::vector<std::pair<MultilayerNetwork, double>> cases = small_instances();
  const MultilayerNetwork sparse_second = testing::geometric_instance(30, 15, 0.6798, 0.0712, 1);
  for (double c : {1.0, 3.0, 10.0, 18.0, 30.0}) cases.emplace_back(sparse_second, c);
  std::mt19937_64 rng(4242);
  for (int k = 0; k < 4; ++k) {
    const MultilayerNetwork net(testing::random_connected_layer(6, 0.5, 0.5, 1.5, rng),
                                testing::random_connected_layer(5, 0.5, 0.5, 1.5, rng),
                                InterlayerPattern::all_pairs(6, 5));
    for (double c : {2.0, 8.0, 25.0}) cases.emplace_back(net, c);
  }
  int checked = 0;
  int failures = 0;
  double worst_gap = 0.0;
  double worst_obj = 0.0;
  double worst_residual = 0.0;
  std::string first_problem;
  for (const auto& [net, c] : cases) {
    const OptimizationResult r = solve(net, c);
    if (!r.converged) continue;
    ++checked;
    const double scale = std::max(1.0, r.lambda2_star);
    const double gap = std::abs(r.certified_upper - r.lambda2_star) / scale;
    worst_gap = std::max(worst_gap, gap);
    try {
      const EmbeddingSolution s = recover_embedding(net, r);
      const double obj = std::abs(s.objective - r.lambda2_star) / scale;
      worst_obj = std::max(worst_obj, obj);
      const Eigen::MatrixXd l = build_supra_laplacian(net, r.assignment).matrix;
      for (Eigen::Index k = 0; k < s.coordinates.cols(); ++k) {
        const Eigen::VectorXd axis = s.coordinates.col(k);
        if (axis.norm() < 1e-8) continue;
        const Eigen::VectorXd unit = axis / axis.norm();
        worst_residual = std::max(worst_residual, (l * unit - r.lambda2_star * unit).norm());
      }
      if (gap > 1e-4 || obj > 1e-5) ++failures;
    } catch (const Error& e) {
      ++failures;
      if (first_problem.empty()) first_problem = std::string(" first error: ") + e.what();
    }
  }
  const bool ok = failures == 0 && worst_residual <= 1e-6 && checked > 0;
  return {ok, std::to_string(checked) + " converged solves" + fmt(", max rel gap %.1e", worst_gap) +
                  fmt(", max objective dev %.1e", worst_obj) + fmt(", max eigen-residual %.1e", worst_residual) +
                  first_problem};
}

Outcome clumped_embedding() {
  std::mt19937_64 rng(5150);
  std::vector<MultilayerNetwork> nets;
  nets.push_back(testing::geometric_instance(30, 15, 0.6798, 0.0712, 1));
  nets.emplace_back(testing::random_connected_layer(10, 0.3, 0.5, 1.5, rng),
                    testing::random_connected_layer(10, 0.3, 0.5, 1.5, rng), InterlayerPattern::k_to_k(10, 10, 2));
  nets.emplace_back(testing::random_connected_layer(8, 0.4, 0.5, 1.5, rng),
                    testing::random_connected_layer(8, 0.4, 0.5, 1.5, rng), InterlayerPattern::one_to_one(8, 8));
  bool ok = true;
  double worst_var = 0.0;
  double worst_coord = 0.0;
  int max_dim = 0;
  for (const MultilayerNetwork& net : nets) {
    const int n = net.n();
    const int m = net.m();
    const double c = 0.5 * detect_threshold_numeric(net);
    const EmbeddingSolution s = recover_embedding(net, solve(net, c));
    const int dim = embedding_dimension(s);
    max_dim = std::max(max_dim, dim);
    if (dim != 1) {
      ok = false;
      continue;
    }
    worst_var = std::max({worst_var, within_layer_variance(s, 1), within_layer_variance(s, 2)});
    const double h = 1.0 / std::sqrt(double(n) * m * (n + m));
    const double sign = s.coordinates(0, 0) >= 0 ? 1.0 : -1.0;
    for (int i = 0; i < n + m; ++i) {
      const double expect = i < n ? m * h : -n * h;
      worst_coord = std::max(worst_coord, std::abs(sign * s.coordinates(i, 0) - expect));
    }
  }
  ok = ok && worst_var <= 1e-8 && worst_coord <= 1e-6;
  return {ok, "all-pairs, 2-to-2, one-to-one at 0.5 c*: max dim " + std::to_string(max_dim) +
                  fmt(", max variance %.1e", worst_var) + fmt(", max coordinate err %.1e", worst_coord)};
}

Outcome perturbation_slope() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Spec {
    int n, m;
    double l21, l22;
  };
  // Case1: n > m, s1 > s2; Case2: n >= m, s1 < s2; Case3: n <= m, s1 > s2.
  const Spec specs[] = {{12, 8, 1.2, 0.3}, {10, 6, 0.9, 0.2}, {14, 9, 1.5, 0.4}, {12, 6, 0.4, 0.9},
                        {10, 10, 0.3, 0.8}, {15, 8, 0.5, 1.1}, {8, 12, 1.0, 0.5}, {6, 9, 1.4, 0.6},
                        {9, 9, 1.1, 0.4}, {7, 11, 0.9, 0.3}};
  double lo = INFINITY;
  double hi = -INFINITY;
  std::string cases;
  for (const Spec& sp : specs) {
    const LayerGraph g1 = scale_to_lambda2(testing::random_connected_layer(sp.n, 0.5, 0.5, 1.5, rng), sp.l21);
    const LayerGraph g2 = scale_to_lambda2(testing::random_connected_layer(sp.m, 0.5, 0.5, 1.5, rng), sp.l22);
    const MultilayerNetwork net(g1, g2, InterlayerPattern::all_pairs(sp.n, sp.m));
    const ThresholdReport thr = thresholds_allpairs(sp.l21, sp.l22, sp.n, sp.m);
    cases += to_string(thr.case_label).back();
    // Alternate between the linear regime and the first post-threshold regime.
    const bool past = u(rng) < 0.5;
    const double upper = thr.c_star_star ? *thr.c_star_star : 2.0 * thr.c_star;
    const double c0 = past ? 0.5 * (thr.c_star + upper) : 0.5 * thr.c_star;
    const WeightAssignment base = uniform_assignment(net.pattern(), c0);
    const Eigen::MatrixXd wp = testing::random_assignment(net.pattern(), 1.0, rng).weight_matrix(sp.n, sp.m);
    const PerturbationInput in = make_perturbation(net, base, wp, 1.0);
    double slope = rayleigh_increment(in);
    if (past) {
      // Above c* the lambda2 mode sits on the layer of smaller specific
      // connectivity; the increment is the layer form.
      const bool layer2 = thr.case_label != TransitionCase::kCase2 &&
                          !(thr.case_label == TransitionCase::kCase1 && sp.n < sp.m);
      slope = layer2 ? post_threshold_increment(fiedler(g2.laplacian()).vector, wp, LayerSide::kLayer2)
                     : post_threshold_increment(fiedler(g1.laplacian()).vector, wp, LayerSide::kLayer1);
    }
    const auto error_at = [&](double eps) {
      const Eigen::MatrixXd w = base.weight_matrix(sp.n, sp.m) + eps * wp;
      Eigen::VectorXd flat(sp.n * sp.m);
      for (int i = 0; i < sp.n; ++i)
        for (int j = 0; j < sp.m; ++j) flat(i * sp.m + j) = w(i, j);
      const double exact = testing::reference_lambda2(
          build_supra_laplacian(net, WeightAssignment::from_vector(net.pattern(), flat, c0 + eps)).matrix);
      return exact - (in.base_eigenvalue + eps * slope);
    };
    const double eps = 1e-4 * c0;
    const double ratio = error_at(eps) / error_at(eps / 2);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo >= 3.6 && hi <= 4.4,
          "cases " + cases + fmt(", error ratio range [%.3f", lo) + fmt(", %.3f]", hi) + " (want ~4)"};
}

Outcome ktok_bracket() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  bool ok = true;
  std::string detail;
  for (int n : {10, 20}) {
    const LayerGraph g1 = testing::random_connected_layer(n, 0.3, 1.0, 1.0, rng);
    const LayerGraph g2 = testing::random_connected_layer(n, 0.3, 1.0, 1.0, rng);
    const double l0 = std::min(layer_lambda2(g1), layer_lambda2(g2));
    const auto [lo, hi] = ktok_threshold_bounds(l0, n);
    for (int k : {1, 2, 3}) {
      const MultilayerNetwork net(g1, g2, InterlayerPattern::k_to_k(n, n, k));
      const double c = detect_threshold_numeric(net);
      const bool inside = c >= lo && c <= hi;
      ok = ok && inside;
      detail += "n=" + std::to_string(n) + ",k=" + std::to_string(k) + fmt(": %.4f", c) +
                fmt(" in [%.4f", lo) + fmt(", %.4f]", hi) + (inside ? "" : " OUTSIDE") + "; ";
    }
  }
  detail += fmt("%.1f s", seconds_since(t0));
  return {ok, detail};
}

Outcome superdiffusion_demo() {
  const LayerGraph g1 = cycle_graph(6);
  const LayerGraph g2(6, {{1, 4, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {0, 4, 1.0}, {4, 5, 1.0}});
  const double l1 = layer_lambda2(g1);
  const double l2 = layer_lambda2(g2);
  const bool avg = average_laplacian_condition(g1, g2);
  const MultilayerNetwork net(g1, g2, InterlayerPattern::all_pairs(6, 6));
  const double c = 10.0;
  const GreedyPlan plan = greedy_interlinks(net, 7, c / 7);
  const double final_l2 = plan.lambda2_trace.back();
  const bool ok = !avg && final_l2 > std::max(l1, l2);
  return {ok, fmt("layer lambda2 (%.4f", l1) + fmt(", %.4f)", l2) +
                  (avg ? ", average condition TRUE" : ", average condition false") +
                  fmt(", greedy r=7 c=10 lambda2 = %.4f", final_l2)};
}

Outcome diffusion_phases() {
  const MultilayerNetwork net = testing::geometric_instance(30, 15, 0.6798, 0.0712, 1);
  const ThresholdReport thr =
      thresholds_allpairs(layer_lambda2(net.layer1()), layer_lambda2(net.layer2()), 30, 15);
  if (thr.case_label != TransitionCase::kCase1) return {false, "instance is not Case1"};
  Eigen::VectorXd x0(45);
  x0.head(30).setConstant(1.0);
  x0.tail(15).setConstant(-1.0);
  const auto spreads = [&](double c) {
    const OptimizationResult r = solve(net, c);
    const DiffusionTrajectory t =
        simulate(build_supra_laplacian(net, r.assignment), x0, uniform_times(20.0 / r.lambda2_star, 400));
    std::pair<double, double> s{0.0, 0.0};
    for (const auto& x : t.states) {
      s.first = std::max(s.first, within_layer_spread(x, 0, 30));
      s.second = std::max(s.second, within_layer_spread(x, 30, 15));
    }
    return s;
  };
  const auto a = spreads(0.5 * thr.c_star);
  const auto b = spreads(0.5 * (thr.c_star + *thr.c_star_star));
  const auto c = spreads(1.5 * *thr.c_star_star);
  // Layer 2 has the smaller specific connectivity here.
  const bool ok = a.first < 1e-6 && a.second < 1e-6 && b.first < 1e-6 && b.second > 1e-3 &&
                  c.first > 1e-3 && c.second < 1e-6;
  return {ok, fmt("max spread (G1, G2): below c* (%.1e", a.first) + fmt(", %.1e)", a.second) +
                  fmt("; between (%.1e", b.first) + fmt(", %.1e)", b.second) +
                  fmt("; above c** (%.1e", c.first) + fmt(", %.1e)", c.second)};
}

Outcome global_bound() {
  double worst = -INFINITY;
  for (const Solved& s : g_solved) {
    const double f = upper_bound_F(s.network.n(), s.network.m(), s.result.assignment.budget);
    worst = std::max(worst, s.result.lambda2_star - f);
  }
  std::mt19937_64 rng(99);
  const MultilayerNetwork net(testing::random_connected_layer(7, 0.5, 0.5, 1.5, rng),
                              testing::random_connected_layer(5, 0.5, 0.5, 1.5, rng),
                              InterlayerPattern::all_pairs(7, 5));
  std::uniform_real_distribution<double> budget(0.1, 20.0);
  int strict = 0;
  for (int k = 0; k < 100; ++k) {
    const WeightAssignment w = testing::random_assignment(net.pattern(), budget(rng), rng);
    const double l2 = fiedler(build_supra_laplacian(net, w).matrix).lambda2;
    const LayerFiedlerBounds b = layer_fiedler_bounds(net, w);
    if (b.bound1 > l2 && b.bound2 > l2) ++strict;
    worst = std::max(worst, l2 - upper_bound_F(7, 5, w.total()));
  }
  return {worst <= 1e-9 && strict == 100,
          std::to_string(g_solved.size()) + " solver results + 100 draws" +
              fmt(", max lambda2 - F = %.1e", worst) + ", layer bounds strict on " + std::to_string(strict) +
              "/100"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"threshold reproduction", threshold_reproduction},
      {"linear-regime optimality", linear_regime},
      {"oracle equivalence", oracle_equivalence},
      {"duality certificate", duality_certificate},
      {"clumped embedding", clumped_embedding},
      {"perturbation slope", perturbation_slope},
      {"k-to-k bracket", ktok_bracket},
      {"super-diffusion demonstration", superdiffusion_demo},
      {"diffusion phases", diffusion_phases},
      {"global bound", global_bound},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
