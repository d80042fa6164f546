#include "mlconn_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <random>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "mlconn/closed_form.hpp"
#include "mlconn/csv.hpp"
#include "mlconn/design_tools.hpp"
#include "mlconn/diffusion.hpp"
#include "mlconn/dual_embed.hpp"
#include "mlconn/error.hpp"
#include "mlconn/network_io.hpp"
#include "mlconn/spectra.hpp"
#include "mlconn/weight_opt.hpp"
#include "mlconn_cli/report.hpp"

namespace mlconn::cli {

namespace {

struct Flags {
  std::string network_path;
  std::optional<double> budget;
  std::string budgets;
  double tol = 1e-4;
  std::uint64_t seed = 42;
  std::string pattern;
  std::string out_dir;
  std::string format = "csv";
  bool no_warm_start = false;

  std::optional<double> l21;
  std::optional<double> l22;
  std::optional<int> n;
  std::optional<int> m;

  std::optional<int> r;
  std::optional<double> w0;

  std::optional<double> t_end;
  int samples = 101;
  std::string x0 = "random";
};

struct Artifacts {
  Json report;
  /// (file name, table); the first table is the primary CSV output.
  std::vector<std::pair<std::string, CsvTable>> tables;
  /// Set when the run finished but a solve stopped short of its tolerance.
  std::optional<std::string> unconverged;
};

Error usage(const std::string& message) { return Error(ErrorKind::kInvalidArgument, message); }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParseError:
    case ErrorKind::kValidationError:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kIndexOutOfRange:
    case ErrorKind::kInvalidWeight:
    case ErrorKind::kInvalidGraph:
    case ErrorKind::kEmptyPattern:
    case ErrorKind::kSizeMismatch:
      return kExitInput;
    default:
      return kExitSolver;
  }
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message,
                  int code, std::optional<int> line = std::nullopt) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  if (line) e["line"] = *line;
  Json j;
  j["error"] = std::move(e);
  j["exit_code"] = code;
  err << dump_report(j);
}

double parse_number(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw usage(what + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

std::vector<double> parse_budgets(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
  if (b == std::string::npos || spec.find(':', b + 1) != std::string::npos) {
    throw usage("--budgets expects start:stop:step, got '" + spec + "'");
  }
  const std::string_view s(spec);
  const double start = parse_number(s.substr(0, a), "--budgets start");
  const double stop = parse_number(s.substr(a + 1, b - a - 1), "--budgets stop");
  const double step = parse_number(s.substr(b + 1), "--budgets step");
  if (start < 0.0 || stop < start || !(step > 0.0)) {
    throw usage("--budgets needs 0 <= start <= stop and step > 0");
  }
  const double span = (stop - start) / step;
  if (span > 1e6) throw usage("--budgets produces more than a million points");
  const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

InterlayerPattern parse_pattern(const std::string& spec, const MultilayerNetwork& net) {
  const int n = net.n();
  const int m = net.m();
  if (spec == "all") return InterlayerPattern::all_pairs(n, m);
  if (spec == "one2one") return InterlayerPattern::one_to_one(n, m);
  if (spec == "explicit") return net.pattern();
  if (spec.rfind("k2k:", 0) == 0) {
    int k = 0;
    const std::string_view tail = std::string_view(spec).substr(4);
    const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), k);
    if (res.ec != std::errc() || res.ptr != tail.data() + tail.size()) {
      throw usage("--pattern k2k:<k> needs an integer k");
    }
    return InterlayerPattern::k_to_k(n, m, k);
  }
  throw usage("--pattern must be all, one2one, k2k:<k> or explicit");
}

MultilayerNetwork load(const Flags& f) {
  if (f.network_path.empty()) throw usage("a network file is required");
  MultilayerNetwork net = load_network(f.network_path);
  if (!f.pattern.empty()) {
    try {
      net = net.with_pattern(parse_pattern(f.pattern, net));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvalidArgument) throw;
      throw Error(ErrorKind::kValidationError, e.what());
    }
  }
  return net;
}

SolverOptions solver_options(const Flags& f) {
  if (!(f.tol > 0.0)) throw usage("--tol must be positive");
  SolverOptions o;
  o.tol_gap = f.tol;
  o.rng_seed = f.seed;
  o.warm_start = !f.no_warm_start;
  return o;
}

double require_budget(const Flags& f) {
  if (!f.budget) throw usage("--budget is required");
  if (!(*f.budget >= 0.0)) throw usage("--budget must be nonnegative");
  return *f.budget;
}

double layer_lambda2(const LayerGraph& g) {
  return g.node_count() > 1 ? algebraic_connectivity(g.laplacian()) : 0.0;
}

Json base_report(const std::string& command, const Flags& f) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  Json opts;
  if (f.budget) opts["budget"] = *f.budget;
  if (!f.budgets.empty()) opts["budgets"] = f.budgets;
  opts["tol"] = f.tol;
  opts["seed"] = f.seed;
  opts["warm_start"] = !f.no_warm_start;
  if (!f.pattern.empty()) opts["pattern"] = f.pattern;
  Json inputs;
  inputs["source"] = f.network_path.empty() ? Json(nullptr) : Json(f.network_path);
  inputs["options"] = std::move(opts);
  j["inputs"] = std::move(inputs);
  return j;
}

void add_layers(Json& report, const MultilayerNetwork& net) {
  const double l21 = layer_lambda2(net.layer1());
  const double l22 = layer_lambda2(net.layer2());
  report["inputs"]["network"] = network_json(net);
  report["layers"] = {{"lambda2", {l21, l22}},
                      {"specific", {specific_connectivity(net.layer1()),
                                    specific_connectivity(net.layer2())}}};
}

Artifacts cmd_analyze(const Flags& f) {
  const MultilayerNetwork net = load(f);
  Artifacts a{base_report("analyze", f), {}, {}};
  add_layers(a.report, net);
  const int n = net.n();
  const int m = net.m();
  const double l21 = layer_lambda2(net.layer1());
  const double l22 = layer_lambda2(net.layer2());
  const ThresholdReport thr = thresholds_allpairs(l21, l22, n, m);
  const SuperdiffusionReport sd = superdiffusion_window(l21, l22, n, m);
  a.report["thresholds"] = thresholds_json(thr);
  a.report["superdiffusion"] = superdiffusion_json(sd);
  a.report["spectra"] = {{"layer1", vector_json(full_spectrum(net.layer1().laplacian()).values)},
                         {"layer2", vector_json(full_spectrum(net.layer2().laplacian()).values)}};
  const double c = f.budget.value_or(1.0);
  const bool regular = regularity_witness(net.pattern(), n, m, c).feasible;
  a.report["regular_feasible"] = regular;

  CsvTable t({"quantity", "value"});
  t.row().cell("n").cell(n);
  t.row().cell("m").cell(m);
  t.row().cell("lambda2_layer1").cell(l21);
  t.row().cell("lambda2_layer2").cell(l22);
  t.row().cell("case").cell(to_string(thr.case_label));
  t.row().cell("c_star").cell(thr.c_star);
  t.row().cell("c_star_star");
  if (thr.c_star_star) {
    t.cell(*thr.c_star_star);
  } else {
    t.cell(std::string_view());
  }
  t.row().cell("superdiffusion").cell(sd.condition_holds ? "true" : "false");
  t.row().cell("regular_feasible").cell(regular ? "true" : "false");

  if (f.budget) {
    const double budget = require_budget(f);
    Json u;
    u["c"] = budget;
    u["upper_bound_F"] = upper_bound_F(n, m, budget);
    if (!net.pattern().empty()) {
      const Spectrum s =
          full_spectrum(build_supra_laplacian(net, uniform_assignment(net.pattern(), budget)));
      u["lambda2"] = s.values(1);
      u["spectrum"] = vector_json(s.values);
      t.row().cell("uniform_lambda2").cell(s.values(1));
    }
    a.report["uniform"] = std::move(u);
    t.row().cell("upper_bound_F").cell(upper_bound_F(n, m, budget));
  }
  a.tables.emplace_back("analyze.csv", std::move(t));
  return a;
}

Artifacts cmd_optimize(const Flags& f) {
  const MultilayerNetwork net = load(f);
  const double c = require_budget(f);
  const OptimizationResult r = maximize_lambda2(net, c, solver_options(f));
  Artifacts a{base_report("optimize", f), {}, {}};
  add_layers(a.report, net);
  a.report["upper_bound_F"] = upper_bound_F(net.n(), net.m(), c);
  a.report["results"] = Json::array({result_json(r)});
  CsvTable t({"i", "j", "weight"});
  for (const InterlinkWeight& e : r.assignment.entries) t.row().cell(e.i).cell(e.j).cell(e.weight);
  a.tables.emplace_back("weights.csv", std::move(t));
  if (!r.converged) a.unconverged = "duality gap " + format_real(r.gap) + " above tolerance";
  return a;
}

std::vector<std::pair<double, OptimizationResult>> independent_sweep(
    const MultilayerNetwork& net, const std::vector<double>& budgets, const SolverOptions& o) {
  std::vector<std::pair<double, OptimizationResult>> out;
  out.reserve(budgets.size());
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < budgets.size(); start += width) {
    std::vector<std::future<OptimizationResult>> jobs;
    const std::size_t stop = std::min(budgets.size(), start + width);
    for (std::size_t k = start; k < stop; ++k) {
      jobs.push_back(std::async(std::launch::async,
                                [&net, &o, c = budgets[k]] { return maximize_lambda2(net, c, o); }));
    }
    for (std::size_t k = start; k < stop; ++k) out.emplace_back(budgets[k], jobs[k - start].get());
  }
  return out;
}

Artifacts cmd_sweep(const Flags& f) {
  const MultilayerNetwork net = load(f);
  if (f.budgets.empty()) throw usage("--budgets start:stop:step is required");
  const std::vector<double> budgets = parse_budgets(f.budgets);
  const SolverOptions o = solver_options(f);
  const auto points = o.warm_start ? sweep_budget(net, budgets, o) : independent_sweep(net, budgets, o);

  Artifacts a{base_report("sweep", f), {}, {}};
  add_layers(a.report, net);
  a.report["thresholds"] = thresholds_json(
      thresholds_allpairs(layer_lambda2(net.layer1()), layer_lambda2(net.layer2()), net.n(), net.m()));
  Json results = Json::array();
  CsvTable t({"c", "lambda2_star", "gap", "mode", "multiplicity"});
  int stalled = 0;
  for (const auto& [c, r] : points) {
    results.push_back(result_json(r));
    t.row().cell(c).cell(r.lambda2_star).cell(r.gap).cell(to_string(r.mode)).cell(r.fiedler_multiplicity);
    if (!r.converged) ++stalled;
  }
  a.report["results"] = std::move(results);
  a.tables.emplace_back("sweep.csv", std::move(t));
  if (stalled) a.unconverged = std::to_string(stalled) + " sweep point(s) did not reach the gap tolerance";
  return a;
}

Artifacts cmd_embed(const Flags& f) {
  const MultilayerNetwork net = load(f);
  const double c = require_budget(f);
  const OptimizationResult r = maximize_lambda2(net, c, solver_options(f));
  if (!r.converged) {
    throw Error(ErrorKind::kUnconverged, "optimization did not reach the gap tolerance");
  }
  const EmbeddingSolution s = recover_embedding(net, r);
  const EmbeddingReport checks = verify_embedding(net, c, s);

  Artifacts a{base_report("embed", f), {}, {}};
  add_layers(a.report, net);
  a.report["results"] = Json::array({result_json(r)});
  a.report["embedding"] = embedding_json(s, checks);

  std::vector<std::string> header{"node", "layer", "index"};
  const Eigen::Index d = s.coordinates.cols();
  for (Eigen::Index k = 0; k < d; ++k) header.push_back("u" + std::to_string(k + 1));
  header.emplace_back("nu");
  CsvTable t(std::move(header));
  for (int v = 0; v < net.size(); ++v) {
    const bool first = v < net.n();
    t.row().cell(v).cell(first ? 1 : 2).cell(first ? v : v - net.n());
    for (Eigen::Index k = 0; k < d; ++k) t.cell(s.coordinates(v, k));
    t.cell(s.nu);
  }
  a.tables.emplace_back("embedding.csv", std::move(t));
  return a;
}

Artifacts cmd_greedy(const Flags& f) {
  const MultilayerNetwork net = load(f);
  if (!f.r) throw usage("--r is required");
  const int r = *f.r;
  double w0 = 0.0;
  if (f.w0) {
    w0 = *f.w0;
  } else if (f.budget) {
    if (r <= 0) throw usage("--r must be positive to split --budget");
    w0 = require_budget(f) / r;
  } else {
    throw usage("give --w0 or --budget");
  }
  const GreedyPlan plan = greedy_interlinks(net, r, w0);

  Artifacts a{base_report("greedy", f), {}, {}};
  add_layers(a.report, net);
  a.report["greedy"] = greedy_json(plan);
  CsvTable t({"step", "i", "j", "weight", "lambda2"});
  for (std::size_t k = 0; k < plan.added_edges.size(); ++k) {
    t.row()
        .cell(static_cast<int>(k + 1))
        .cell(plan.added_edges[k].i)
        .cell(plan.added_edges[k].j)
        .cell(plan.w0)
        .cell(plan.lambda2_trace[k]);
  }
  a.tables.emplace_back("greedy.csv", std::move(t));
  return a;
}

Eigen::VectorXd initial_state(const Flags& f, int n, int m) {
  Eigen::VectorXd x(n + m);
  if (f.x0 == "split") {
    x.head(n).setOnes();
    x.tail(m).setConstant(-1.0);
  } else if (f.x0 == "random") {
    std::mt19937_64 rng(f.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = u(rng);
  } else {
    throw usage("--x0 must be random or split");
  }
  return x;
}

Artifacts cmd_simulate(const Flags& f) {
  const MultilayerNetwork net = load(f);
  const double c = require_budget(f);
  if (f.samples < 3) throw usage("--samples must be at least 3");
  const OptimizationResult r = maximize_lambda2(net, c, solver_options(f));
  const SupraLaplacian lap = build_supra_laplacian(net, r.assignment);
  const double t_end = f.t_end.value_or(r.lambda2_star > 0.0 ? 10.0 / r.lambda2_star : 10.0);
  const Eigen::VectorXd x0 = initial_state(f, net.n(), net.m());
  const DiffusionTrajectory traj = simulate(lap, x0, uniform_times(t_end, f.samples));

  Artifacts a{base_report("simulate", f), {}, {}};
  add_layers(a.report, net);
  a.report["inputs"]["options"]["t_end"] = t_end;
  a.report["inputs"]["options"]["samples"] = f.samples;
  a.report["inputs"]["options"]["x0"] = f.x0;
  a.report["results"] = Json::array({result_json(r)});
  Json tj = trajectory_json(traj);
  try {
    tj["estimated_rate"] = estimate_rate(traj);
  } catch (const Error&) {
    tj["estimated_rate"] = nullptr;
  }
  a.report["trajectory"] = std::move(tj);

  std::vector<std::string> header{"t", "spread_layer1", "spread_layer2"};
  for (int v = 0; v < net.size(); ++v) header.push_back("x" + std::to_string(v));
  CsvTable t(std::move(header));
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const Eigen::VectorXd& x = traj.states[k];
    t.row()
        .cell(traj.times[k])
        .cell(within_layer_spread(x, 0, net.n()))
        .cell(within_layer_spread(x, net.n(), net.m()));
    for (Eigen::Index v = 0; v < x.size(); ++v) t.cell(x(v));
  }
  a.tables.emplace_back("trajectory.csv", std::move(t));
  if (!r.converged) a.unconverged = "duality gap " + format_real(r.gap) + " above tolerance";
  return a;
}

Artifacts cmd_thresholds(const Flags& f) {
  const bool params = f.l21 || f.l22 || f.n || f.m;
  if (params && !f.network_path.empty()) {
    throw usage("give either a network file or --l21/--l22/--n/--m, not both");
  }
  Artifacts a{base_report("thresholds", f), {}, {}};
  double l21 = 0.0;
  double l22 = 0.0;
  int n = 0;
  int m = 0;
  std::optional<MultilayerNetwork> net;
  if (params) {
    if (!(f.l21 && f.l22 && f.n && f.m)) throw usage("--l21, --l22, --n and --m go together");
    l21 = *f.l21;
    l22 = *f.l22;
    n = *f.n;
    m = *f.m;
    if (n < 1 || m < 1) throw usage("--n and --m must be positive");
    if (l21 < 0.0 || l22 < 0.0) throw usage("layer connectivities must be nonnegative");
    a.report["inputs"]["parameters"] = {{"l21", l21}, {"l22", l22}, {"n", n}, {"m", m}};
  } else {
    net = load(f);
    add_layers(a.report, *net);
    l21 = layer_lambda2(net->layer1());
    l22 = layer_lambda2(net->layer2());
    n = net->n();
    m = net->m();
  }
  const ThresholdReport thr = thresholds_allpairs(l21, l22, n, m);
  a.report["closed_form"] = thresholds_json(thr);

  CsvTable t({"method", "case", "c_star", "c_star_star"});
  t.row().cell("closed_form").cell(to_string(thr.case_label)).cell(thr.c_star);
  if (thr.c_star_star) {
    t.cell(*thr.c_star_star);
  } else {
    t.cell(std::string_view());
  }
  if (net) {
    const double numeric = detect_threshold_numeric(*net, solver_options(f));
    a.report["numeric"] = {{"pattern", to_string(net->pattern().kind())}, {"c_star", numeric}};
    t.row().cell("numeric").cell(std::string_view()).cell(numeric).cell(std::string_view());
    if (net->pattern().kind() == PatternKind::kKToK && n == m) {
      const auto [lo, hi] = ktok_threshold_bounds(std::min(l21, l22), n);
      a.report["ktok_bracket"] = {lo, hi};
    }
  }
  a.tables.emplace_back("thresholds.csv", std::move(t));
  return a;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path.string() + "'");
}

void emit(const Artifacts& a, const Flags& f, std::ostream& out) {
  if (!f.out_dir.empty()) {
    const std::filesystem::path dir(f.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::kInvalidArgument, "cannot create '" + f.out_dir + "'");
    write_file(dir / "report.json", dump_report(a.report));
    for (const auto& [name, table] : a.tables) write_file(dir / name, table.str());
  }
  if (f.format == "json") {
    out << dump_report(a.report);
  } else if (!a.tables.empty()) {
    out << a.tables.front().second.str();
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app("Interlink weight design for two-layer networks", "mlconn");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  const auto common = [&f](CLI::App* sub, bool needs_network) {
    auto* net = sub->add_option("network", f.network_path, "Network description file");
    if (needs_network) net->required()->check(CLI::ExistingFile);
    sub->add_option("--tol", f.tol, "Duality-gap tolerance")->capture_default_str();
    sub->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    sub->add_option("--pattern", f.pattern, "Override pattern: all|one2one|k2k:<k>|explicit");
    sub->add_option("--out", f.out_dir, "Directory for report.json and CSV artifacts");
    sub->add_option("--format", f.format, "Standard output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--budget", f.budget, "Interlink budget c");
    sub->add_flag("--no-warm-start", f.no_warm_start, "Solve budgets independently");
  };

  common(app.add_subcommand("analyze", "Layer spectra, thresholds and super-diffusion window"), true);
  common(app.add_subcommand("optimize", "Maximize lambda2 at one budget"), true);
  auto* sweep = app.add_subcommand("sweep", "Maximize lambda2 over a budget grid");
  common(sweep, true);
  sweep->add_option("--budgets", f.budgets, "start:stop:step")->required();
  common(app.add_subcommand("embed", "Optimal weights and their dual embedding"), true);
  auto* greedy = app.add_subcommand("greedy", "Greedy interlink placement");
  common(greedy, true);
  greedy->add_option("--r", f.r, "Number of interlinks")->required();
  greedy->add_option("--w0", f.w0, "Weight per interlink (default budget / r)");
  auto* sim = app.add_subcommand("simulate", "Diffusion under optimal weights");
  common(sim, true);
  sim->add_option("--t-end", f.t_end, "Final time (default 10 / lambda2*)");
  sim->add_option("--samples", f.samples, "Number of output times")->capture_default_str();
  sim->add_option("--x0", f.x0, "Initial state: random|split")->capture_default_str();
  auto* thr = app.add_subcommand("thresholds", "Closed-form and numeric transition budgets");
  common(thr, false);
  thr->add_option("--l21", f.l21, "lambda2 of layer 1");
  thr->add_option("--l22", f.l22, "lambda2 of layer 2");
  thr->add_option("--n", f.n, "Layer 1 size");
  thr->add_option("--m", f.m, "Layer 2 size");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what(), kExitInput);
    return kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Artifacts a;
    if (command == "analyze") a = cmd_analyze(f);
    else if (command == "optimize") a = cmd_optimize(f);
    else if (command == "sweep") a = cmd_sweep(f);
    else if (command == "embed") a = cmd_embed(f);
    else if (command == "greedy") a = cmd_greedy(f);
    else if (command == "simulate") a = cmd_simulate(f);
    else a = cmd_thresholds(f);
    emit(a, f, out);
    if (a.unconverged) {
      report_error(err, to_string(ErrorKind::kUnconverged), *a.unconverged, kExitSolver);
      return kExitSolver;
    }
    return kExitOk;
  } catch (const ParseError& e) {
    report_error(err, to_string(e.kind()), e.what(), kExitInput, e.line());
    return kExitInput;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, to_string(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what(), kExitSolver);
    return kExitSolver;
  }
}

}  // namespace mlconn::cli
