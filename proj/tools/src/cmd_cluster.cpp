#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "qpgc/errors.hpp"
#include "solver_config.hpp"

namespace qpgc::cli {
namespace {

struct ClusterOptions {
  std::string graph;
  std::string distance;
  bool one_based = false;
  std::string method = "qp";
  std::size_t k = 0;
  std::string metric = "jaccard";
  std::string neighborhood = "open";
  std::string params;
  std::string config;
  std::string truth;
  std::string out;
  bool save_relaxed = false;

  // Solver overrides; each maps onto the config key of the same name.
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> restarts, max_outer, max_inner, threads, memory_m;
  std::optional<double> theta0, theta_bar, theta_growth, feas_threshold, subproblem_eps, support_stop;
  std::optional<double> theta, lambda0, lambda_min, eta, gamma, tol, box_upper;
  std::optional<std::string> backend;
};

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

json flag_overrides(const ClusterOptions& o, bool qp) {
  json j = json::object();
  put(j, "seed", o.seed);
  put(j, "restarts", o.restarts);
  put(j, "max_outer", o.max_outer);
  put(j, "max_inner", o.max_inner);
  put(j, "threads", o.threads);
  put(j, "box_upper", o.box_upper);
  put(j, "theta_growth", o.theta_growth);
  put(j, "backend", o.backend);
  if (qp) {
    put(j, "theta0", o.theta0);
    put(j, "theta_bar", o.theta_bar);
    put(j, "feas_threshold", o.feas_threshold);
    put(j, "subproblem_eps", o.subproblem_eps);
    if (o.support_stop) j["support_stop_fraction"] = *o.support_stop > 0.0 ? json(*o.support_stop) : json(nullptr);
    if (o.theta || o.lambda0 || o.lambda_min || o.eta || o.gamma || o.tol || o.memory_m) {
      throw UsageError("--theta/--lambda0/--lambda-min/--eta/--gamma/--tol/--memory apply to --method qpr");
    }
  } else {
    put(j, "theta_fixed", o.theta);
    put(j, "lambda0", o.lambda0);
    put(j, "lambda_min", o.lambda_min);
    put(j, "eta", o.eta);
    put(j, "gamma", o.gamma);
    put(j, "tol", o.tol);
    put(j, "memory_m", o.memory_m);
    if (o.theta0 || o.theta_bar || o.feas_threshold || o.subproblem_eps || o.support_stop) {
      throw UsageError("--theta0/--theta-bar/--feas-threshold/--eps/--support-stop apply to --method qp");
    }
  }
  return j;
}

DistanceMatrix load_distance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return read_distance_binary(in);
}

int run_cluster(const ClusterOptions& o, const Invocation& inv) {
  if (o.graph.empty() && o.distance.empty()) throw UsageError("cluster needs --graph or --distance");
  if (o.method != "qp" && o.method != "qpr") throw UsageError("unknown method '" + o.method + "' (qp|qpr)");
  if (o.k == 0) throw UsageError("--k must be >= 1");
  const bool qp = o.method == "qp";

  RunManifest manifest("cluster", inv.argc, inv.argv);
  std::optional<Graph> graph;
  if (!o.graph.empty()) {
    graph = load_graph(o.graph, o.one_based);
    manifest.add_input(o.graph);
  }

  // Precedence: built-in defaults < named parameter set < config file < flags.
  json config_file = json::object();
  if (!o.config.empty()) {
    config_file = read_json_file(o.config);
    manifest.add_input(o.config);
  }
  const json flags = flag_overrides(o, qp);
  const std::string params = o.params.empty() ? "default" : o.params;

  DistanceMatrix d;
  if (!o.distance.empty()) {
    d = load_distance(o.distance);
    manifest.add_input(o.distance);
    if (graph && graph->num_vertices() != d.size()) {
      throw InputError("graph has " + std::to_string(graph->num_vertices()) + " vertices but the distance dump has " +
                       std::to_string(d.size()));
    }
  } else {
    DistanceOptions dopt;
    dopt.neighborhood = parse_neighborhood(o.neighborhood);
    dopt.threads = flags.contains("threads") ? flags["threads"].get<std::size_t>() : 0;
    d = compute_distance(*graph, parse_metric_or_throw(o.metric), dopt);
  }

  std::optional<Clustering> truth;
  if (!o.truth.empty()) {
    truth = Clustering::from_labels(read_labels_file(o.truth));
    manifest.add_input(o.truth);
    if (truth->size() != d.size()) throw InputError("truth labels do not match the vertex count");
  }

  SolveResult result;
  json resolved;
  if (qp) {
    QpGcConfig cfg = qp_preset(params);
    apply_json(cfg, config_file);
    apply_json(cfg, flags);
    cfg.validate();
    resolved = to_json(cfg);
    manifest.set_seed(cfg.seed);
    result = solve_qp_gc(d, o.k, cfg);
  } else {
    QprGcConfig cfg = qpr_preset(params);
    apply_json(cfg, config_file);
    apply_json(cfg, flags);
    cfg.validate();
    resolved = to_json(cfg);
    manifest.set_seed(cfg.seed);
    result = solve_qpr_gc(d, o.k, cfg);
  }

  manifest.config() = {{"method", o.method},
                       {"k", o.k},
                       {"metric", o.distance.empty() ? o.metric : std::string(to_string(d.metric()))},
                       {"neighborhood", o.distance.empty() ? o.neighborhood
                                                           : (d.neighborhood() == Neighborhood::kOpen ? "open" : "closed")},
                       {"params", params},
                       {"solver", resolved}};

  const std::string labels_path = o.out + ".labels";
  const std::string result_path = o.out + ".result.json";
  const std::string manifest_path = o.out + ".manifest.json";

  std::ostringstream ls;
  write_labels(ls, result.labels);
  write_text_file(labels_path, ls.str());

  json rj = to_json(result, o.save_relaxed);
  rj["method"] = o.method;
  rj["k"] = o.k;
  const Clustering predicted(result.labels, o.k);
  rj["nonempty_clusters"] = predicted.nonempty_clusters();
  if (truth) rj["misclassified"] = misclassified_count(predicted, *truth);
  if (graph && graph->num_vertices() >= 2) rj["quality"] = to_json(quality_report(*graph, predicted));
  write_json_file(result_path, rj);

  manifest.add_output(labels_path);
  manifest.add_output(result_path);
  manifest.write(manifest_path);

  std::cout << o.method << ": objective " << result.objective << ", " << predicted.nonempty_clusters()
            << " clusters, stop " << to_string(result.stop_reason) << ", " << result.outer_iters << " outer / "
            << result.inner_iters << " inner iterations, " << result.wall_time << " s";
  if (truth) std::cout << ", misclassified " << rj["misclassified"].get<std::size_t>();
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

void add_cluster_command(CLI::App& app, const Invocation& inv, Runner& runner) {
  auto o = std::make_shared<ClusterOptions>();
  CLI::App* sub = app.add_subcommand("cluster", "Cluster a graph with QP-GC or QPR-GC");
  sub->add_option("--graph", o->graph, "Edge list file");
  sub->add_option("--distance", o->distance, "Precomputed binary distance dump (skips --metric)");
  sub->add_flag("--one-based", o->one_based, "Vertex ids in the edge list start at 1");
  sub->add_option("--method", o->method, "qp | qpr")->capture_default_str();
  sub->add_option("--k", o->k, "Number of clusters")->required();
  sub->add_option("--metric", o->metric, "burt | jaccard | otsuka")->capture_default_str();
  sub->add_option("--neighborhood", o->neighborhood, "open | closed")->capture_default_str();
  sub->add_option("--params", o->params, "Parameter set: ppm | sbm | real (qp); ppm | sbm | karate | football (qpr)");
  sub->add_option("--config", o->config, "JSON file with solver config keys");
  sub->add_option("--truth", o->truth, "Ground-truth labels; adds the misclassified count");
  sub->add_option("--out", o->out, "Output prefix (.labels, .result.json, .manifest.json)")->required();
  sub->add_flag("--save-relaxed", o->save_relaxed, "Include the relaxed solution in the result JSON");

  sub->add_option("--seed", o->seed, "Seed for the random start");
  sub->add_option("--restarts", o->restarts, "Random starts; the best final value is kept");
  sub->add_option("--max-outer", o->max_outer, "Outer iteration cap");
  sub->add_option("--max-inner", o->max_inner, "Inner iteration cap per outer round");
  sub->add_option("--threads", o->threads, "Worker threads (0: QPGC_NUM_THREADS or 1)");
  sub->add_option("--backend", o->backend, "D*V kernel: dense | sparse");
  sub->add_option("--box-upper", o->box_upper, "Upper bound M of the box");
  sub->add_option("--theta-growth", o->theta_growth, "Theta multiplier per outer round");
  sub->add_option("--theta0", o->theta0, "qp: initial theta");
  sub->add_option("--theta-bar", o->theta_bar, "qp: theta cap");
  sub->add_option("--feas-threshold", o->feas_threshold, "qp: residual threshold");
  sub->add_option("--eps", o->subproblem_eps, "qp: inner stationarity tolerance");
  sub->add_option("--support-stop", o->support_stop, "qp: support-set stop fraction (0 disables)");
  sub->add_option("--theta", o->theta, "qpr: fixed theta");
  sub->add_option("--lambda0", o->lambda0, "qpr: initial lambda");
  sub->add_option("--lambda-min", o->lambda_min, "qpr: final lambda");
  sub->add_option("--memory", o->memory_m, "qpr: nonmonotone window m");
  sub->add_option("--eta", o->eta, "qpr: backtracking factor");
  sub->add_option("--gamma", o->gamma, "qpr: sufficient-decrease constant");
  sub->add_option("--tol", o->tol, "qpr: inner tolerance");
  sub->callback([o, inv, &runner] { runner = [o, inv] { return run_cluster(*o, inv); }; });
}

}  // namespace qpgc::cli
