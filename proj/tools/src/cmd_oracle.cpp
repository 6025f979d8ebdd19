#include <iostream>
#include <memory>

#include "commands.hpp"
#include "common.hpp"
#include "qpgc/errors.hpp"
#include "qpgc/oracle.hpp"

namespace qpgc::cli {
namespace {

struct OracleOptions {
  std::string graph;
  bool one_based = false;
  std::size_t k = 2;
  std::string metric = "jaccard";
  std::string neighborhood = "open";
  bool count_ties = false;
  std::uint64_t cap = oracle::kMaxLabelings;
  std::string out;
};

int run_oracle(const OracleOptions& o, const Invocation& inv) {
  if (o.k == 0) throw UsageError("--k must be >= 1");
  oracle::NaiveMetric metric;
  switch (parse_metric_or_throw(o.metric)) {
    case Metric::kBurt: metric = oracle::NaiveMetric::kBurt; break;
    case Metric::kJaccard: metric = oracle::NaiveMetric::kJaccard; break;
    case Metric::kOtsukaOchiai: metric = oracle::NaiveMetric::kOtsukaOchiai; break;
    default: throw UsageError("oracle supports burt, jaccard and otsuka");
  }
  const bool closed = parse_neighborhood(o.neighborhood) == Neighborhood::kClosed;

  const Graph g = load_graph(o.graph, o.one_based);
  const std::size_t n = g.num_vertices();
  oracle::Matrix adj(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = e.weight;

  const oracle::Matrix d = oracle::naive_distances(adj, metric, closed);
  oracle::BruteForceResult best;
  try {
    best = oracle::brute_force_min(d, o.k, o.cap, o.count_ties);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("instance too large for exhaustive search: ") + e.what());
  }

  json j;
  j["n"] = n;
  j["k"] = o.k;
  j["metric"] = o.metric;
  j["neighborhood"] = o.neighborhood;
  j["best_objective"] = best.best_objective;
  j["best_labels"] = best.best_labels;
  j["num_evaluated"] = best.num_evaluated;
  if (best.num_ties) j["num_ties"] = *best.num_ties;
  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    RunManifest manifest("oracle", inv.argc, inv.argv);
    manifest.add_input(o.graph);
    j["manifest"] = manifest.to_json();
    write_json_file(o.out, j);
    std::cout << "wrote " << o.out << "\n";
  }
  return kExitOk;
}

}  // namespace

void add_oracle_command(CLI::App& app, const Invocation& inv, Runner& runner) {
  auto o = std::make_shared<OracleOptions>();
  CLI::App* sub = app.add_subcommand("oracle", "Exhaustive minimum over all labelings of a tiny graph");
  sub->add_option("--graph", o->graph, "Edge list file")->required();
  sub->add_flag("--one-based", o->one_based, "Vertex ids in the edge list start at 1");
  sub->add_option("--k", o->k, "Number of clusters")->capture_default_str();
  sub->add_option("--metric", o->metric, "burt | jaccard | otsuka")->capture_default_str();
  sub->add_option("--neighborhood", o->neighborhood, "open | closed")->capture_default_str();
  sub->add_flag("--count-ties", o->count_ties, "Also count labelings that tie the optimum");
  sub->add_option("--cap", o->cap, "Refuse instances with more than this many labelings")->capture_default_str();
  sub->add_option("--out", o->out, "Write JSON here instead of stdout");
  sub->callback([o, inv, &runner] { runner = [o, inv] { return run_oracle(*o, inv); }; });
}

}  // namespace qpgc::cli
