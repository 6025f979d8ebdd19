#include <iostream>
#include <memory>
#include <optional>

#include "commands.hpp"
#include "common.hpp"
#include "qpgc/errors.hpp"

namespace qpgc::cli {
namespace {

struct EvalOptions {
  std::string graph;
  bool one_based = false;
  std::string labels;
  std::string truth;
  std::size_t k = 0;
  std::optional<double> p_intra, p_inter;
  std::string out;
};

int run_eval(const EvalOptions& o, const Invocation& inv) {
  if (o.p_intra.has_value() != o.p_inter.has_value()) throw UsageError("--p-intra and --p-inter go together");

  RunManifest manifest("eval", inv.argc, inv.argv);
  const Graph g = load_graph(o.graph, o.one_based);
  manifest.add_input(o.graph);
  std::vector<int> labels = read_labels_file(o.labels);
  manifest.add_input(o.labels);
  if (labels.size() != g.num_vertices()) {
    throw InputError("labels cover " + std::to_string(labels.size()) + " vertices, graph has " +
                     std::to_string(g.num_vertices()));
  }
  const Clustering predicted = o.k ? Clustering(std::move(labels), o.k) : Clustering::from_labels(std::move(labels));

  std::optional<GenerationProbabilities> probs;
  if (o.p_intra) probs = GenerationProbabilities{*o.p_intra, *o.p_inter};

  json j;
  j["n"] = g.num_vertices();
  j["edges"] = g.num_edges();
  j["k"] = predicted.num_clusters();
  j["quality"] = to_json(quality_report(g, predicted, probs));
  if (!o.truth.empty()) {
    const Clustering truth = Clustering::from_labels(read_labels_file(o.truth));
    manifest.add_input(o.truth);
    if (truth.size() != predicted.size()) throw InputError("truth labels do not match the vertex count");
    j["misclassified"] = misclassified_count(predicted, truth);
  }

  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    manifest.config() = {{"labels", o.labels}, {"truth", o.truth.empty() ? json(nullptr) : json(o.truth)}};
    j["manifest"] = manifest.to_json();
    write_json_file(o.out, j);
    std::cout << "wrote " << o.out << "\n";
  }
  return kExitOk;
}

}  // namespace

void add_eval_command(CLI::App& app, const Invocation& inv, Runner& runner) {
  auto o = std::make_shared<EvalOptions>();
  CLI::App* sub = app.add_subcommand("eval", "Density report and misclassification count for a labeling");
  sub->add_option("--graph", o->graph, "Edge list file")->required();
  sub->add_flag("--one-based", o->one_based, "Vertex ids in the edge list start at 1");
  sub->add_option("--labels", o->labels, "Predicted labels, one per line")->required();
  sub->add_option("--truth", o->truth, "Ground-truth labels");
  sub->add_option("--k", o->k, "Declared cluster count (default: max label + 1)");
  sub->add_option("--p-intra", o->p_intra, "Generating intra probability, for eps_intra");
  sub->add_option("--p-inter", o->p_inter, "Generating inter probability, for eps_inter");
  sub->add_option("--out", o->out, "Write JSON here instead of stdout");
  sub->callback([o, inv, &runner] { runner = [o, inv] { return run_eval(*o, inv); }; });
}

}  // namespace qpgc::cli
