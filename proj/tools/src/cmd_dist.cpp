#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "common.hpp"
#include "qpgc/errors.hpp"

namespace qpgc::cli {
namespace {

struct DistOptions {
  std::string graph;
  bool one_based = false;
  std::string metric = "jaccard";
  std::string neighborhood = "open";
  std::string precision = "double";
  std::string format = "bin";
  std::string out;
  std::size_t threads = 0;
};

}  // namespace

void add_dist_command(CLI::App& app, const Invocation& inv, Runner& runner) {
  auto opt = std::make_shared<DistOptions>();
  CLI::App* sub = app.add_subcommand("dist", "Compute a distance matrix from an edge list");
  sub->add_option("--graph", opt->graph, "Edge list file")->required();
  sub->add_flag("--one-based", opt->one_based, "Vertex ids in the file start at 1");
  sub->add_option("--metric", opt->metric, "burt | jaccard | otsuka")->capture_default_str();
  sub->add_option("--neighborhood", opt->neighborhood, "open | closed")->capture_default_str();
  sub->add_option("--precision", opt->precision, "double | single")->capture_default_str();
  sub->add_option("--format", opt->format, "bin | csv")->capture_default_str();
  sub->add_option("--out", opt->out, "Output file")->required();
  sub->add_option("--threads", opt->threads, "Worker threads (0: QPGC_NUM_THREADS or 1)");
  sub->callback([opt, inv, &runner] {
    runner = [opt, inv] {
      const DistOptions& o = *opt;
      DistanceOptions d;
      d.neighborhood = parse_neighborhood(o.neighborhood);
      d.precision = parse_precision(o.precision);
      d.threads = o.threads;
      const Metric metric = parse_metric_or_throw(o.metric);
      if (o.format != "bin" && o.format != "csv") throw UsageError("unknown format '" + o.format + "' (bin|csv)");

      const Graph g = load_graph(o.graph, o.one_based);
      const DistanceMatrix dm = compute_distance(g, metric, d);
      std::ofstream out(o.out, std::ios::binary);
      if (!out) throw InputError("cannot write " + o.out);
      if (o.format == "bin") {
        write_distance_binary(out, dm);
      } else {
        write_distance_csv(out, dm);
      }
      std::cout << "wrote " << o.out << " (" << to_string(metric) << ", n=" << dm.size() << ")\n";
      return int{kExitOk};
    };
  });
}

}  // namespace qpgc::cli
