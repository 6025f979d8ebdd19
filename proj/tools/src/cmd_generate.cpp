#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "qpgc/synth.hpp"

namespace qpgc::cli {
namespace {

struct GenOptions {
  std::string preset;
  std::vector<double> ppm;  // K size p_intra p_inter
  std::vector<int> sizes;
  int k = 0;
  int size = 0;
  int min_size = 0;
  int max_size = 0;
  int total = 0;
  double p_intra = -1.0;
  double p_inter = -1.0;
  bool exact_n = false;
  std::uint64_t seed = 0;
  std::string out;
};

void write_instance(const SyntheticGraph& sg, const std::string& model, const std::string& preset,
                    const GenOptions& o, const Invocation& inv, const std::string& command) {
  const std::string edges = o.out + ".edges";
  const std::string labels = o.out + ".labels";
  const std::string sidecar = o.out + ".json";

  std::ostringstream es;
  write_edge_list(es, sg.graph);
  write_text_file(edges, es.str());
  std::ostringstream ls;
  write_labels(ls, sg.truth.labels);
  write_text_file(labels, ls.str());

  std::vector<int> sizes(static_cast<std::size_t>(sg.truth.num_clusters), 0);
  for (int l : sg.truth.labels) ++sizes[static_cast<std::size_t>(l)];

  json j;
  j["model"] = model;
  j["preset"] = preset.empty() ? json(nullptr) : json(preset);
  j["n"] = sg.graph.num_vertices();
  j["edges"] = sg.graph.num_edges();
  j["k"] = sg.truth.num_clusters;
  j["sizes"] = sizes;
  j["p_intra"] = sg.truth.p_intra;
  j["p_inter"] = sg.truth.p_inter;
  j["seed"] = sg.seed;
  j["exact_n"] = o.exact_n;
  j["kappa"] = sg.graph.num_vertices() >= 2 ? json(overall_density(sg.graph)) : json(nullptr);
  j["edge_file"] = edges;
  j["label_file"] = labels;
  RunManifest manifest(command, inv.argc, inv.argv);
  manifest.set_seed(sg.seed);
  manifest.add_output(edges);
  manifest.add_output(labels);
  manifest.config() = j;
  j["manifest"] = manifest.to_json();
  write_json_file(sidecar, j);

  std::cout << "wrote " << edges << " (n=" << sg.graph.num_vertices() << ", |E|=" << sg.graph.num_edges()
            << "), " << labels << ", " << sidecar << "\n";
}

bool has_probabilities(const GenOptions& o) { return o.p_intra >= 0.0 && o.p_inter >= 0.0; }

}  // namespace

void add_generate_commands(CLI::App& app, const Invocation& inv, Runner& runner) {
  auto ppm = std::make_shared<GenOptions>();
  CLI::App* gp = app.add_subcommand("gen-ppm", "Generate a planted partition graph with ground truth");
  gp->add_option("--preset", ppm->preset, "Benchmark row G1_PPM, G2_PPM or G3_PPM");
  gp->add_option("--ppm", ppm->ppm, "K SIZE P_INTRA P_INTER")->expected(4);
  gp->add_option("--k", ppm->k, "Number of blocks");
  gp->add_option("--size", ppm->size, "Vertices per block");
  gp->add_option("--p-intra", ppm->p_intra, "Edge probability inside a block");
  gp->add_option("--p-inter", ppm->p_inter, "Edge probability across blocks");
  gp->add_option("--seed", ppm->seed, "Generator seed")->capture_default_str();
  gp->add_option("--out", ppm->out, "Output prefix (writes .edges, .labels, .json)")->required();
  gp->callback([ppm, inv, &runner] {
    runner = [ppm, inv] {
      const GenOptions& o = *ppm;
      if (!o.preset.empty()) {
        const auto p = find_preset(o.preset);
        if (!p || p->model != BlockModel::kPlantedPartition) {
          throw UsageError("unknown PPM preset '" + o.preset + "'");
        }
        write_instance(generate_preset(*p, o.seed), "ppm", o.preset, o, inv, "gen-ppm");
        return int{kExitOk};
      }
      int k = o.k, size = o.size;
      double pin = o.p_intra, pout = o.p_inter;
      if (!o.ppm.empty()) {
        k = static_cast<int>(o.ppm[0]);
        size = static_cast<int>(o.ppm[1]);
        pin = o.ppm[2];
        pout = o.ppm[3];
        if (k != o.ppm[0] || size != o.ppm[1]) throw UsageError("--ppm: K and SIZE must be integers");
      } else if (k <= 0 || size <= 0 || !has_probabilities(o)) {
        throw UsageError("gen-ppm needs --preset, --ppm, or --k/--size/--p-intra/--p-inter");
      }
      write_instance(generate_ppm(k, size, pin, pout, o.seed), "ppm", "", o, inv, "gen-ppm");
      return int{kExitOk};
    };
  });

  auto sbm = std::make_shared<GenOptions>();
  CLI::App* gs = app.add_subcommand("gen-sbm", "Generate a stochastic block model graph with ground truth");
  gs->add_option("--preset", sbm->preset, "Benchmark row G1_SBM3K .. G6_SBM6K");
  gs->add_option("--sizes", sbm->sizes, "Explicit block sizes")->delimiter(',');
  gs->add_option("--k", sbm->k, "Number of blocks (with --min-size/--max-size)");
  gs->add_option("--min-size", sbm->min_size, "Smallest block size");
  gs->add_option("--max-size", sbm->max_size, "Largest block size");
  gs->add_option("--n", sbm->total, "Total vertex count for --exact-n with custom sizes");
  gs->add_option("--p-intra", sbm->p_intra, "Edge probability inside a block");
  gs->add_option("--p-inter", sbm->p_inter, "Edge probability across blocks");
  gs->add_flag("--exact-n", sbm->exact_n, "Refit the last block so n matches the target");
  gs->add_option("--seed", sbm->seed, "Generator seed")->capture_default_str();
  gs->add_option("--out", sbm->out, "Output prefix (writes .edges, .labels, .json)")->required();
  gs->callback([sbm, inv, &runner] {
    runner = [sbm, inv] {
      const GenOptions& o = *sbm;
      if (!o.preset.empty()) {
        const auto p = find_preset(o.preset);
        if (!p || p->model != BlockModel::kStochasticBlock) {
          throw UsageError("unknown SBM preset '" + o.preset + "'");
        }
        write_instance(generate_preset(*p, o.seed, o.exact_n), "sbm", o.preset, o, inv, "gen-sbm");
        return int{kExitOk};
      }
      if (!has_probabilities(o)) throw UsageError("gen-sbm needs --p-intra and --p-inter");
      std::vector<int> sizes = o.sizes;
      if (sizes.empty()) {
        if (o.k <= 0 || o.min_size <= 0 || o.max_size < o.min_size) {
          throw UsageError("gen-sbm needs --preset, --sizes, or --k/--min-size/--max-size");
        }
        sizes = sample_block_sizes(o.min_size, o.max_size, o.k, o.seed);
      }
      if (o.exact_n) {
        if (o.total <= 0) throw UsageError("--exact-n with custom sizes needs --n");
        sizes = fit_last_block(std::move(sizes), o.total);
      }
      write_instance(generate_sbm(sizes, o.p_intra, o.p_inter, o.seed), "sbm", "", o, inv, "gen-sbm");
      return int{kExitOk};
    };
  });
}

}  // namespace qpgc::cli
