#include "common.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "qpgc/errors.hpp"

#ifndef QPGC_VERSION
#define QPGC_VERSION "unknown"
#endif

namespace qpgc::cli {

std::string version_string() { return QPGC_VERSION; }

std::string file_sha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest setup failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return hex.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Graph load_graph(const std::string& path, bool one_based, std::optional<std::size_t> num_vertices) {
  EdgeListOptions opts;
  opts.one_based = one_based;
  opts.num_vertices = num_vertices;
  return load_edge_list_file(path, opts).graph;
}

Neighborhood parse_neighborhood(const std::string& s) {
  if (s == "open") return Neighborhood::kOpen;
  if (s == "closed") return Neighborhood::kClosed;
  throw UsageError("unknown neighborhood '" + s + "' (open|closed)");
}

Precision parse_precision(const std::string& s) {
  if (s == "double" || s == "f64") return Precision::kDouble;
  if (s == "single" || s == "f32") return Precision::kSingle;
  throw UsageError("unknown precision '" + s + "' (double|single)");
}

Metric parse_metric_or_throw(const std::string& s) {
  const auto m = parse_metric(s);
  if (!m || *m == Metric::kCustom) throw UsageError("unknown metric '" + s + "' (burt|jaccard|otsuka)");
  return *m;
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const SolveResult& r, bool include_relaxed) {
  json j;
  j["objective"] = finite_or_null(r.objective);
  j["relaxed_objective"] = finite_or_null(r.relaxed_objective);
  j["final_value"] = finite_or_null(r.final_value);
  j["outer_iters"] = r.outer_iters;
  j["inner_iters"] = r.inner_iters;
  j["stop_reason"] = std::string(to_string(r.stop_reason));
  j["wall_time"] = r.wall_time;
  j["restart"] = r.restart;
  j["dv_products"] = r.dv_products;
  j["hessian_products"] = r.hessian_products;
  j["feas_trace"] = r.feas_trace;
  j["theta_trace"] = r.theta_trace;
  if (!r.lambda_trace.empty()) j["lambda_trace"] = r.lambda_trace;
  if (include_relaxed) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.x_relaxed.rows(); ++i) {
      auto row = r.x_relaxed.row(i);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    j["x_relaxed"] = std::move(rows);
  }
  return j;
}

json to_json(const ClusterQuality& q) {
  json j;
  j["kappa"] = q.kappa;
  j["effective_k"] = q.effective_k;
  j["mean_intra"] = q.mean_intra;
  j["mean_inter"] = q.mean_inter ? json(*q.mean_inter) : json(nullptr);
  j["eps_intra"] = q.eps_intra ? json(*q.eps_intra) : json(nullptr);
  j["eps_inter"] = q.eps_inter ? json(*q.eps_inter) : json(nullptr);
  j["inequality_holds"] = q.inequality_holds;
  json intra = json::array();
  for (const auto& v : q.intra) intra.push_back(v ? json(*v) : json(nullptr));
  j["intra"] = std::move(intra);
  const std::size_t k = q.intra.size();
  json inter = json::array();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (const auto& v = q.inter[a * k + b]) inter.push_back({{"a", a}, {"b", b}, {"density", *v}});
    }
  }
  j["inter"] = std::move(inter);
  return j;
}

RunManifest::RunManifest(std::string command, int argc, char** argv)
    : command_(std::move(command)), argv_(argv, argv + argc), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::string& path) { inputs_.emplace_back(path, file_sha256(path)); }

void RunManifest::add_output(const std::string& path) { outputs_.push_back(path); }

json RunManifest::to_json() const {
  json j;
  j["command"] = command_;
  j["argv"] = argv_;
  j["version"] = version_string();
  j["seed"] = seed_ ? json(*seed_) : json(nullptr);
  j["config"] = config_;
  json in = json::array();
  for (const auto& [path, digest] : inputs_) in.push_back({{"path", path}, {"sha256", digest}});
  j["inputs"] = std::move(in);
  j["outputs"] = outputs_;
  j["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return j;
}

void RunManifest::write(const std::string& path) const { write_json_file(path, to_json()); }

}  // namespace qpgc::cli
