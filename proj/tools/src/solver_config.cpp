#include "solver_config.hpp"

namespace qpgc::cli {
namespace {

std::string backend_name(KernelBackend b) { return b == KernelBackend::kDense ? "dense" : "sparse"; }

KernelBackend parse_backend(const std::string& s) {
  if (s == "dense") return KernelBackend::kDense;
  if (s == "sparse") return KernelBackend::kSparseComplement;
  throw UsageError("unknown kernel backend '" + s + "' (dense|sparse)");
}

template <typename T>
void read(const json& j, const std::string& key, T& out) {
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

QpGcConfig qp_preset(const std::string& name) {
  if (name == "ppm" || name == "default") return QpGcConfig::ppm();
  if (name == "sbm") return QpGcConfig::sbm();
  if (name == "real" || name == "karate" || name == "football") return QpGcConfig::real_world();
  throw UsageError("unknown qp parameter set '" + name + "' (ppm|sbm|real)");
}

QprGcConfig qpr_preset(const std::string& name) {
  if (name == "ppm" || name == "default") return QprGcConfig::ppm();
  if (name == "sbm") return QprGcConfig::sbm();
  if (name == "karate" || name == "real") return QprGcConfig::karate();
  if (name == "football") return QprGcConfig::football();
  throw UsageError("unknown qpr parameter set '" + name + "' (ppm|sbm|karate|football|real)");
}

void apply_json(QpGcConfig& c, const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "theta0") read(j, key, c.theta0);
    else if (key == "theta_bar") read(j, key, c.theta_bar);
    else if (key == "theta_growth") read(j, key, c.theta_growth);
    else if (key == "feas_threshold") read(j, key, c.feas_threshold);
    else if (key == "subproblem_eps") read(j, key, c.subproblem_eps);
    else if (key == "support_stop_fraction") {
      if (value.is_null()) {
        c.support_stop_fraction.reset();
      } else {
        double f = 0.0;
        read(j, key, f);
        c.support_stop_fraction = f;
      }
    }
    else if (key == "max_outer") read(j, key, c.max_outer);
    else if (key == "max_inner") read(j, key, c.max_inner);
    else if (key == "box_upper") read(j, key, c.box_upper);
    else if (key == "seed") read(j, key, c.seed);
    else if (key == "restarts") read(j, key, c.restarts);
    else if (key == "threads") read(j, key, c.kernel.threads);
    else if (key == "backend") c.kernel.backend = parse_backend(value.get<std::string>());
    else throw UsageError("unknown qp config key '" + key + "'");
  }
}

void apply_json(QprGcConfig& c, const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "theta_fixed" || key == "theta") read(j, key, c.theta_fixed);
    else if (key == "theta_growth") read(j, key, c.theta_growth);
    else if (key == "lambda0") read(j, key, c.lambda0);
    else if (key == "lambda_min") read(j, key, c.lambda_min);
    else if (key == "lambda_decay_iters") read(j, key, c.lambda_decay_iters);
    else if (key == "bb_alpha0") read(j, key, c.bb_alpha0);
    else if (key == "alpha_min") read(j, key, c.alpha_min);
    else if (key == "alpha_max") read(j, key, c.alpha_max);
    else if (key == "memory_m") read(j, key, c.memory_m);
    else if (key == "eta") read(j, key, c.eta);
    else if (key == "gamma") read(j, key, c.gamma);
    else if (key == "tol") read(j, key, c.tol);
    else if (key == "max_outer") read(j, key, c.max_outer);
    else if (key == "max_inner") read(j, key, c.max_inner);
    else if (key == "box_upper") read(j, key, c.box_upper);
    else if (key == "zero_block_stop") read(j, key, c.zero_block_stop);
    else if (key == "seed") read(j, key, c.seed);
    else if (key == "restarts") read(j, key, c.restarts);
    else if (key == "threads") read(j, key, c.kernel.threads);
    else if (key == "backend") c.kernel.backend = parse_backend(value.get<std::string>());
    else throw UsageError("unknown qpr config key '" + key + "'");
  }
}

json to_json(const QpGcConfig& c) {
  json j;
  j["theta0"] = c.theta0;
  j["theta_bar"] = c.theta_bar;
  j["theta_growth"] = c.theta_growth;
  j["feas_threshold"] = c.feas_threshold;
  j["subproblem_eps"] = c.subproblem_eps;
  j["support_stop_fraction"] = c.support_stop_fraction ? json(*c.support_stop_fraction) : json(nullptr);
  j["max_outer"] = c.max_outer;
  j["max_inner"] = c.max_inner;
  j["box_upper"] = c.box_upper;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["threads"] = c.kernel.threads;
  j["backend"] = backend_name(c.kernel.backend);
  return j;
}

json to_json(const QprGcConfig& c) {
  json j;
  j["theta_fixed"] = c.theta_fixed;
  j["theta_growth"] = c.theta_growth;
  j["lambda0"] = c.lambda0;
  j["lambda_min"] = c.lambda_min;
  j["lambda_decay_iters"] = c.lambda_decay_iters;
  j["bb_alpha0"] = c.bb_alpha0;
  j["alpha_min"] = c.alpha_min;
  j["alpha_max"] = c.alpha_max;
  j["memory_m"] = c.memory_m;
  j["eta"] = c.eta;
  j["gamma"] = c.gamma;
  j["tol"] = c.tol;
  j["max_outer"] = c.max_outer;
  j["max_inner"] = c.max_inner;
  j["box_upper"] = c.box_upper;
  j["zero_block_stop"] = c.zero_block_stop;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["threads"] = c.kernel.threads;
  j["backend"] = backend_name(c.kernel.backend);
  return j;
}

}  // namespace qpgc::cli
