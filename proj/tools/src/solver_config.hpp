#pragma once

#include <string>

#include "common.hpp"
#include "qpgc/qp_newton.hpp"
#include "qpgc/qpr_spg.hpp"

namespace qpgc::cli {

// Named parameter sets. "real" is the real-world setting (karate, football).
QpGcConfig qp_preset(const std::string& name);
QprGcConfig qpr_preset(const std::string& name);

// Keys are the config field names. Unknown keys and type mismatches raise
// UsageError. support_stop_fraction accepts null to disable.
void apply_json(QpGcConfig& cfg, const json& j);
void apply_json(QprGcConfig& cfg, const json& j);

json to_json(const QpGcConfig& cfg);
json to_json(const QprGcConfig& cfg);

}  // namespace qpgc::cli
