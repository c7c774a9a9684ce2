#pragma once

#include <string>

#include <json.hpp>

#include "fatshatter/bounds.hpp"
#include "fatshatter/chaining.hpp"
#include "fatshatter/class_core.hpp"
#include "fatshatter/dimensions.hpp"
#include "fatshatter/metric_geometry.hpp"

namespace fatshatter {

nlohmann::json to_json(const FunctionClass& fc);
FunctionClass function_class_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ShatterCertificate& cert);
nlohmann::json to_json(const SeparatedNet& net);
nlohmann::json to_json(const ChainStructure& chain);

/// Builds a config from JSON; `base_dir` anchors relative class-file paths.
/// Throws ConfigError on any malformed or invalid field.
ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::string& base_dir = ".");

}  // namespace fatshatter
