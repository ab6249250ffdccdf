#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "exmine/analytics/metrics.hpp"
#include "exmine/crf/config.hpp"
#include "exmine/log/ingest.hpp"
#include "exmine/log/types.hpp"

namespace exmine::cli {

// Everything a pipeline run needs, resolved from a TOML-style config file
// plus command-line overrides. One seed drives all randomness (negative
// sampling, the train/holdout split); each stage writes the effective
// config next to its outputs so a run can be reproduced from the snapshot.
struct PipelineConfig {
  // [input]
  std::string input_log;  // raw search log
  LogFormat input_format = LogFormat::kJsonl;

  // [filter]
  FilterConfig filter;

  // [weak]
  std::string rules_path;     // "" = built-in rule table
  std::string denylist_path;  // "" = no denylist
  double negative_ratio = 1.0;

  // [features] — gazetteer files double as the language lookup lists
  FeatureConfig features;

  // [train]
  TrainConfig train;     // train.seed mirrors the top-level seed
  double holdout = 0.2;  // fraction of the corpus held out of training

  // [metrics]
  MetricsConfig metrics;

  // [output] / top level
  std::string output_dir = "out";
  uint64_t seed = 1;
  unsigned workers = 0;  // 0 = all available cores
  std::string verbosity = "info";  // quiet | info | debug
};

PipelineConfig default_pipeline_config();

// Parses the supported TOML subset: [section] headers, key = value with
// strings, integers, floats, booleans, and single-line string arrays, '#'
// comments. Unknown sections/keys, type mismatches, bad enum values, and
// unresolvable referenced paths are all collected and reported together in
// one ValidationError.
PipelineConfig load_pipeline_config(const std::string& path);

// Same, from an in-memory string; origin names the source in error messages.
PipelineConfig parse_pipeline_config_text(const std::string& text, const std::string& origin);

// Snapshot in the same format load_pipeline_config reads.
std::string to_toml(const PipelineConfig& config);

// "name=path" entries -> (name, path) pairs; throws ValidationError on a
// malformed entry.
std::vector<std::pair<std::string, std::string>> parse_gazetteer_list(
    const std::vector<std::string>& entries);

}  // namespace exmine::cli
