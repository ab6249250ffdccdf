#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace exmine {

struct FeatureConfig {
  int window = 2;  // identity features at offsets -window..+window
  bool use_orthographic = true;
  bool use_gazetteer = true;
  bool use_coarse_pos = true;
  // (list name, file path); name becomes part of the feature string
  std::vector<std::pair<std::string, std::string>> gazetteer_paths;
};

struct TrainConfig {
  double l1 = 0.1;
  double l2 = 0.01;
  int max_iterations = 200;
  double gradient_tolerance = 1e-5;  // projected-gradient max-norm
  int history_size = 6;
  uint64_t seed = 1;
};

}  // namespace exmine
