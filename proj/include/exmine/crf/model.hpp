#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "exmine/crf/config.hpp"
#include "exmine/crf/types.hpp"

namespace exmine {

// One state feature fires for (attribute at position t, label y_t).
struct StateFeature {
  int label;
  int k;  // weight index
};

// A TokenSequence resolved against a model's feature tables: attribute ids
// per position plus gold label indices (empty when untagged).
struct CompiledSequence {
  std::vector<std::vector<int>> attr_ids;
  std::vector<int> gold;
  size_t length() const { return attr_ids.size(); }
};

// Weights cover state features "s:<label>:<attr>" for every (attr, gold
// label) pair observed at creation, plus all L*L transition features
// "t:<prev>:<next>". Labels must not contain ':'.
class CrfModel {
 public:
  CrfModel() = default;

  // Assigns feature ids: transitions first (prev-major), then state features
  // in corpus encounter order. Every sequence must carry gold tags drawn
  // from the label set. Weights start at zero.
  static CrfModel create(const LabelSet& labels, const std::vector<TokenSequence>& corpus,
                         FeatureConfig feature_config, TrainConfig train_config);

  const LabelSet& labels() const { return labels_; }
  int num_labels() const { return labels_.size(); }
  size_t num_features() const { return feature_names_.size(); }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  int feature_id(const std::string& name) const;

  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& mutable_weights() { return weights_; }
  void set_weight(const std::string& feature_name, double value);

  size_t attr_count() const { return attr_state_features_.size(); }
  const std::vector<StateFeature>& state_features(int attr_id) const {
    return attr_state_features_[static_cast<size_t>(attr_id)];
  }
  // -1 when the transition feature is absent (never the case for built models)
  int transition_feature(int prev, int next) const {
    return transition_k_[static_cast<size_t>(prev) * static_cast<size_t>(num_labels()) +
                         static_cast<size_t>(next)];
  }

  CompiledSequence compile(const TokenSequence& seq) const;

  // Row-major T x L state-score matrix for the compiled sequence.
  void node_scores(const CompiledSequence& seq, std::vector<double>& out) const;
  // Row-major L x L transition-score matrix.
  void transition_scores(std::vector<double>& out) const;

  const FeatureConfig& feature_config() const { return feature_config_; }
  const TrainConfig& train_config() const { return train_config_; }
  const std::vector<double>& objective_trace() const { return objective_trace_; }
  void set_objective_trace(std::vector<double> trace) { objective_trace_ = std::move(trace); }

  // Versioned JSON with a content checksum; load verifies both and rejects
  // non-finite weights.
  void save(const std::string& path) const;
  static CrfModel load(const std::string& path);

 private:
  void rebuild_tables();

  LabelSet labels_;
  std::vector<std::string> feature_names_;
  std::unordered_map<std::string, int> feature_index_;
  std::vector<double> weights_;
  FeatureConfig feature_config_;
  TrainConfig train_config_;
  std::vector<double> objective_trace_;

  // derived lookup tables
  std::unordered_map<std::string, int> attr_index_;
  std::vector<std::vector<StateFeature>> attr_state_features_;
  std::vector<int> transition_k_;
};

}  // namespace exmine
