#include "exmine/crf/model.hpp"

#include <cmath>

#include <json.hpp>

#include "exmine/util/fnv.hpp"
#include "exmine/util/textfile.hpp"

namespace exmine {
namespace {

using nlohmann::json;

constexpr const char* kFormatName = "exmine-crf";
constexpr int kFormatVersion = 1;

json feature_config_to_json(const FeatureConfig& c) {
  json paths = json::array();
  for (const auto& [name, path] : c.gazetteer_paths) paths.push_back({name, path});
  return json{{"window", c.window},
              {"use_orthographic", c.use_orthographic},
              {"use_gazetteer", c.use_gazetteer},
              {"use_coarse_pos", c.use_coarse_pos},
              {"gazetteer_paths", paths}};
}

FeatureConfig feature_config_from_json(const json& j) {
  FeatureConfig c;
  c.window = j.value("window", 2);
  c.use_orthographic = j.value("use_orthographic", true);
  c.use_gazetteer = j.value("use_gazetteer", true);
  c.use_coarse_pos = j.value("use_coarse_pos", true);
  if (auto it = j.find("gazetteer_paths"); it != j.end()) {
    for (const auto& entry : *it)
      c.gazetteer_paths.emplace_back(entry.at(0).get<std::string>(),
                                     entry.at(1).get<std::string>());
  }
  return c;
}

json train_config_to_json(const TrainConfig& c) {
  return json{{"l1", c.l1},
              {"l2", c.l2},
              {"max_iterations", c.max_iterations},
              {"gradient_tolerance", c.gradient_tolerance},
              {"history_size", c.history_size},
              {"seed", c.seed}};
}

TrainConfig train_config_from_json(const json& j) {
  TrainConfig c;
  c.l1 = j.value("l1", 0.1);
  c.l2 = j.value("l2", 0.01);
  c.max_iterations = j.value("max_iterations", 200);
  c.gradient_tolerance = j.value("gradient_tolerance", 1e-5);
  c.history_size = j.value("history_size", 6);
  c.seed = j.value("seed", uint64_t{1});
  return c;
}

}  // namespace

CrfModel CrfModel::create(const LabelSet& labels, const std::vector<TokenSequence>& corpus,
                          FeatureConfig feature_config, TrainConfig train_config) {
  for (const auto& name : labels.names()) {
    if (name.find(':') != std::string::npos)
      throw ValidationError("label names must not contain ':' : " + name);
  }

  CrfModel m;
  m.labels_ = labels;
  m.feature_config_ = std::move(feature_config);
  m.train_config_ = train_config;

  int L = labels.size();
  for (int prev = 0; prev < L; ++prev) {
    for (int next = 0; next < L; ++next) {
      std::string name = "t:" + labels.name(prev) + ":" + labels.name(next);
      m.feature_index_.emplace(name, static_cast<int>(m.feature_names_.size()));
      m.feature_names_.push_back(std::move(name));
    }
  }

  for (const auto& seq : corpus) {
    if (!seq.has_gold() || seq.gold_tags.size() != seq.features.size())
      throw ValidationError("model creation requires gold tags on every sequence");
    for (size_t t = 0; t < seq.features.size(); ++t) {
      const std::string& tag = seq.gold_tags[t];
      if (labels.index_of(tag) < 0) throw ValidationError("unknown label in corpus: " + tag);
      for (const auto& attr : seq.features[t]) {
        std::string name = "s:" + tag + ":" + attr;
        if (m.feature_index_.emplace(name, static_cast<int>(m.feature_names_.size())).second)
          m.feature_names_.push_back(std::move(name));
      }
    }
  }

  m.weights_.assign(m.feature_names_.size(), 0.0);
  m.rebuild_tables();
  return m;
}

int CrfModel::feature_id(const std::string& name) const {
  auto it = feature_index_.find(name);
  return it == feature_index_.end() ? -1 : it->second;
}

void CrfModel::set_weight(const std::string& feature_name, double value) {
  int k = feature_id(feature_name);
  if (k < 0) throw ValidationError("unknown feature: " + feature_name);
  weights_[static_cast<size_t>(k)] = value;
}

void CrfModel::rebuild_tables() {
  int L = num_labels();
  attr_index_.clear();
  attr_state_features_.clear();
  transition_k_.assign(static_cast<size_t>(L) * static_cast<size_t>(L), -1);

  for (size_t k = 0; k < feature_names_.size(); ++k) {
    const std::string& name = feature_names_[k];
    if (name.size() < 2 || name[1] != ':')
      throw ValidationError("malformed feature name: " + name);
    size_t second = name.find(':', 2);
    if (second == std::string::npos) throw ValidationError("malformed feature name: " + name);
    std::string first_part = name.substr(2, second - 2);
    std::string rest = name.substr(second + 1);

    if (name[0] == 't') {
      int prev = labels_.index_of(first_part);
      int next = labels_.index_of(rest);
      if (prev < 0 || next < 0)
        throw ValidationError("transition feature uses unknown label: " + name);
      transition_k_[static_cast<size_t>(prev) * static_cast<size_t>(L) +
                    static_cast<size_t>(next)] = static_cast<int>(k);
    } else if (name[0] == 's') {
      int label = labels_.index_of(first_part);
      if (label < 0) throw ValidationError("state feature uses unknown label: " + name);
      auto [it, fresh] = attr_index_.emplace(rest, static_cast<int>(attr_state_features_.size()));
      if (fresh) attr_state_features_.emplace_back();
      attr_state_features_[static_cast<size_t>(it->second)].push_back(
          {label, static_cast<int>(k)});
    } else {
      throw ValidationError("malformed feature name: " + name);
    }
  }
}

CompiledSequence CrfModel::compile(const TokenSequence& seq) const {
  CompiledSequence out;
  out.attr_ids.resize(seq.features.size());
  for (size_t t = 0; t < seq.features.size(); ++t) {
    auto& ids = out.attr_ids[t];
    ids.reserve(seq.features[t].size());
    for (const auto& attr : seq.features[t]) {
      auto it = attr_index_.find(attr);
      if (it != attr_index_.end()) ids.push_back(it->second);
    }
  }
  if (seq.has_gold()) {
    if (seq.gold_tags.size() != seq.features.size())
      throw ValidationError("gold tag count does not match sequence length");
    out.gold.reserve(seq.gold_tags.size());
    for (const auto& tag : seq.gold_tags) {
      int idx = labels_.index_of(tag);
      if (idx < 0) throw ValidationError("unknown label: " + tag);
      out.gold.push_back(idx);
    }
  }
  return out;
}

void CrfModel::node_scores(const CompiledSequence& seq, std::vector<double>& out) const {
  size_t T = seq.length();
  size_t L = static_cast<size_t>(num_labels());
  out.assign(T * L, 0.0);
  for (size_t t = 0; t < T; ++t) {
    double* row = out.data() + t * L;
    for (int aid : seq.attr_ids[t]) {
      for (const auto& sf : attr_state_features_[static_cast<size_t>(aid)])
        row[sf.label] += weights_[static_cast<size_t>(sf.k)];
    }
  }
}

void CrfModel::transition_scores(std::vector<double>& out) const {
  size_t L = static_cast<size_t>(num_labels());
  out.assign(L * L, 0.0);
  for (size_t i = 0; i < L * L; ++i) {
    int k = transition_k_[i];
    if (k >= 0) out[i] = weights_[static_cast<size_t>(k)];
  }
}

void CrfModel::save(const std::string& path) const {
  json j{{"format", kFormatName},
         {"version", kFormatVersion},
         {"labels", labels_.names()},
         {"feature_names", feature_names_},
         {"weights", weights_},
         {"feature_config", feature_config_to_json(feature_config_)},
         {"train_config", train_config_to_json(train_config_)},
         {"objective_trace", objective_trace_}};
  j["checksum"] = fnv1a64_hex(j.dump());
  write_file(path, j.dump() + "\n");
}

CrfModel CrfModel::load(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw RuntimeFailure("model file is not valid JSON: " + std::string(e.what()));
  }
  if (j.value("format", "") != kFormatName)
    throw RuntimeFailure("not a model file: " + path);
  if (j.value("version", -1) != kFormatVersion)
    throw RuntimeFailure("unsupported model version in " + path);

  std::string stored = j.value("checksum", "");
  j.erase("checksum");
  if (stored != fnv1a64_hex(j.dump()))
    throw RuntimeFailure("model file checksum mismatch: " + path);

  CrfModel m;
  m.labels_ = LabelSet(j.at("labels").get<std::vector<std::string>>());
  m.feature_names_ = j.at("feature_names").get<std::vector<std::string>>();
  m.weights_ = j.at("weights").get<std::vector<double>>();
  m.feature_config_ = feature_config_from_json(j.at("feature_config"));
  m.train_config_ = train_config_from_json(j.at("train_config"));
  m.objective_trace_ = j.value("objective_trace", std::vector<double>{});

  if (m.weights_.size() != m.feature_names_.size())
    throw RuntimeFailure("model file weight/feature count mismatch");
  for (double w : m.weights_) {
    if (!std::isfinite(w)) throw RuntimeFailure("model file contains non-finite weights");
  }
  for (size_t k = 0; k < m.feature_names_.size(); ++k)
    m.feature_index_.emplace(m.feature_names_[k], static_cast<int>(k));
  m.rebuild_tables();
  return m;
}

}  // namespace exmine
