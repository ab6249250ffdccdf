#pragma once

#include <string>
#include <vector>

#include "exmine/util/error.hpp"

namespace exmine {

// One observation sequence: tokens, their extracted feature strings, and
// (for training) gold tags. |features| == |tokens| == |gold_tags| when gold
// tags are present; gold_tags empty otherwise.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<std::vector<std::string>> features;
  std::vector<std::string> gold_tags;

  bool has_gold() const { return !gold_tags.empty(); }
};

class LabelSet {
 public:
  LabelSet() : labels_(default_labels()) {}
  explicit LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ValidationError("label set is empty");
  }

  static std::vector<std::string> default_labels() {
    return {"O", "B-EXID", "I-EXID", "B-EXNAME", "I-EXNAME"};
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& name(int index) const { return labels_[static_cast<size_t>(index)]; }
  const std::vector<std::string>& names() const { return labels_; }

  // -1 when absent
  int index_of(const std::string& label) const {
    for (size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return static_cast<int>(i);
    }
    return -1;
  }

 private:
  std::vector<std::string> labels_;
};

}  // namespace exmine
