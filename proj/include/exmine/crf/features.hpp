#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "exmine/crf/config.hpp"
#include "exmine/crf/types.hpp"

namespace exmine {

// Deterministic 8-class coarse POS, in rule order: NUM (all digits), HEX
// (0x/0X prefix), PUNCT (all punctuation), SYM (contains a non-alphanumeric),
// CAPWORD (leading uppercase with a lowercase after it), ACRONYM (all
// uppercase letters, length >= 2), WORD (letters only), OTHER.
const char* coarse_pos(const std::string& token);

// Run-collapsed letter-digit shape ("LNK1189" -> "X+d+"); hex literals are
// special-cased to "0xX+".
std::string shape_code(const std::string& token);

bool is_hex_literal(const std::string& token);

class FeatureExtractor {
 public:
  explicit FeatureExtractor(FeatureConfig config);
  // Gazetteers supplied directly instead of via config paths.
  FeatureExtractor(FeatureConfig config,
                   std::vector<std::pair<std::string, std::unordered_set<std::string>>> gazetteers);

  const FeatureConfig& config() const { return config_; }

  // Per-position feature strings for one token sequence.
  std::vector<std::vector<std::string>> extract(const std::vector<std::string>& tokens) const;

  TokenSequence make_sequence(std::vector<std::string> tokens,
                              std::vector<std::string> gold_tags = {}) const;

 private:
  FeatureConfig config_;
  std::vector<std::pair<std::string, std::unordered_set<std::string>>> gazetteers_;
};

}  // namespace exmine
