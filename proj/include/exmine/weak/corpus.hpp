#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exmine/log/types.hpp"
#include "exmine/weak/rules.hpp"

namespace exmine {

struct LabeledSequence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;  // BIO, same length as tokens
  std::string record_id;
};

struct CorpusBuildResult {
  std::vector<LabeledSequence> sequences;  // positives first, then negatives
  size_t positive_count = 0;
  size_t negative_count = 0;
  std::vector<std::string> warnings;
};

// BIO-tags each weak-labeled record (tokens overlapping the span become
// B-EX*/I-EX*) and adds seeded uniform negatives from the unlabeled records
// to reach negatives_ratio negatives per positive. Sampling is without
// replacement; a too-small pool yields all of it plus a warning.
// Throws ValidationError("empty corpus") when there are no positives.
CorpusBuildResult build_training_corpus(const std::vector<SearchRecord>& records,
                                        const std::vector<WeakLabel>& labels,
                                        double negatives_ratio, uint64_t seed);

// JSONL of {record_id, tags, tokens}, one sequence per line.
void save_corpus(const std::vector<LabeledSequence>& sequences, const std::string& path);
std::vector<LabeledSequence> load_corpus(const std::string& path);

}  // namespace exmine
