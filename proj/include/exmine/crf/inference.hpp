#pragma once

#include <string>
#include <vector>

#include "exmine/crf/model.hpp"

namespace exmine {

struct InferenceResult {
  double log_z = 0.0;
  std::vector<double> node_marginals;  // T x L, row-major
  std::vector<double> edge_marginals;  // (T-1) x L x L
};

// Log-space forward-backward over raw score matrices. node_scores is T x L,
// trans_scores is L x L. Node marginals sum to 1 per position; edge marginals
// are consistent with node marginals under summation.
InferenceResult forward_backward(const std::vector<double>& node_scores,
                                 const std::vector<double>& trans_scores, size_t T, size_t L);

InferenceResult log_partition_and_marginals(const CrfModel& model, const CompiledSequence& seq);
InferenceResult log_partition_and_marginals(const CrfModel& model, const TokenSequence& seq);

struct ViterbiResult {
  std::vector<int> path;  // label indices, length T
  double score = 0.0;     // unnormalized score of the path
};

// Ties break toward the lower label index at each backtrack step, so an
// all-zero model decodes to all label-0.
ViterbiResult viterbi_path(const std::vector<double>& node_scores,
                           const std::vector<double>& trans_scores, size_t T, size_t L);

ViterbiResult viterbi(const CrfModel& model, const CompiledSequence& seq);
// Convenience: returns label names.
std::pair<std::vector<std::string>, double> viterbi_tags(const CrfModel& model,
                                                         const TokenSequence& seq);

// Unnormalized score of one label path under the given score matrices.
double path_score(const std::vector<double>& node_scores, const std::vector<double>& trans_scores,
                  const std::vector<int>& path, size_t L);

struct DecodedEntity {
  std::string kind;  // "ID", "NAME", or the raw tag suffix for other schemes
  size_t token_begin = 0;
  size_t token_end = 0;  // one past the last token
  std::string surface;   // tokens joined with single spaces
};

// Maximal B-X (I-X)* runs; an orphan I-X after O or a different class is
// repaired as B-X.
std::vector<DecodedEntity> decode_entities(const std::vector<std::string>& tokens,
                                           const std::vector<std::string>& tags);

}  // namespace exmine
