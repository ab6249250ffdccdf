#include "exmine/crf/objective.hpp"

#include <cmath>

#include "exmine/crf/inference.hpp"
#include "exmine/util/parallel.hpp"

namespace exmine {
namespace {

// Sequences per parallel work unit; fixed so the reduction order (and thus
// floating-point rounding) never depends on the worker count.
constexpr size_t kChunkSize = 64;

struct ChunkResult {
  double value = 0.0;
  std::vector<double> gradient;
};

// Adds this sequence's -log p(gold|x) to value and (expected - empirical)
// counts to grad.
double accumulate_sequence(const CrfModel& model, const CompiledSequence& seq,
                           const std::vector<double>& trans_scores, std::vector<double>& ns,
                           std::vector<double>& grad) {
  if (seq.gold.empty()) throw ValidationError("objective requires gold tags");
  size_t T = seq.length();
  size_t L = static_cast<size_t>(model.num_labels());

  model.node_scores(seq, ns);
  InferenceResult fb = forward_backward(ns, trans_scores, T, L);

  for (size_t t = 0; t < T; ++t) {
    int gold = seq.gold[t];
    for (int aid : seq.attr_ids[t]) {
      for (const auto& sf : model.state_features(aid)) {
        grad[static_cast<size_t>(sf.k)] += fb.node_marginals[t * L + static_cast<size_t>(sf.label)];
        if (sf.label == gold) grad[static_cast<size_t>(sf.k)] -= 1.0;
      }
    }
  }
  for (size_t t = 0; t + 1 < T; ++t) {
    for (size_t i = 0; i < L; ++i) {
      for (size_t j = 0; j < L; ++j) {
        int k = model.transition_feature(static_cast<int>(i), static_cast<int>(j));
        if (k >= 0) grad[static_cast<size_t>(k)] += fb.edge_marginals[(t * L + i) * L + j];
      }
    }
    int k = model.transition_feature(seq.gold[t], seq.gold[t + 1]);
    if (k >= 0) grad[static_cast<size_t>(k)] -= 1.0;
  }

  return fb.log_z - path_score(ns, trans_scores, seq.gold, L);
}

}  // namespace

ObjectiveResult smooth_objective(const CrfModel& model,
                                 const std::vector<CompiledSequence>& batch, double l2,
                                 unsigned workers) {
  size_t K = model.num_features();
  std::vector<double> trans_scores;
  model.transition_scores(trans_scores);

  auto chunks = parallel_map_chunks<ChunkResult>(
      batch.size(), kChunkSize, workers, [&](size_t begin, size_t end) {
        ChunkResult c;
        c.gradient.assign(K, 0.0);
        std::vector<double> ns;
        for (size_t s = begin; s < end; ++s)
          c.value += accumulate_sequence(model, batch[s], trans_scores, ns, c.gradient);
        return c;
      });

  ObjectiveResult r;
  r.gradient.assign(K, 0.0);
  for (const auto& c : chunks) {
    r.value += c.value;
    for (size_t k = 0; k < K; ++k) r.gradient[k] += c.gradient[k];
  }

  const auto& w = model.weights();
  double sq = 0.0;
  for (size_t k = 0; k < K; ++k) {
    sq += w[k] * w[k];
    r.gradient[k] += l2 * w[k];
  }
  r.value += 0.5 * l2 * sq;

  if (!std::isfinite(r.value)) throw RuntimeFailure("objective is not finite");
  return r;
}

ObjectiveResult objective_and_gradient(const CrfModel& model,
                                       const std::vector<TokenSequence>& batch,
                                       const TrainConfig& config, unsigned workers) {
  std::vector<CompiledSequence> compiled;
  compiled.reserve(batch.size());
  for (const auto& seq : batch) {
    if (!seq.has_gold()) throw ValidationError("objective requires gold tags");
    compiled.push_back(model.compile(seq));
  }
  return smooth_objective(model, compiled, config.l2, workers);
}

}  // namespace exmine
