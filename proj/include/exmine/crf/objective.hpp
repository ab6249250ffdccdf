#pragma once

#include <vector>

#include "exmine/crf/config.hpp"
#include "exmine/crf/model.hpp"

namespace exmine {

struct ObjectiveResult {
  double value = 0.0;
  std::vector<double> gradient;  // length = model.num_features()
};

// Negative log-likelihood plus the L2 ridge term, evaluated at the model's
// current weights:
//   value = sum(-log p(gold|x)) + (l2/2)*||w||^2
//   gradient = (expected - empirical feature counts) + l2*w
// The L1 term is handled by the orthant-wise optimizer, never here. Chunks of
// sequences may be evaluated in parallel; partial sums are reduced in chunk
// order, so the result is independent of the worker count.
ObjectiveResult smooth_objective(const CrfModel& model,
                                 const std::vector<CompiledSequence>& batch, double l2,
                                 unsigned workers = 1);

// Same, over uncompiled sequences (every sequence must carry gold tags).
ObjectiveResult objective_and_gradient(const CrfModel& model,
                                       const std::vector<TokenSequence>& batch,
                                       const TrainConfig& config, unsigned workers = 1);

}  // namespace exmine
