#pragma once

#include <vector>

#include "exmine/crf/features.hpp"
#include "exmine/crf/model.hpp"
#include "exmine/weak/corpus.hpp"

namespace exmine {

// Builds the feature/label tables from the corpus and fits weights with an
// orthant-wise limited-memory quasi-Newton optimizer (plain L-BFGS when
// l1 = 0). Stops when the pseudo-gradient max-norm drops below
// config.gradient_tolerance or after config.max_iterations accepted steps.
// The model records the objective trace, which is non-increasing across
// accepted iterates. Deterministic given config, corpus order, and
// extractor; the worker count never changes the result.
//
// The label set is the default BIO set, extended with any extra tags found
// in the corpus (sorted). Throws ValidationError on an empty corpus.
CrfModel train(const std::vector<LabeledSequence>& corpus, const FeatureExtractor& extractor,
               const TrainConfig& config, unsigned workers = 1);

}  // namespace exmine
