#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "exmine/weak/corpus.hpp"

namespace exmine {

// Inputs for the labeled-corpus generator: exception names per language,
// as they appear in the gazetteer files.
struct SynthNamePool {
  std::vector<std::string> dotted_names;  // "java.lang.NullPointerException", ...
  std::vector<std::string> bare_names;    // "importerror", "typeerror", ...
};

struct SynthCorpusConfig {
  size_t sequences = 2000;
  uint64_t seed = 7;
};

// Token/tag sequences mirroring the query families the weak rules produce:
// keyword-adjacent numeric codes, hex codes, letter-prefixed codes with an
// attached ';', HTTP status lines, dotted and bare exception names, plus
// negatives that reuse the same vocabulary (digits in benign contexts).
// Positives and negatives alternate 1:1. Deterministic in the seed.
std::vector<LabeledSequence> generate_labeled_corpus(const SynthCorpusConfig& config,
                                                     const SynthNamePool& names);

struct SynthLogConfig {
  size_t records = 100000;
  uint64_t seed = 42;
};

// Raw search-log JSONL: sessionized clients, en-US weighted locales, result
// lists, clicks with plausible dwell times, and a query mix of exception
// queries (rule-matchable), noisy near-exceptions, and unrelated queries.
void generate_search_log(const SynthLogConfig& config, const SynthNamePool& names,
                         std::ostream& out);

}  // namespace exmine
