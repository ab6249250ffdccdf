#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exmine/crf/features.hpp"
#include "exmine/crf/model.hpp"
#include "exmine/log/types.hpp"
#include "exmine/tagger/gazetteer.hpp"
#include "exmine/weak/rules.hpp"

namespace exmine {

struct ExceptionTag {
  ExceptionClass kind = ExceptionClass::kId;
  std::string surface;        // exact substring of raw_query
  std::string canonical_key;  // normalize_exception(surface, kind)
  size_t token_begin = 0;
  size_t token_end = 0;
};

struct TaggedQuery {
  std::string record_id;
  std::string session_id;
  std::optional<ExceptionTag> tag;
  std::string language;  // "" = none
};

// Decodes entities from the model's Viterbi path and keeps only the leftmost
// one (the root exception). session_id and language are left for callers.
TaggedQuery tag_query(const CrfModel& model, const FeatureExtractor& extractor,
                      const SearchRecord& record);

// Keyword pass ("java" excluding "javascript", "c#", "python"; earliest hit
// in raw_query, then in clicked URLs in click order) followed by the
// gazetteer pass on NAME tags. Returns "" when neither applies.
std::string categorize_pl(const SearchRecord& record, const std::optional<ExceptionTag>& tag,
                          const std::vector<PlGazetteer>& gazetteers);

// Single JSON line {record_id, session_id, kind, surface, canonical_key,
// language}; only tagged queries are serialized.
std::string tagged_row_json(const TaggedQuery& q);
TaggedQuery parse_tagged_row(const std::string& line);

}  // namespace exmine
