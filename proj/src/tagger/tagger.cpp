#include "exmine/tagger/tagger.hpp"

#include <algorithm>

#include <json.hpp>

#include "exmine/crf/inference.hpp"
#include "exmine/log/tokenize.hpp"
#include "exmine/tagger/normalize.hpp"
#include "exmine/util/strings.hpp"

namespace exmine {
namespace {

// Earliest "java" occurrence not followed by "script"; npos when none.
size_t find_java(const std::string& text) {
  std::string_view sv(text);
  size_t pos = 0;
  for (;;) {
    pos = find_ci(sv, "java", pos);
    if (pos == std::string::npos) return std::string::npos;
    if (!starts_with_ci(sv.substr(pos + 4), "script")) return pos;
    ++pos;
  }
}

// Language of the earliest keyword hit in one text; "" when none.
std::string keyword_language(const std::string& text) {
  size_t java = find_java(text);
  size_t csharp = find_ci(text, "c#", 0);
  size_t python = find_ci(text, "python", 0);
  size_t best = std::min({java, csharp, python});
  if (best == std::string::npos) return "";
  if (best == java) return "java";
  if (best == csharp) return "csharp";
  return "python";
}

}  // namespace

TaggedQuery tag_query(const CrfModel& model, const FeatureExtractor& extractor,
                      const SearchRecord& record) {
  TaggedQuery out;
  out.record_id = record.record_id;

  auto tokens = tokenize(record.raw_query, TokenizeMode::kFeature);
  if (tokens.empty()) return out;
  auto texts = token_texts(tokens);

  TokenSequence seq = extractor.make_sequence(texts);
  auto [tags, score] = viterbi_tags(model, seq);
  (void)score;
  auto entities = decode_entities(texts, tags);
  if (entities.empty()) return out;

  const DecodedEntity& first = entities.front();
  ExceptionClass kind;
  if (first.kind == "ID") {
    kind = ExceptionClass::kId;
  } else if (first.kind == "NAME") {
    kind = ExceptionClass::kName;
  } else {
    return out;
  }

  ExceptionTag tag;
  tag.kind = kind;
  tag.token_begin = first.token_begin;
  tag.token_end = first.token_end;
  size_t char_begin = tokens[first.token_begin].begin;
  size_t char_end = tokens[first.token_end - 1].end;
  tag.surface = record.raw_query.substr(char_begin, char_end - char_begin);
  try {
    tag.canonical_key = normalize_exception(tag.surface, kind);
  } catch (const ValidationError&) {
    return out;  // all-punctuation span; nothing usable
  }
  out.tag = std::move(tag);
  return out;
}

std::string categorize_pl(const SearchRecord& record, const std::optional<ExceptionTag>& tag,
                          const std::vector<PlGazetteer>& gazetteers) {
  std::string lang = keyword_language(record.raw_query);
  if (!lang.empty()) return lang;

  std::vector<const ClickEvent*> clicks;
  clicks.reserve(record.clicks.size());
  for (const auto& c : record.clicks) clicks.push_back(&c);
  std::sort(clicks.begin(), clicks.end(),
            [](const ClickEvent* a, const ClickEvent* b) { return a->click_order < b->click_order; });
  for (const ClickEvent* c : clicks) {
    lang = keyword_language(c->url);
    if (!lang.empty()) return lang;
  }

  if (tag && tag->kind == ExceptionClass::kName) {
    std::string full_form = normalize_exception(tag->surface, ExceptionClass::kId);
    return lookup_language(gazetteers, full_form, tag->canonical_key);
  }
  return "";
}

std::string tagged_row_json(const TaggedQuery& q) {
  if (!q.tag) throw ValidationError("cannot serialize an untagged query");
  nlohmann::json j{{"record_id", q.record_id},
                   {"session_id", q.session_id},
                   {"kind", exception_class_name(q.tag->kind)},
                   {"surface", q.tag->surface},
                   {"canonical_key", q.tag->canonical_key},
                   {"language", q.language}};
  return j.dump();
}

TaggedQuery parse_tagged_row(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad tagged row: ") + e.what());
  }
  TaggedQuery q;
  q.record_id = j.at("record_id").get<std::string>();
  q.session_id = j.at("session_id").get<std::string>();
  q.language = j.value("language", "");
  ExceptionTag tag;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "ID") {
    tag.kind = ExceptionClass::kId;
  } else if (kind == "NAME") {
    tag.kind = ExceptionClass::kName;
  } else {
    throw ValidationError("bad tagged row kind: " + kind);
  }
  tag.surface = j.at("surface").get<std::string>();
  tag.canonical_key = j.at("canonical_key").get<std::string>();
  q.tag = std::move(tag);
  return q;
}

}  // namespace exmine
