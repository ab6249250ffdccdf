#include "exmine/weak/corpus.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "exmine/log/tokenize.hpp"
#include "exmine/util/error.hpp"
#include "exmine/util/rng.hpp"

namespace exmine {
namespace {

std::vector<std::string> bio_tags(const std::vector<Token>& tokens, const WeakLabel& label) {
  const std::string suffix = label.exception_class == ExceptionClass::kId ? "EXID" : "EXNAME";
  std::vector<std::string> tags(tokens.size(), "O");
  bool inside = false;
  for (size_t i = 0; i < tokens.size(); ++i) {
    bool overlaps = tokens[i].begin < label.span_end && label.span_begin < tokens[i].end;
    if (overlaps) {
      tags[i] = (inside ? "I-" : "B-") + suffix;
      inside = true;
    }
  }
  return tags;
}

}  // namespace

CorpusBuildResult build_training_corpus(const std::vector<SearchRecord>& records,
                                        const std::vector<WeakLabel>& labels,
                                        double negatives_ratio, uint64_t seed) {
  if (negatives_ratio < 0) throw ValidationError("negatives_ratio must be non-negative");

  std::unordered_map<std::string, const WeakLabel*> label_by_record;
  for (const auto& l : labels) label_by_record.emplace(l.record_id, &l);

  CorpusBuildResult result;
  std::vector<const SearchRecord*> negative_pool;
  for (const auto& r : records) {
    auto it = label_by_record.find(r.record_id);
    if (it == label_by_record.end()) {
      negative_pool.push_back(&r);
      continue;
    }
    auto tokens = tokenize(r.raw_query, TokenizeMode::kFeature);
    if (tokens.empty()) {
      result.warnings.push_back("record " + r.record_id + " tokenizes to nothing; skipped");
      continue;
    }
    result.sequences.push_back({token_texts(tokens), bio_tags(tokens, *it->second), r.record_id});
    ++result.positive_count;
  }
  if (result.positive_count == 0) throw ValidationError("empty corpus");

  size_t wanted = static_cast<size_t>(
      std::llround(negatives_ratio * static_cast<double>(result.positive_count)));
  if (wanted > negative_pool.size()) {
    result.warnings.push_back("negative pool has only " + std::to_string(negative_pool.size()) +
                              " records, wanted " + std::to_string(wanted) + "; using all");
    wanted = negative_pool.size();
  }

  Rng rng(seed);
  for (size_t idx : rng.sample_without_replacement(negative_pool.size(), wanted)) {
    const SearchRecord& r = *negative_pool[idx];
    auto tokens = tokenize(r.raw_query, TokenizeMode::kFeature);
    if (tokens.empty()) continue;
    std::vector<std::string> tags(tokens.size(), "O");
    result.sequences.push_back({token_texts(tokens), std::move(tags), r.record_id});
    ++result.negative_count;
  }
  return result;
}

void save_corpus(const std::vector<LabeledSequence>& sequences, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeFailure("cannot open file for write: " + path);
  for (const auto& s : sequences) {
    nlohmann::json j{{"record_id", s.record_id}, {"tags", s.tags}, {"tokens", s.tokens}};
    out << j.dump() << '\n';
  }
  if (!out) throw RuntimeFailure("write error: " + path);
}

std::vector<LabeledSequence> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeFailure("cannot open file: " + path);
  std::vector<LabeledSequence> sequences;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    LabeledSequence s;
    s.record_id = j.value("record_id", "");
    for (const auto& t : j.at("tokens")) s.tokens.push_back(t.get<std::string>());
    for (const auto& t : j.at("tags")) s.tags.push_back(t.get<std::string>());
    if (s.tokens.empty() || s.tokens.size() != s.tags.size())
      throw ValidationError("corpus line " + std::to_string(line_no) +
                            ": tokens/tags length mismatch");
    sequences.push_back(std::move(s));
  }
  return sequences;
}

}  // namespace exmine
