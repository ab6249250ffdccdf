#include "exmine/crf/features.hpp"

#include <cctype>

#include "exmine/util/strings.hpp"
#include "exmine/util/textfile.hpp"

namespace exmine {
namespace {

inline bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
inline bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
inline bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_digit(c)) return false;
  }
  return true;
}

bool all_punct(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_punct(c)) return false;
  }
  return true;
}

bool ends_with_ci(const std::string& s, std::string_view suffix) {
  if (s.size() < suffix.size()) return false;
  size_t off = s.size() - suffix.size();
  for (size_t i = 0; i < suffix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[off + i])) != suffix[i]) return false;
  }
  return true;
}

char shape_class(char c) {
  if (is_upper(c)) return 'X';
  if (is_lower(c)) return 'x';
  if (is_digit(c)) return 'd';
  if (static_cast<unsigned char>(c) >= 0x80) return '?';
  return c;
}

}  // namespace

bool is_hex_literal(const std::string& token) {
  if (token.size() < 3) return false;
  if (token[0] != '0' || (token[1] != 'x' && token[1] != 'X')) return false;
  for (size_t i = 2; i < token.size(); ++i) {
    if (!std::isxdigit(static_cast<unsigned char>(token[i]))) return false;
  }
  return true;
}

const char* coarse_pos(const std::string& token) {
  if (token.empty()) return "OTHER";
  if (all_digits(token)) return "NUM";
  if (token.size() >= 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) return "HEX";
  if (all_punct(token)) return "PUNCT";
  for (char c : token) {
    if (!is_alnum(c)) return "SYM";
  }
  bool has_lower = false, all_alpha = true, all_caps = true;
  for (char c : token) {
    if (is_lower(c)) has_lower = true;
    if (!is_alpha(c)) all_alpha = false;
    if (!is_upper(c)) all_caps = false;
  }
  if (is_upper(token[0]) && has_lower) return "CAPWORD";
  if (all_caps && token.size() >= 2) return "ACRONYM";
  if (all_alpha) return "WORD";
  return "OTHER";
}

std::string shape_code(const std::string& token) {
  if (is_hex_literal(token)) return "0xX+";
  std::string out;
  size_t i = 0;
  while (i < token.size()) {
    char cls = shape_class(token[i]);
    size_t j = i;
    while (j < token.size() && shape_class(token[j]) == cls) ++j;
    out.push_back(cls);
    if (j - i > 1) out.push_back('+');
    i = j;
  }
  return out;
}

FeatureExtractor::FeatureExtractor(FeatureConfig config) : config_(std::move(config)) {
  for (const auto& [name, path] : config_.gazetteer_paths) {
    std::unordered_set<std::string> entries;
    for (const auto& e : load_line_entries(path)) entries.insert(to_lower(e));
    gazetteers_.emplace_back(name, std::move(entries));
  }
}

FeatureExtractor::FeatureExtractor(
    FeatureConfig config,
    std::vector<std::pair<std::string, std::unordered_set<std::string>>> gazetteers)
    : config_(std::move(config)), gazetteers_(std::move(gazetteers)) {}

std::vector<std::vector<std::string>> FeatureExtractor::extract(
    const std::vector<std::string>& tokens) const {
  size_t n = tokens.size();
  std::vector<std::string> lowered(n);
  for (size_t i = 0; i < n; ++i) lowered[i] = to_lower(tokens[i]);

  std::vector<std::vector<std::string>> features(n);
  for (size_t t = 0; t < n; ++t) {
    auto& out = features[t];
    const std::string& tok = tokens[t];

    for (int o = -config_.window; o <= config_.window; ++o) {
      long p = static_cast<long>(t) + o;
      if (p < 0 || p >= static_cast<long>(n)) continue;
      out.push_back("w[" + std::to_string(o) + "]=" + lowered[static_cast<size_t>(p)]);
    }

    if (config_.use_orthographic) {
      if (all_digits(tok)) out.push_back("all_digits");
      if (is_hex_literal(tok)) out.push_back("hex_literal");
      if (tok.find('.') != std::string::npos) out.push_back("has_dot");
      if (tok.find(':') != std::string::npos) out.push_back("has_colon");
      if (is_upper(tok[0])) out.push_back("capitalized");
      bool caps = tok.size() >= 2;
      for (char c : tok) {
        if (!is_upper(c)) caps = false;
      }
      if (caps) out.push_back("all_caps");
      if (tok.size() >= 3) out.push_back("suf3=" + lowered[t].substr(tok.size() - 3));
      if (tok.size() >= 4) out.push_back("suf4=" + lowered[t].substr(tok.size() - 4));
      if (ends_with_ci(tok, "error")) out.push_back("ends=error");
      if (ends_with_ci(tok, "exception")) out.push_back("ends=exception");
      if (ends_with_ci(tok, "iteration")) out.push_back("ends=iteration");
      out.push_back("shape=" + shape_code(tok));
    }

    if (config_.use_coarse_pos) out.push_back(std::string("pos=") + coarse_pos(tok));

    if (config_.use_gazetteer) {
      for (const auto& [name, entries] : gazetteers_) {
        if (entries.count(lowered[t])) out.push_back("gaz=" + name);
      }
    }

    if (t == 0) out.push_back("__BOS__");
    if (t + 1 == n) out.push_back("__EOS__");
  }
  return features;
}

TokenSequence FeatureExtractor::make_sequence(std::vector<std::string> tokens,
                                              std::vector<std::string> gold_tags) const {
  TokenSequence seq;
  seq.features = extract(tokens);
  seq.tokens = std::move(tokens);
  seq.gold_tags = std::move(gold_tags);
  return seq;
}

}  // namespace exmine
