#include "exmine/log/tokenize.hpp"

#include <cctype>

namespace exmine {
namespace {

inline bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// '_' counts as a word character so identifiers like __init__ stay whole.
inline bool is_detachable_punct(char c) {
  return c != '_' && std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::vector<Token> tokenize_metric(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    size_t b = i;
    while (i < text.size() && text[i] != ' ') ++i;
    out.push_back({std::string(text.substr(b, i - b)), b, i});
  }
  return out;
}

// '.' and ':' stay word-internal when flanked by alphanumerics within the
// chunk, preserving dotted identifiers and drive paths.
bool is_protected_at(std::string_view text, size_t pos, size_t chunk_begin, size_t chunk_end) {
  char c = text[pos];
  if (c != '.' && c != ':') return false;
  if (pos == chunk_begin || pos + 1 >= chunk_end) return false;
  return is_alnum(text[pos - 1]) && is_alnum(text[pos + 1]);
}

void emit_chunk(std::string_view text, size_t b, size_t e, std::vector<Token>& out) {
  size_t i = b;
  while (i < e && is_detachable_punct(text[i]) && !is_protected_at(text, i, b, e)) {
    out.push_back({std::string(1, text[i]), i, i + 1});
    ++i;
  }
  size_t j = e;
  std::vector<Token> trailing;
  while (j > i && is_detachable_punct(text[j - 1]) && !is_protected_at(text, j - 1, b, e)) {
    --j;
    trailing.push_back({std::string(1, text[j]), j, j + 1});
  }
  if (j > i) out.push_back({std::string(text.substr(i, j - i)), i, j});
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(*it);
}

std::vector<Token> tokenize_feature(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i >= text.size()) break;
    size_t b = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    emit_chunk(text, b, i, out);
  }
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, TokenizeMode mode) {
  return mode == TokenizeMode::kMetric ? tokenize_metric(text) : tokenize_feature(text);
}

std::vector<std::string> token_texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace exmine
