#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace exmine {

struct Token {
  std::string text;
  size_t begin = 0;  // char offset into the source string
  size_t end = 0;    // one past the last char
};

enum class TokenizeMode {
  // Splits on runs of ' ' only; used by the word-count metric.
  kMetric,
  // Splits on whitespace, then detaches leading/trailing punctuation.
  // '.' and ':' between alphanumerics stay inside the token, so dotted
  // identifiers like java.lang.TypeNotPresentException survive intact.
  kFeature,
};

std::vector<Token> tokenize(std::string_view text, TokenizeMode mode);

std::vector<std::string> token_texts(const std::vector<Token>& tokens);

}  // namespace exmine
