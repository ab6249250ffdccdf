#pragma once

#include <cstddef>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace exmine {

enum class ExceptionClass { kId, kName };

inline const char* exception_class_name(ExceptionClass c) {
  return c == ExceptionClass::kId ? "ID" : "NAME";
}

// How the exception surface is carved out of a regex match.
enum class SpanMode {
  kFullMatch,
  // First maximal digit run after the end of the keyword group.
  kDigitsAfterKeyword,
  // The leading (\d+) group: first digit run that has the keyword after it.
  kDigitsBeforeKeyword,
  // Full match minus a leading ',' or ' ' separator consumed by the pattern.
  kStripLeadingSep,
};

struct LabelRule {
  int rule_id = 0;
  std::string pattern;  // regex source
  ExceptionClass exception_class = ExceptionClass::kId;
  SpanMode span_mode = SpanMode::kFullMatch;
  bool case_insensitive = false;
  std::regex compiled;
};

struct WeakLabel {
  std::string record_id;
  ExceptionClass exception_class = ExceptionClass::kId;
  size_t span_begin = 0;
  size_t span_end = 0;  // one past the last char
  std::string surface;  // raw_query[span_begin, span_end)
  int rule_id = 0;
};

// The six built-in rules in application order. Patterns follow the published
// rule table; two repairs keep the table's own samples matching and are
// covered by regression tests:
//   - rule 5 is widened to [A-Z]+[0-9]+ with an optional ';' so multi-letter
//     prefixed codes like LNK1189 are captured whole,
//   - rule 6 gains word-boundary anchors so digits inside longer numbers do
//     not trigger.
// Rules 1-3 match case-insensitively; rule 5 must stay case-sensitive or it
// would shadow rule 1 on queries like "error 2006 (hy000) at line 462".
const std::vector<LabelRule>& builtin_rules();

// Loads an override rule set from a JSON array of
// {rule_id, pattern, exception_class, span_mode, case_insensitive}.
std::vector<LabelRule> load_rules_file(const std::string& path);

// Tries rules in order; first match wins. Returns nothing when no rule fires.
// record_id is left empty; callers fill it in.
std::optional<WeakLabel> apply_rules(const std::string& raw_query,
                                     const std::vector<LabelRule>& rules = builtin_rules());

struct ExceptionGroup {
  std::string canonical_key;  // normalized (lowercased) surface
  size_t query_count = 0;
};

// Groups by lowercased surface, sorted by count desc, then key asc.
std::vector<ExceptionGroup> group_exceptions(const std::vector<WeakLabel>& labels);

}  // namespace exmine
