#include "exmine/weak/rules.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <json.hpp>

#include "exmine/util/error.hpp"
#include "exmine/util/strings.hpp"
#include "exmine/util/textfile.hpp"

namespace exmine {
namespace {

LabelRule make_rule(int id, const char* pattern, ExceptionClass cls, SpanMode mode, bool icase) {
  LabelRule r;
  r.rule_id = id;
  r.pattern = pattern;
  r.exception_class = cls;
  r.span_mode = mode;
  r.case_insensitive = icase;
  auto flags = std::regex::ECMAScript;
  if (icase) flags |= std::regex::icase;
  r.compiled = std::regex(r.pattern, flags);
  return r;
}

std::vector<LabelRule> make_builtin_rules() {
  std::vector<LabelRule> rules;
  // Application order: the NAME rule and the specific code shapes go first so
  // dotted names and hex/linker codes are not swallowed by the generic digit
  // rules; the 3-digit status rule goes last.
  rules.push_back(make_rule(
      3, R"((?:^|[, ])[A-Za-z]{1}[A-Za-z.]+(error|exception|iteration))",
      ExceptionClass::kName, SpanMode::kStripLeadingSep, true));
  rules.push_back(make_rule(4, R"(0[xX][0-9a-fA-F]+)", ExceptionClass::kId,
                            SpanMode::kFullMatch, false));
  rules.push_back(make_rule(5, R"([A-Z]+[0-9]+;?)", ExceptionClass::kId,
                            SpanMode::kFullMatch, false));
  rules.push_back(make_rule(
      1,
      R"((error |errno|err|refused|errorcode|error code|hresult|exit|response|check code|scope|state).*(\d+))",
      ExceptionClass::kId, SpanMode::kDigitsAfterKeyword, true));
  rules.push_back(make_rule(
      2,
      R"((\d+).*(error|errno|err|refused| errorcode|error code|hresult|exit|response|check code|scope|state))",
      ExceptionClass::kId, SpanMode::kDigitsBeforeKeyword, true));
  rules.push_back(make_rule(6, R"(\b[345][0-9][0-9]\b)", ExceptionClass::kId,
                            SpanMode::kFullMatch, false));
  return rules;
}

// First maximal digit run at or after `from`; returns {begin, end} or npos.
std::pair<size_t, size_t> first_digit_run(const std::string& s, size_t from) {
  size_t b = from;
  while (b < s.size() && !std::isdigit(static_cast<unsigned char>(s[b]))) ++b;
  if (b >= s.size()) return {std::string::npos, std::string::npos};
  size_t e = b;
  while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
  return {b, e};
}

std::optional<WeakLabel> try_rule(const std::string& query, const LabelRule& rule) {
  std::smatch m;
  if (!std::regex_search(query, m, rule.compiled)) return std::nullopt;

  size_t begin = static_cast<size_t>(m.position(0));
  size_t end = begin + static_cast<size_t>(m.length(0));
  switch (rule.span_mode) {
    case SpanMode::kFullMatch:
      break;
    case SpanMode::kStripLeadingSep:
      if (begin < end && (query[begin] == ',' || query[begin] == ' ')) ++begin;
      break;
    case SpanMode::kDigitsBeforeKeyword:
      begin = static_cast<size_t>(m.position(1));
      end = begin + static_cast<size_t>(m.length(1));
      break;
    case SpanMode::kDigitsAfterKeyword: {
      size_t keyword_end = static_cast<size_t>(m.position(1)) + static_cast<size_t>(m.length(1));
      auto [b, e] = first_digit_run(query, keyword_end);
      if (b == std::string::npos) return std::nullopt;
      begin = b;
      end = e;
      break;
    }
  }

  WeakLabel label;
  label.exception_class = rule.exception_class;
  label.span_begin = begin;
  label.span_end = end;
  label.surface = query.substr(begin, end - begin);
  label.rule_id = rule.rule_id;
  return label;
}

}  // namespace

const std::vector<LabelRule>& builtin_rules() {
  static const std::vector<LabelRule> rules = make_builtin_rules();
  return rules;
}

std::vector<LabelRule> load_rules_file(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("rules file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_array() || doc.empty()) throw ValidationError("rules file must be a non-empty JSON array");

  std::vector<LabelRule> rules;
  for (const auto& item : doc) {
    if (!item.is_object()) throw ValidationError("rules file entries must be objects");
    int id = item.value("rule_id", 0);
    std::string pattern = item.value("pattern", "");
    if (pattern.empty()) throw ValidationError("rule is missing a pattern");
    std::string cls = item.value("exception_class", "ID");
    std::string mode = item.value("span_mode", "full_match");
    bool icase = item.value("case_insensitive", false);

    ExceptionClass ec;
    if (cls == "ID") {
      ec = ExceptionClass::kId;
    } else if (cls == "NAME") {
      ec = ExceptionClass::kName;
    } else {
      throw ValidationError("unknown exception_class: " + cls);
    }
    SpanMode sm;
    if (mode == "full_match") {
      sm = SpanMode::kFullMatch;
    } else if (mode == "digits_after_keyword") {
      sm = SpanMode::kDigitsAfterKeyword;
    } else if (mode == "digits_before_keyword") {
      sm = SpanMode::kDigitsBeforeKeyword;
    } else if (mode == "strip_leading_sep") {
      sm = SpanMode::kStripLeadingSep;
    } else {
      throw ValidationError("unknown span_mode: " + mode);
    }
    try {
      rules.push_back(make_rule(id, pattern.c_str(), ec, sm, icase));
    } catch (const std::regex_error& e) {
      throw ValidationError("bad regex for rule " + std::to_string(id) + ": " + e.what());
    }
  }
  return rules;
}

std::optional<WeakLabel> apply_rules(const std::string& raw_query,
                                     const std::vector<LabelRule>& rules) {
  for (const auto& rule : rules) {
    if (auto label = try_rule(raw_query, rule)) return label;
  }
  return std::nullopt;
}

std::vector<ExceptionGroup> group_exceptions(const std::vector<WeakLabel>& labels) {
  std::map<std::string, size_t> counts;
  for (const auto& l : labels) counts[to_lower(l.surface)]++;
  std::vector<ExceptionGroup> groups;
  groups.reserve(counts.size());
  for (const auto& [key, count] : counts) groups.push_back({key, count});
  std::sort(groups.begin(), groups.end(), [](const ExceptionGroup& a, const ExceptionGroup& b) {
    if (a.query_count != b.query_count) return a.query_count > b.query_count;
    return a.canonical_key < b.canonical_key;
  });
  return groups;
}

}  // namespace exmine
