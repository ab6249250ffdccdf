#include "exmine/log/filter.hpp"

#include "exmine/util/strings.hpp"

namespace exmine {
namespace {

// A pattern with a trailing '*' prefix-matches; otherwise exact. Comparison
// is case-insensitive ("en-*" covers "en-US" and "en-us").
bool tag_matches(const std::string& pattern, const std::string& value) {
  std::string p = to_lower(pattern);
  std::string v = to_lower(value);
  if (!p.empty() && p.back() == '*') return v.compare(0, p.size() - 1, p, 0, p.size() - 1) == 0;
  return v == p;
}

bool set_allows(const std::set<std::string>& patterns, const std::string& value) {
  if (patterns.empty()) return true;
  for (const auto& p : patterns) {
    if (tag_matches(p, value)) return true;
  }
  return false;
}

bool has_trigger_keyword(const SearchRecord& r, const FilterConfig& config) {
  for (const auto& kw : config.trigger_keywords) {
    if (contains_ci(r.raw_query, kw)) return true;
    for (const auto& c : r.clicks) {
      if (contains_ci(c.url, kw)) return true;
    }
  }
  return false;
}

}  // namespace

bool record_passes_filter(const SearchRecord& r, const FilterConfig& config) {
  if (!set_allows(config.allowed_locales, r.locale)) return false;
  if (!set_allows(config.allowed_regions, r.region)) return false;
  if (config.require_click && r.clicks.empty()) return false;
  if (config.reject_non_ascii && !is_ascii(r.raw_query)) return false;
  return has_trigger_keyword(r, config);
}

std::vector<SearchRecord> filter_records(const std::vector<SearchRecord>& records,
                                         const FilterConfig& config) {
  std::vector<SearchRecord> kept;
  for (const auto& r : records) {
    if (record_passes_filter(r, config)) kept.push_back(r);
  }
  return kept;
}

}  // namespace exmine
