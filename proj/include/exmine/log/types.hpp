#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace exmine {

struct ClickEvent {
  std::string url;
  int click_order = 0;  // 1-based rank in click order
  double dwell_seconds = 0.0;  // raw, uncapped
};

struct SearchRecord {
  std::string record_id;
  std::string client_id;
  int64_t timestamp = 0;  // epoch seconds
  std::string raw_query;
  std::string locale;
  std::string region;
  std::vector<std::string> result_urls;
  std::vector<ClickEvent> clicks;
  // Populated by ingest for diagnostics; not serialized.
  size_t source_line = 0;
};

struct Session {
  std::string session_id;
  std::string client_id;
  std::vector<SearchRecord> records;  // time-ordered, non-empty
};

struct FilterConfig {
  // Locale tags; a trailing '*' matches any suffix ("en-*" covers en-US, en-GB).
  std::set<std::string> allowed_locales = {"en-*"};
  std::set<std::string> allowed_regions = {"US"};
  std::set<std::string> trigger_keywords = {"error", "errno", "exception"};
  bool require_click = true;
  bool reject_non_ascii = true;
};

}  // namespace exmine
