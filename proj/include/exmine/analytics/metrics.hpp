#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "exmine/log/types.hpp"
#include "exmine/tagger/tagger.hpp"

namespace exmine {

struct MetricsConfig {
  double dwell_cap_seconds = 600.0;
  double sat_threshold_seconds = 30.0;
  int min_sessions = 20;
};

struct QueryMetrics {
  std::string record_id;
  double total_dwell_seconds = 0.0;  // sum of per-click capped dwell
  int success = 0;                   // last-ordered click is a SAT click
  int word_count = 0;                // metric-mode token count
};

// Per-click dwell capped at dwell_cap; success iff the click with the
// highest click_order has capped dwell strictly above sat_threshold.
// Throws ValidationError when the record has no clicks.
QueryMetrics compute_query_metrics(const SearchRecord& record, const MetricsConfig& config);

struct ExceptionStats {
  std::string canonical_key;
  std::string kind;      // kind of the group's first query, "ID" or "NAME"
  std::string language;  // set when grouping by language
  size_t query_count = 0;
  size_t unique_sessions = 0;
  double mean_effort_seconds = 0.0;
  double success_rate = 0.0;
  double mean_word_count = 0.0;
};

// Groups tagged queries by canonical key (optionally per language), counts
// distinct sessions, averages per query, drops groups below min_sessions,
// and sorts by unique_sessions desc, key asc, language asc. Every tagged
// query must have a session id and a metrics row.
std::vector<ExceptionStats> aggregate_exception_stats(
    const std::vector<TaggedQuery>& tagged,
    const std::unordered_map<std::string, QueryMetrics>& metrics_by_record,
    const MetricsConfig& config, bool group_by_language = false);

struct DomainCount {
  std::string domain;
  size_t clicks = 0;
};

struct DomainResult {
  std::vector<DomainCount> ranking;  // count desc, domain asc
  std::vector<std::string> diagnostics;
};

// Counts every click of the given (exception-tagged) records per registrable
// host, lowercased, with a leading "www." stripped. Unparseable URLs are
// skipped with a diagnostic.
DomainResult domain_popularity(const std::vector<SearchRecord>& tagged_records);

// "" when the URL has no scheme://host part.
std::string url_host(const std::string& url);

}  // namespace exmine
