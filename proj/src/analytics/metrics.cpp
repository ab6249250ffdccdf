#include "exmine/analytics/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "exmine/log/tokenize.hpp"
#include "exmine/util/error.hpp"
#include "exmine/util/strings.hpp"

namespace exmine {

QueryMetrics compute_query_metrics(const SearchRecord& record, const MetricsConfig& config) {
  if (record.clicks.empty())
    throw ValidationError("record has no clicks: " + record.record_id);

  QueryMetrics m;
  m.record_id = record.record_id;
  const ClickEvent* last = &record.clicks.front();
  for (const auto& c : record.clicks) {
    m.total_dwell_seconds += std::min(c.dwell_seconds, config.dwell_cap_seconds);
    if (c.click_order > last->click_order) last = &c;
  }
  double last_dwell = std::min(last->dwell_seconds, config.dwell_cap_seconds);
  m.success = last_dwell > config.sat_threshold_seconds ? 1 : 0;
  m.word_count = static_cast<int>(tokenize(record.raw_query, TokenizeMode::kMetric).size());
  return m;
}

std::vector<ExceptionStats> aggregate_exception_stats(
    const std::vector<TaggedQuery>& tagged,
    const std::unordered_map<std::string, QueryMetrics>& metrics_by_record,
    const MetricsConfig& config, bool group_by_language) {
  struct Accumulator {
    std::string kind;
    size_t query_count = 0;
    std::set<std::string> sessions;
    double effort_sum = 0.0;
    size_t success_sum = 0;
    double word_sum = 0.0;
  };

  std::map<std::pair<std::string, std::string>, Accumulator> groups;
  for (const auto& q : tagged) {
    if (!q.tag) continue;
    if (q.session_id.empty())
      throw ValidationError("tagged query without session id: " + q.record_id);
    auto mit = metrics_by_record.find(q.record_id);
    if (mit == metrics_by_record.end())
      throw ValidationError("tagged query without metrics: " + q.record_id);

    std::pair<std::string, std::string> key{q.tag->canonical_key,
                                            group_by_language ? q.language : ""};
    Accumulator& acc = groups[key];
    if (acc.query_count == 0) acc.kind = exception_class_name(q.tag->kind);
    ++acc.query_count;
    acc.sessions.insert(q.session_id);
    acc.effort_sum += mit->second.total_dwell_seconds;
    acc.success_sum += static_cast<size_t>(mit->second.success);
    acc.word_sum += mit->second.word_count;
  }

  std::vector<ExceptionStats> rows;
  for (const auto& [key, acc] : groups) {
    if (acc.sessions.size() < static_cast<size_t>(config.min_sessions)) continue;
    ExceptionStats s;
    s.canonical_key = key.first;
    s.language = key.second;
    s.kind = acc.kind;
    s.query_count = acc.query_count;
    s.unique_sessions = acc.sessions.size();
    double n = static_cast<double>(acc.query_count);
    s.mean_effort_seconds = acc.effort_sum / n;
    s.success_rate = static_cast<double>(acc.success_sum) / n;
    s.mean_word_count = acc.word_sum / n;
    rows.push_back(std::move(s));
  }
  std::sort(rows.begin(), rows.end(), [](const ExceptionStats& a, const ExceptionStats& b) {
    if (a.unique_sessions != b.unique_sessions) return a.unique_sessions > b.unique_sessions;
    if (a.canonical_key != b.canonical_key) return a.canonical_key < b.canonical_key;
    return a.language < b.language;
  });
  return rows;
}

std::string url_host(const std::string& url) {
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) return "";
  size_t begin = scheme + 3;
  size_t end = url.find_first_of("/?#", begin);
  if (end == std::string::npos) end = url.size();
  std::string host = to_lower(url.substr(begin, end - begin));
  // strip userinfo and port
  size_t at = host.rfind('@');
  if (at != std::string::npos) host = host.substr(at + 1);
  size_t colon = host.find(':');
  if (colon != std::string::npos) host = host.substr(0, colon);
  if (host.rfind("www.", 0) == 0) host = host.substr(4);
  return host;
}

DomainResult domain_popularity(const std::vector<SearchRecord>& tagged_records) {
  DomainResult result;
  std::map<std::string, size_t> counts;
  for (const auto& r : tagged_records) {
    for (const auto& c : r.clicks) {
      std::string host = url_host(c.url);
      if (host.empty()) {
        result.diagnostics.push_back("record " + r.record_id + ": unparseable click url: " + c.url);
        continue;
      }
      counts[host]++;
    }
  }
  result.ranking.reserve(counts.size());
  for (const auto& [domain, n] : counts) result.ranking.push_back({domain, n});
  std::sort(result.ranking.begin(), result.ranking.end(),
            [](const DomainCount& a, const DomainCount& b) {
              if (a.clicks != b.clicks) return a.clicks > b.clicks;
              return a.domain < b.domain;
            });
  return result;
}

}  // namespace exmine
