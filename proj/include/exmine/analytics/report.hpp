#pragma once

#include <string>
#include <utility>
#include <vector>

#include "exmine/analytics/metrics.hpp"
#include "exmine/analytics/stats.hpp"

namespace exmine {

struct AnalysisReport {
  std::vector<ExceptionStats> stats;              // grouped by canonical key
  std::vector<ExceptionStats> stats_by_language;  // same, split per language
  DomainResult domains;
  std::vector<std::pair<std::string, StatTestResult>> tests;  // (comparison, result)
  size_t record_count = 0;
  size_t session_count = 0;
  size_t tagged_query_count = 0;
};

// CSV emitters; headers are part of the file format.
void write_popularity_csv(std::ostream& os, const std::vector<ExceptionStats>& rows);
void write_effort_csv(std::ostream& os, const std::vector<ExceptionStats>& rows);
void write_success_csv(std::ostream& os, const std::vector<ExceptionStats>& rows);
void write_wordcount_csv(std::ostream& os, const std::vector<ExceptionStats>& rows);
void write_domains_csv(std::ostream& os, const std::vector<DomainCount>& ranking);
void write_tests_csv(std::ostream& os,
                     const std::vector<std::pair<std::string, StatTestResult>>& tests);

// Writes the six CSV tables plus report.json into out_dir and returns the
// file names written (for the manifest).
std::vector<std::string> write_all_reports(const AnalysisReport& report,
                                           const std::string& out_dir);

// Reads a report.json bundle back. A null t statistic (the serialized form
// of an infinite value) is restored to +/-inf from the group means.
AnalysisReport load_report_bundle(const std::string& path);

}  // namespace exmine
