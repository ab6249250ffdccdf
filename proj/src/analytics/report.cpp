#include "exmine/analytics/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "exmine/util/csv.hpp"
#include "exmine/util/error.hpp"
#include "exmine/util/numfmt.hpp"

namespace exmine {
namespace {

using nlohmann::json;

void write_stat_rows(std::ostream& os, const std::vector<ExceptionStats>& rows,
                     const std::string& value_header,
                     double (*value_of)(const ExceptionStats&)) {
  os << "exception,kind,language,unique_sessions," << value_header << "\n";
  for (const auto& r : rows) {
    write_csv_row(os, {r.canonical_key, r.kind, r.language, format_u64(r.unique_sessions),
                       format_double(value_of(r))});
  }
}

json stats_to_json(const std::vector<ExceptionStats>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"exception", r.canonical_key},
                   {"kind", r.kind},
                   {"language", r.language},
                   {"query_count", r.query_count},
                   {"unique_sessions", r.unique_sessions},
                   {"mean_effort_seconds", r.mean_effort_seconds},
                   {"success_rate", r.success_rate},
                   {"mean_word_count", r.mean_word_count}});
  }
  return arr;
}

json test_to_json(const std::string& comparison, const StatTestResult& t) {
  json j{{"comparison", comparison}, {"group_a", t.group_a}, {"group_b", t.group_b},
         {"n_a", t.n_a},             {"n_b", t.n_b},         {"mean_a", t.mean_a},
         {"mean_b", t.mean_b},       {"df", t.df},           {"p_value", t.p_value}};
  // JSON has no infinity literal; degenerate t statistics become null.
  if (std::isfinite(t.t)) {
    j["t"] = t.t;
  } else {
    j["t"] = nullptr;
  }
  return j;
}

void write_to(const std::string& path, void (*writer)(std::ostream&, const AnalysisReport&),
              const AnalysisReport& report) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw RuntimeFailure("cannot open file for write: " + path);
  writer(os, report);
  os.flush();
  if (!os) throw RuntimeFailure("write error: " + path);
}

}  // namespace

void write_popularity_csv(std::ostream& os, const std::vector<ExceptionStats>& rows) {
  os << "exception,kind,language,unique_sessions,query_count\n";
  for (const auto& r : rows) {
    write_csv_row(os, {r.canonical_key, r.kind, r.language, format_u64(r.unique_sessions),
                       format_u64(r.query_count)});
  }
}

void write_effort_csv(std::ostream& os, const std::vector<ExceptionStats>& rows) {
  write_stat_rows(os, rows, "mean_effort_seconds",
                  [](const ExceptionStats& r) { return r.mean_effort_seconds; });
}

void write_success_csv(std::ostream& os, const std::vector<ExceptionStats>& rows) {
  write_stat_rows(os, rows, "success_rate",
                  [](const ExceptionStats& r) { return r.success_rate; });
}

void write_wordcount_csv(std::ostream& os, const std::vector<ExceptionStats>& rows) {
  write_stat_rows(os, rows, "mean_word_count",
                  [](const ExceptionStats& r) { return r.mean_word_count; });
}

void write_domains_csv(std::ostream& os, const std::vector<DomainCount>& ranking) {
  os << "domain,click_count\n";
  for (const auto& d : ranking) write_csv_row(os, {d.domain, format_u64(d.clicks)});
}

void write_tests_csv(std::ostream& os,
                     const std::vector<std::pair<std::string, StatTestResult>>& tests) {
  os << "comparison,group_a,group_b,n_a,n_b,mean_a,mean_b,t_statistic,degrees_of_freedom,p_value\n";
  for (const auto& [name, t] : tests) {
    write_csv_row(os, {name, t.group_a, t.group_b, format_u64(t.n_a), format_u64(t.n_b),
                       format_double(t.mean_a), format_double(t.mean_b), format_double(t.t),
                       format_double(t.df), format_double(t.p_value)});
  }
}

std::vector<std::string> write_all_reports(const AnalysisReport& report,
                                           const std::string& out_dir) {
  write_to(out_dir + "/popularity.csv",
           [](std::ostream& os, const AnalysisReport& r) { write_popularity_csv(os, r.stats); },
           report);
  write_to(out_dir + "/effort.csv",
           [](std::ostream& os, const AnalysisReport& r) { write_effort_csv(os, r.stats); },
           report);
  write_to(out_dir + "/success.csv",
           [](std::ostream& os, const AnalysisReport& r) { write_success_csv(os, r.stats); },
           report);
  write_to(out_dir + "/wordcount.csv",
           [](std::ostream& os, const AnalysisReport& r) { write_wordcount_csv(os, r.stats); },
           report);
  write_to(out_dir + "/domains.csv",
           [](std::ostream& os, const AnalysisReport& r) {
             write_domains_csv(os, r.domains.ranking);
           },
           report);
  write_to(out_dir + "/tests.csv",
           [](std::ostream& os, const AnalysisReport& r) { write_tests_csv(os, r.tests); },
           report);

  json tests = json::array();
  for (const auto& [name, t] : report.tests) tests.push_back(test_to_json(name, t));
  json diag = json::array();
  for (const auto& d : report.domains.diagnostics) diag.push_back(d);
  json domains = json::array();
  for (const auto& d : report.domains.ranking)
    domains.push_back({{"domain", d.domain}, {"click_count", d.clicks}});
  json bundle{{"record_count", report.record_count},
              {"session_count", report.session_count},
              {"tagged_query_count", report.tagged_query_count},
              {"exceptions", stats_to_json(report.stats)},
              {"exceptions_by_language", stats_to_json(report.stats_by_language)},
              {"domains", domains},
              {"domain_diagnostics", diag},
              {"tests", tests}};
  std::ofstream os(out_dir + "/report.json", std::ios::binary | std::ios::trunc);
  if (!os) throw RuntimeFailure("cannot open file for write: " + out_dir + "/report.json");
  os << bundle.dump(2) << '\n';
  if (!os) throw RuntimeFailure("write error: " + out_dir + "/report.json");

  return {"popularity.csv", "effort.csv", "success.csv", "wordcount.csv",
          "domains.csv",    "tests.csv",  "report.json"};
}

namespace {

std::vector<ExceptionStats> stats_from_json(const json& arr, const char* where) {
  if (!arr.is_array()) throw ValidationError(std::string(where) + ": expected an array");
  std::vector<ExceptionStats> rows;
  for (const auto& j : arr) {
    ExceptionStats r;
    r.canonical_key = j.at("exception").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.language = j.at("language").get<std::string>();
    r.query_count = j.at("query_count").get<size_t>();
    r.unique_sessions = j.at("unique_sessions").get<size_t>();
    r.mean_effort_seconds = j.at("mean_effort_seconds").get<double>();
    r.success_rate = j.at("success_rate").get<double>();
    r.mean_word_count = j.at("mean_word_count").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

AnalysisReport load_report_bundle(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw RuntimeFailure("cannot open report bundle: " + path);
  json bundle;
  try {
    bundle = json::parse(is);
  } catch (const json::exception& e) {
    throw ValidationError("malformed report bundle " + path + ": " + e.what());
  }
  AnalysisReport report;
  try {
    report.record_count = bundle.at("record_count").get<size_t>();
    report.session_count = bundle.at("session_count").get<size_t>();
    report.tagged_query_count = bundle.at("tagged_query_count").get<size_t>();
    report.stats = stats_from_json(bundle.at("exceptions"), "exceptions");
    report.stats_by_language =
        stats_from_json(bundle.at("exceptions_by_language"), "exceptions_by_language");
    for (const auto& j : bundle.at("domains")) {
      report.domains.ranking.push_back(
          {j.at("domain").get<std::string>(), j.at("click_count").get<size_t>()});
    }
    for (const auto& d : bundle.at("domain_diagnostics"))
      report.domains.diagnostics.push_back(d.get<std::string>());
    for (const auto& j : bundle.at("tests")) {
      StatTestResult t;
      t.group_a = j.at("group_a").get<std::string>();
      t.group_b = j.at("group_b").get<std::string>();
      t.n_a = j.at("n_a").get<size_t>();
      t.n_b = j.at("n_b").get<size_t>();
      t.mean_a = j.at("mean_a").get<double>();
      t.mean_b = j.at("mean_b").get<double>();
      t.df = j.at("df").get<double>();
      t.p_value = j.at("p_value").get<double>();
      const auto& tj = j.at("t");
      if (tj.is_null()) {
        // written for infinite t; equal means never produce one
        t.t = t.mean_a > t.mean_b ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
      } else {
        t.t = tj.get<double>();
      }
      report.tests.emplace_back(j.at("comparison").get<std::string>(), std::move(t));
    }
  } catch (const json::exception& e) {
    throw ValidationError("malformed report bundle " + path + ": " + e.what());
  }
  return report;
}

}  // namespace exmine
