#include "exmine/log/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "exmine/util/error.hpp"

namespace exmine {
namespace {

using nlohmann::json;

int64_t require_int(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing field: ") + key);
  if (!it->is_number_integer() && !it->is_number_unsigned())
    throw ValidationError(std::string("field is not an integer: ") + key);
  return it->get<int64_t>();
}

std::string require_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing field: ") + key);
  if (!it->is_string()) throw ValidationError(std::string("field is not a string: ") + key);
  return it->get<std::string>();
}

std::string optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return "";
  if (!it->is_string()) throw ValidationError(std::string("field is not a string: ") + key);
  return it->get<std::string>();
}

SearchRecord record_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("line is not a JSON object");
  SearchRecord r;
  r.record_id = require_string(j, "record_id");
  if (r.record_id.empty()) throw ValidationError("record_id is empty");
  r.client_id = require_string(j, "client_id");
  if (r.client_id.empty()) throw ValidationError("client_id is empty");
  r.timestamp = require_int(j, "timestamp");
  if (r.timestamp < 0) throw ValidationError("timestamp is negative");
  r.raw_query = require_string(j, "raw_query");
  r.locale = optional_string(j, "locale");
  r.region = optional_string(j, "region");

  if (auto it = j.find("result_urls"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw ValidationError("result_urls is not an array");
    for (const auto& u : *it) {
      if (!u.is_string()) throw ValidationError("result_urls entry is not a string");
      r.result_urls.push_back(u.get<std::string>());
    }
  }
  if (auto it = j.find("clicks"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw ValidationError("clicks is not an array");
    for (const auto& c : *it) {
      if (!c.is_object()) throw ValidationError("clicks entry is not an object");
      ClickEvent e;
      e.url = require_string(c, "url");
      e.click_order = static_cast<int>(require_int(c, "click_order"));
      auto dit = c.find("dwell_seconds");
      if (dit == c.end() || !dit->is_number())
        throw ValidationError("clicks entry missing numeric dwell_seconds");
      e.dwell_seconds = dit->get<double>();
      if (e.dwell_seconds < 0) throw ValidationError("dwell_seconds is negative");
      r.clicks.push_back(std::move(e));
    }
  }

  // click_order must be exactly 1..n and every click must reference a result
  std::vector<int> orders;
  for (const auto& c : r.clicks) {
    orders.push_back(c.click_order);
    if (std::find(r.result_urls.begin(), r.result_urls.end(), c.url) == r.result_urls.end())
      throw ValidationError("click url not present in result_urls: " + c.url);
  }
  std::sort(orders.begin(), orders.end());
  for (size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] != static_cast<int>(i) + 1)
      throw ValidationError("click_order values are not 1..n without gaps");
  }
  return r;
}

json record_to_json(const SearchRecord& r) {
  json clicks = json::array();
  for (const auto& c : r.clicks) {
    clicks.push_back({{"url", c.url},
                      {"click_order", c.click_order},
                      {"dwell_seconds", c.dwell_seconds}});
  }
  return json{{"record_id", r.record_id},
              {"client_id", r.client_id},
              {"timestamp", r.timestamp},
              {"raw_query", r.raw_query},
              {"locale", r.locale},
              {"region", r.region},
              {"result_urls", r.result_urls},
              {"clicks", clicks}};
}

std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> cols;
  size_t start = 0;
  for (;;) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

SearchRecord record_from_tsv(const std::string& line) {
  auto cols = split_tsv(line);
  if (cols.size() != 8)
    throw ValidationError("expected 8 tab-separated columns, got " + std::to_string(cols.size()));
  json j{{"record_id", cols[0]}, {"client_id", cols[1]},   {"raw_query", cols[3]},
         {"locale", cols[4]},    {"region", cols[5]}};
  try {
    j["timestamp"] = json::parse(cols[2]);
    j["result_urls"] = json::parse(cols[6]);
    j["clicks"] = json::parse(cols[7]);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad JSON column: ") + e.what());
  }
  return record_from_json(j);
}

std::string record_to_tsv(const SearchRecord& r) {
  auto check = [](const std::string& s, const char* what) {
    if (s.find('\t') != std::string::npos || s.find('\n') != std::string::npos)
      throw ValidationError(std::string(what) + " contains a tab or newline; not representable as TSV");
    return s;
  };
  json j = record_to_json(r);
  std::string out;
  out += check(r.record_id, "record_id");
  out += '\t';
  out += check(r.client_id, "client_id");
  out += '\t';
  out += j["timestamp"].dump();
  out += '\t';
  out += check(r.raw_query, "raw_query");
  out += '\t';
  out += check(r.locale, "locale");
  out += '\t';
  out += check(r.region, "region");
  out += '\t';
  out += j["result_urls"].dump();
  out += '\t';
  out += j["clicks"].dump();
  return out;
}

}  // namespace

LogFormat log_format_from_string(const std::string& name) {
  if (name == "jsonl") return LogFormat::kJsonl;
  if (name == "tsv") return LogFormat::kTsv;
  throw ValidationError("unknown log format: " + name + " (expected jsonl or tsv)");
}

SearchRecord parse_record_line(const std::string& line, LogFormat format) {
  if (format == LogFormat::kTsv) return record_from_tsv(line);
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad JSON: ") + e.what());
  }
  return record_from_json(j);
}

IngestResult ingest_stream(std::istream& in, LogFormat format) {
  IngestResult result;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      SearchRecord r = parse_record_line(line, format);
      r.source_line = line_no;
      result.records.push_back(std::move(r));
    } catch (const ValidationError& e) {
      result.diagnostics.push_back({line_no, e.what()});
    }
  }
  return result;
}

IngestResult ingest(const std::string& path, LogFormat format) {
  std::ifstream in(path);
  if (!in) throw RuntimeFailure("cannot open input: " + path);
  return ingest_stream(in, format);
}

std::string serialize_record(const SearchRecord& r, LogFormat format) {
  if (format == LogFormat::kTsv) return record_to_tsv(r);
  return record_to_json(r).dump();
}

void serialize(const std::vector<SearchRecord>& records, std::ostream& out, LogFormat format) {
  for (const auto& r : records) out << serialize_record(r, format) << '\n';
}

}  // namespace exmine
