// Log core: tokenizer, ingest round-trips, sessionization, filter gates.
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exmine/log/filter.hpp"
#include "exmine/log/ingest.hpp"
#include "exmine/log/sessionize.hpp"
#include "exmine/log/tokenize.hpp"
#include "exmine/util/error.hpp"

using namespace exmine;

namespace {

SearchRecord make_record(const std::string& id, const std::string& client, int64_t ts,
                         const std::string& query) {
  SearchRecord r;
  r.record_id = id;
  r.client_id = client;
  r.timestamp = ts;
  r.raw_query = query;
  r.locale = "en-US";
  r.region = "US";
  return r;
}

void add_click(SearchRecord& r, const std::string& url, int order, double dwell) {
  if (std::find(r.result_urls.begin(), r.result_urls.end(), url) == r.result_urls.end())
    r.result_urls.push_back(url);
  r.clicks.push_back({url, order, dwell});
}

std::vector<std::string> texts(std::string_view s, TokenizeMode mode) {
  return token_texts(tokenize(s, mode));
}

std::vector<std::string> ids_of(const std::vector<SearchRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(r.record_id);
  return out;
}

}  // namespace

TEST_CASE("tokenize: metric mode splits on space runs only") {
  CHECK(texts("error 2006 (hy000) at line 462", TokenizeMode::kMetric) ==
        std::vector<std::string>{"error", "2006", "(hy000)", "at", "line", "462"});
  CHECK(texts("", TokenizeMode::kMetric).empty());
  CHECK(texts("   ", TokenizeMode::kMetric).empty());
  CHECK(texts("one", TokenizeMode::kMetric) == std::vector<std::string>{"one"});
  CHECK(texts("  lead and trail  ", TokenizeMode::kMetric) ==
        std::vector<std::string>{"lead", "and", "trail"});
  CHECK(texts("a  b", TokenizeMode::kMetric) == std::vector<std::string>{"a", "b"});
  // Only ' ' delimits; tabs stay inside the token.
  CHECK(texts("a\tb c", TokenizeMode::kMetric) == std::vector<std::string>{"a\tb", "c"});
}

TEST_CASE("tokenize: metric count is one more than the number of space runs") {
  const std::vector<std::string> words = {"null", "pointer", "0x80070005", "at,line"};
  for (size_t n = 1; n <= words.size(); ++n) {
    for (int run = 1; run <= 3; ++run) {
      std::string s;
      for (size_t i = 0; i < n; ++i) {
        if (i) s += std::string(static_cast<size_t>(run), ' ');
        s += words[i];
      }
      CHECK(tokenize(s, TokenizeMode::kMetric).size() == n);
    }
  }
}

TEST_CASE("tokenize: feature mode detaches punctuation around words") {
  CHECK(texts("java.lang.TypeNotPresentException: Type", TokenizeMode::kFeature) ==
        std::vector<std::string>{"java.lang.TypeNotPresentException", ":", "Type"});
  CHECK(texts("error 2006 (hy000) at line 462", TokenizeMode::kFeature) ==
        std::vector<std::string>{"error", "2006", "(", "hy000", ")", "at", "line", "462"});
  CHECK(texts("LNK1189;", TokenizeMode::kFeature) == std::vector<std::string>{"LNK1189", ";"});
  CHECK(texts("(x).", TokenizeMode::kFeature) == std::vector<std::string>{"(", "x", ")", "."});
  CHECK(texts("!!", TokenizeMode::kFeature) == std::vector<std::string>{"!", "!"});
  CHECK(texts("--verbose", TokenizeMode::kFeature) ==
        std::vector<std::string>{"-", "-", "verbose"});
  CHECK(texts("", TokenizeMode::kFeature).empty());
}

TEST_CASE("tokenize: dotted identifiers and word-internal punctuation survive") {
  // '.'/':' flanked by alphanumerics are protected; at a chunk edge they are not.
  CHECK(texts("system.io.filenotfoundexception,", TokenizeMode::kFeature) ==
        std::vector<std::string>{"system.io.filenotfoundexception", ","});
  CHECK(texts(".net", TokenizeMode::kFeature) == std::vector<std::string>{".", "net"});
  CHECK(texts("python:", TokenizeMode::kFeature) == std::vector<std::string>{"python", ":"});
  CHECK(texts("12:30", TokenizeMode::kFeature) == std::vector<std::string>{"12:30"});
  // Punctuation in the middle of a chunk is never a split point.
  CHECK(texts("c:\\users", TokenizeMode::kFeature) == std::vector<std::string>{"c:\\users"});
  CHECK(texts("utf-8", TokenizeMode::kFeature) == std::vector<std::string>{"utf-8"});
  // '_' counts as a word character.
  CHECK(texts("__init__", TokenizeMode::kFeature) == std::vector<std::string>{"__init__"});
}

TEST_CASE("tokenize: offsets map every token back into the source") {
  const std::vector<std::string> samples = {
      "error 2006 (hy000) at line 462",
      "java.lang.TypeNotPresentException: Type",
      "  (weird)   spacing\twith\ttabs ",
      "0x800A03EC excel error!!",
      "c# System.Net.Sockets.SocketException:",
  };
  for (const auto& s : samples) {
    for (auto mode : {TokenizeMode::kMetric, TokenizeMode::kFeature}) {
      size_t prev_end = 0;
      for (const auto& t : tokenize(s, mode)) {
        CHECK(t.begin < t.end);
        CHECK(t.end <= s.size());
        CHECK(t.begin >= prev_end);
        CHECK(s.substr(t.begin, t.end - t.begin) == t.text);
        prev_end = t.end;
      }
    }
  }
}

TEST_CASE("ingest: serialize and parse round-trip bit-identically") {
  SearchRecord a = make_record("r1", "c9", 1559347200, "office 2016 error");
  a.result_urls = {"https://answers.microsoft.com/q/1", "https://superuser.com/q/2"};
  add_click(a, "https://superuser.com/q/2", 1, 45.5);
  SearchRecord b = make_record("r2", "c9", 1559347300, "null pointer \"quoted\" \u00e9");
  b.locale = "";
  b.region = "";

  for (auto format : {LogFormat::kJsonl, LogFormat::kTsv}) {
    for (const auto& r : {a, b}) {
      std::string line = serialize_record(r, format);
      SearchRecord back = parse_record_line(line, format);
      CHECK(serialize_record(back, format) == line);
      CHECK(back.record_id == r.record_id);
      CHECK(back.timestamp == r.timestamp);
      CHECK(back.raw_query == r.raw_query);
      CHECK(back.result_urls == r.result_urls);
      CHECK(back.clicks.size() == r.clicks.size());
    }
  }

  std::ostringstream out;
  serialize({a, b}, out, LogFormat::kJsonl);
  std::istringstream in(out.str());
  IngestResult res = ingest_stream(in, LogFormat::kJsonl);
  REQUIRE(res.records.size() == 2);
  CHECK(res.diagnostics.empty());
  CHECK(res.records[0].record_id == "r1");
  CHECK(res.records[1].record_id == "r2");
  CHECK(res.records[0].source_line == 1);
  CHECK(res.records[1].source_line == 2);
}

TEST_CASE("ingest: tsv refuses queries that cannot be represented") {
  SearchRecord r = make_record("r1", "c1", 0, "tab\there");
  CHECK_THROWS_AS((void)serialize_record(r, LogFormat::kTsv), ValidationError);
  CHECK_NOTHROW((void)serialize_record(r, LogFormat::kJsonl));
}

TEST_CASE("ingest: malformed lines are skipped and reported with line numbers") {
  SearchRecord good = make_record("ok1", "c1", 10, "error 42");
  std::ostringstream stream;
  stream << serialize_record(good, LogFormat::kJsonl) << "\n";          // line 1: fine
  stream << R"({"record_id":"x","client_id":"c1","timestamp":1})" << "\n";  // 2: no raw_query
  stream << "{not json\n";                                              // 3: parse error
  stream << R"({"record_id":"x2","client_id":"c1","timestamp":-5,"raw_query":"q"})" << "\n";  // 4
  // 5: click_order jumps 1 -> 3
  stream << R"({"record_id":"x3","client_id":"c1","timestamp":1,"raw_query":"q",)"
         << R"("result_urls":["u1","u2"],"clicks":[{"url":"u1","click_order":1,"dwell_seconds":5},)"
         << R"({"url":"u2","click_order":3,"dwell_seconds":5}]})" << "\n";
  // 6: click references a url absent from result_urls
  stream << R"({"record_id":"x4","client_id":"c1","timestamp":1,"raw_query":"q",)"
         << R"("result_urls":["u1"],"clicks":[{"url":"u9","click_order":1,"dwell_seconds":5}]})"
         << "\n";
  stream << "\r\n";                                                     // 7: blank, no diagnostic
  SearchRecord good2 = make_record("ok2", "c1", 11, "errno 13");
  stream << serialize_record(good2, LogFormat::kJsonl) << "\n";         // line 8: fine

  std::istringstream in(stream.str());
  IngestResult res = ingest_stream(in, LogFormat::kJsonl);
  REQUIRE(res.records.size() == 2);
  CHECK(res.records[0].record_id == "ok1");
  CHECK(res.records[1].record_id == "ok2");
  CHECK(res.records[1].source_line == 8);

  REQUIRE(res.diagnostics.size() == 5);
  std::vector<size_t> lines;
  for (const auto& d : res.diagnostics) {
    lines.push_back(d.line);
    CHECK(!d.message.empty());
  }
  CHECK(lines == std::vector<size_t>{2, 3, 4, 5, 6});
  CHECK(res.diagnostics[0].message.find("raw_query") != std::string::npos);
  CHECK(res.diagnostics[2].message.find("timestamp") != std::string::npos);
  CHECK(res.diagnostics[3].message.find("click_order") != std::string::npos);
  CHECK(res.diagnostics[4].message.find("u9") != std::string::npos);
}

TEST_CASE("ingest: empty input and bad paths") {
  std::istringstream empty("");
  IngestResult res = ingest_stream(empty, LogFormat::kJsonl);
  CHECK(res.records.empty());
  CHECK(res.diagnostics.empty());
  CHECK_THROWS_AS((void)ingest("/nonexistent/definitely_missing.jsonl", LogFormat::kJsonl),
                  RuntimeFailure);
  CHECK(log_format_from_string("jsonl") == LogFormat::kJsonl);
  CHECK(log_format_from_string("tsv") == LogFormat::kTsv);
  CHECK_THROWS_AS((void)log_format_from_string("csv"), ValidationError);
}

TEST_CASE("sessions: inactivity gap boundary") {
  auto at = [](int64_t ts) {
    static int n = 0;
    return make_record("r" + std::to_string(n++), "c1", ts, "q");
  };
  // Gap of 1860 s splits; exactly 1800 s stays in-session.
  auto split = segment_sessions({at(0), at(1740), at(3600)});
  REQUIRE(split.size() == 2);
  CHECK(split[0].records.size() == 2);
  CHECK(split[0].records[1].timestamp == 1740);
  CHECK(split[1].records.size() == 1);
  CHECK(split[0].session_id == "c1:0");
  CHECK(split[1].session_id == "c1:1");

  auto joined = segment_sessions({at(0), at(1800)});
  REQUIRE(joined.size() == 1);
  CHECK(joined[0].records.size() == 2);

  auto apart = segment_sessions({at(0), at(1801)});
  CHECK(apart.size() == 2);
}

TEST_CASE("sessions: clients partition records and sorting is stable") {
  std::vector<SearchRecord> records = {
      make_record("b2", "cb", 5000, "q"),  make_record("a1", "ca", 100, "q"),
      make_record("b1", "cb", 100, "q"),   make_record("a2", "ca", 90, "q"),
      make_record("tie1", "ca", 100, "q"), make_record("tie2", "ca", 100, "q"),
  };
  auto sessions = segment_sessions(records);
  // Clients ascending; cb's 100 -> 5000 gap splits it in two.
  REQUIRE(sessions.size() == 3);
  CHECK(sessions[0].client_id == "ca");
  CHECK(sessions[1].client_id == "cb");
  CHECK(sessions[2].client_id == "cb");
  CHECK(sessions[1].session_id == "cb:0");
  CHECK(sessions[2].session_id == "cb:1");

  // Within ca: sorted by timestamp, equal stamps keep input order (a1 before tie1 before tie2).
  CHECK(ids_of(sessions[0].records) ==
        std::vector<std::string>{"a2", "a1", "tie1", "tie2"});

  // Every input record lands in exactly one session.
  std::multiset<std::string> seen;
  for (const auto& s : sessions) {
    CHECK(!s.records.empty());
    for (const auto& r : s.records) {
      CHECK(r.client_id == s.client_id);
      seen.insert(r.record_id);
    }
  }
  CHECK(seen.size() == records.size());
  for (const auto& r : records) CHECK(seen.count(r.record_id) == 1);

  CHECK(segment_sessions({}).empty());
}

TEST_CASE("filter: trigger keyword must appear in the query or a clicked url") {
  FilterConfig config;

  SearchRecord kept = make_record("r1", "c1", 0, "office 2016 error");
  add_click(kept, "https://answers.microsoft.com/q", 1, 30);
  CHECK(record_passes_filter(kept, config));

  SearchRecord pizza = make_record("r2", "c1", 0, "pizza near me");
  add_click(pizza, "https://maps.example.com", 1, 30);
  CHECK(!record_passes_filter(pizza, config));

  SearchRecord no_click = make_record("r3", "c1", 0, "java.io.IOException help");
  CHECK(!record_passes_filter(no_click, config));

  // Keyword only in the clicked url counts; unclicked results do not.
  SearchRecord via_click = make_record("r4", "c1", 0, "app crashes on startup");
  add_click(via_click, "https://stackoverflow.com/q/errno-13-permission", 1, 60);
  CHECK(record_passes_filter(via_click, config));

  SearchRecord unclicked = make_record("r5", "c1", 0, "app crashes on startup");
  unclicked.result_urls = {"https://stackoverflow.com/q/errno-13-permission"};
  add_click(unclicked, "https://example.com/faq", 1, 60);
  CHECK(!record_passes_filter(unclicked, config));

  // Case-insensitive substring: "ERRORCODE" matches keyword "error".
  SearchRecord shouty = make_record("r6", "c1", 0, "APP ERRORCODE 7");
  add_click(shouty, "https://example.com", 1, 10);
  CHECK(record_passes_filter(shouty, config));
}

TEST_CASE("filter: locale, region, click, and ascii gates") {
  auto base = [] {
    SearchRecord r = make_record("r", "c", 0, "some error");
    add_click(r, "https://example.com", 1, 10);
    return r;
  };
  FilterConfig config;

  SearchRecord gb = base();
  gb.locale = "en-GB";
  gb.region = "GB";
  CHECK(!record_passes_filter(gb, config));  // region GB not allowed
  config.allowed_regions = {"US", "GB"};
  CHECK(record_passes_filter(gb, config));   // en-* wildcard covers en-GB

  SearchRecord de = base();
  de.locale = "de-DE";
  CHECK(!record_passes_filter(de, config));
  config.allowed_locales = {"de-DE"};
  CHECK(record_passes_filter(de, config));
  CHECK(!record_passes_filter(base(), config));  // en-US no longer allowed

  // Empty sets disable their gates.
  config.allowed_locales.clear();
  config.allowed_regions.clear();
  CHECK(record_passes_filter(base(), config));
  CHECK(record_passes_filter(gb, config));

  SearchRecord quiet = make_record("r", "c", 0, "some error");
  CHECK(!record_passes_filter(quiet, config));
  config.require_click = false;
  CHECK(record_passes_filter(quiet, config));

  SearchRecord accented = base();
  accented.raw_query = "erreur caf\u00e9 error";
  CHECK(!record_passes_filter(accented, config));
  config.reject_non_ascii = false;
  CHECK(record_passes_filter(accented, config));
}

TEST_CASE("filter: keeps order and is idempotent") {
  FilterConfig config;
  std::vector<SearchRecord> records;
  for (int i = 0; i < 20; ++i) {
    SearchRecord r = make_record("r" + std::to_string(i), "c", i,
                                 i % 3 == 0 ? "setup error " + std::to_string(i)
                                            : "cat pictures " + std::to_string(i));
    if (i % 2 == 0) add_click(r, "https://example.com", 1, 5);
    records.push_back(r);
  }
  auto once = filter_records(records, config);
  // Needs both the keyword (i % 3 == 0) and a click (i % 2 == 0).
  CHECK(ids_of(once) == std::vector<std::string>{"r0", "r6", "r12", "r18"});
  auto twice = filter_records(once, config);
  CHECK(ids_of(twice) == ids_of(once));
}
