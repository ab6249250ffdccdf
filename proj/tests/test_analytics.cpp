// Analytics: query metrics, aggregation on a hand-computed fixture, domain
// ranking, Welch t-test vs a frozen reference fixture, kappa, NER scoring.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "exmine/analytics/evaluate.hpp"
#include "exmine/analytics/metrics.hpp"
#include "exmine/analytics/stats.hpp"
#include "exmine/util/error.hpp"

using namespace exmine;

namespace {

SearchRecord clicked_record(const std::string& query, std::vector<double> dwells) {
  SearchRecord r;
  r.record_id = "r";
  r.client_id = "c";
  r.raw_query = query;
  int order = 1;
  for (double d : dwells) {
    std::string url = "https://example.com/" + std::to_string(order);
    r.result_urls.push_back(url);
    r.clicks.push_back({url, order, d});
    ++order;
  }
  return r;
}

struct FixtureRow {
  const char* id;
  const char* key;
  ExceptionClass kind;
  const char* session;
  const char* language;
  double effort;
  int success;
  int word_count;
};

// 20 tagged queries in 4 groups; every aggregate below is hand-computed.
const FixtureRow kFixture[] = {
    // "2006" (ID): sessions {s1,s2,s3,s4,s5} -> 5 unique; effort mean 300;
    // success 4/8; word-count mean 4. First five rows are java.
    {"q01", "2006", ExceptionClass::kId, "s1", "java", 100, 1, 2},
    {"q02", "2006", ExceptionClass::kId, "s1", "java", 200, 1, 3},
    {"q03", "2006", ExceptionClass::kId, "s2", "java", 300, 0, 4},
    {"q04", "2006", ExceptionClass::kId, "s2", "java", 400, 0, 5},
    {"q05", "2006", ExceptionClass::kId, "s3", "java", 500, 1, 6},
    {"q06", "2006", ExceptionClass::kId, "s4", "", 600, 0, 7},
    {"q07", "2006", ExceptionClass::kId, "s5", "", 50, 1, 2},
    {"q08", "2006", ExceptionClass::kId, "s5", "", 250, 0, 3},
    // "ioexception" (NAME): 4 unique sessions; effort mean 40; success 4/7;
    // word-count mean 4.
    {"q09", "ioexception", ExceptionClass::kName, "s6", "python", 10, 1, 1},
    {"q10", "ioexception", ExceptionClass::kName, "s6", "python", 20, 1, 2},
    {"q11", "ioexception", ExceptionClass::kName, "s7", "python", 30, 1, 3},
    {"q12", "ioexception", ExceptionClass::kName, "s8", "python", 40, 0, 4},
    {"q13", "ioexception", ExceptionClass::kName, "s9", "python", 50, 0, 5},
    {"q14", "ioexception", ExceptionClass::kName, "s9", "python", 60, 0, 6},
    {"q15", "ioexception", ExceptionClass::kName, "s9", "python", 70, 1, 7},
    // "importerror" (NAME): 2 unique sessions; effort mean 20; success 1/2;
    // word-count mean 5.
    {"q16", "importerror", ExceptionClass::kName, "s10", "python", 5, 0, 2},
    {"q17", "importerror", ExceptionClass::kName, "s11", "python", 15, 0, 4},
    {"q18", "importerror", ExceptionClass::kName, "s11", "python", 25, 1, 6},
    {"q19", "importerror", ExceptionClass::kName, "s10", "python", 35, 1, 8},
    // "404" (ID): a single session, dropped by any threshold above 1.
    {"q20", "404", ExceptionClass::kId, "s12", "", 600, 1, 1},
};

void build_fixture(std::vector<TaggedQuery>& tagged,
                   std::unordered_map<std::string, QueryMetrics>& metrics) {
  for (const auto& row : kFixture) {
    TaggedQuery q;
    q.record_id = row.id;
    q.session_id = row.session;
    q.language = row.language;
    ExceptionTag tag;
    tag.kind = row.kind;
    tag.surface = row.key;
    tag.canonical_key = row.key;
    q.tag = tag;
    tagged.push_back(q);
    metrics[row.id] = {row.id, row.effort, row.success, row.word_count};
  }
}

struct WelchCase {
  std::vector<double> a;
  std::vector<double> b;
  double t;
  double df;
  double p;
};

const std::vector<WelchCase> kWelchCases = {
#include "data/welch_cases.inc"
};

}  // namespace

TEST_CASE("metrics: dwell cap, last-click SAT rule, word count") {
  MetricsConfig cfg;

  auto capped = compute_query_metrics(clicked_record("some error", {700}), cfg);
  CHECK(capped.total_dwell_seconds == 600.0);
  CHECK(capped.success == 1);  // capped 600 still exceeds the threshold

  // Success follows the click with the highest click_order, not click count.
  auto last_short = compute_query_metrics(clicked_record("q", {40, 10}), cfg);
  CHECK(last_short.success == 0);
  auto last_long = compute_query_metrics(clicked_record("q", {10, 40}), cfg);
  CHECK(last_long.success == 1);

  // Strictly more than 30 seconds.
  CHECK(compute_query_metrics(clicked_record("q", {10, 30}), cfg).success == 0);
  CHECK(compute_query_metrics(clicked_record("q", {10, 30.5}), cfg).success == 1);

  auto total = compute_query_metrics(clicked_record("q", {700, 100, 50}), cfg);
  CHECK(total.total_dwell_seconds == 750.0);  // 600 + 100 + 50

  auto words = compute_query_metrics(clicked_record("error 2006 (hy000) at line 462", {60}), cfg);
  CHECK(words.word_count == 6);

  SearchRecord no_clicks;
  no_clicks.record_id = "x";
  no_clicks.raw_query = "q";
  CHECK_THROWS_AS((void)compute_query_metrics(no_clicks, cfg), ValidationError);
}

TEST_CASE("metrics: capping is monotone and order conventions hold") {
  MetricsConfig cfg;
  // Raising any raw dwell never lowers the total.
  double prev = 0.0;
  for (double d : {10.0, 100.0, 599.0, 600.0, 601.0, 10000.0}) {
    double total = compute_query_metrics(clicked_record("q", {d, 20}), cfg).total_dwell_seconds;
    CHECK(total >= prev);
    prev = total;
  }

  // Click storage order is irrelevant: click_order decides everything.
  SearchRecord a = clicked_record("q", {40, 10});
  SearchRecord b = a;
  std::swap(b.clicks[0], b.clicks[1]);
  auto ma = compute_query_metrics(a, cfg);
  auto mb = compute_query_metrics(b, cfg);
  CHECK(ma.total_dwell_seconds == mb.total_dwell_seconds);
  CHECK(ma.success == mb.success);

  // Swapping the click_order values flips which dwell counts as "last".
  SearchRecord c = clicked_record("q", {40, 10});
  c.clicks[0].click_order = 2;
  c.clicks[1].click_order = 1;
  CHECK(compute_query_metrics(c, cfg).success == 1);
}

TEST_CASE("aggregate: hand-computed fixture matches exactly") {
  std::vector<TaggedQuery> tagged;
  std::unordered_map<std::string, QueryMetrics> metrics;
  build_fixture(tagged, metrics);

  MetricsConfig cfg;
  cfg.min_sessions = 2;
  auto rows = aggregate_exception_stats(tagged, metrics, cfg);
  REQUIRE(rows.size() == 3);  // "404" has one session and is dropped

  CHECK(rows[0].canonical_key == "2006");
  CHECK(rows[0].kind == "ID");
  CHECK(rows[0].query_count == 8);
  CHECK(rows[0].unique_sessions == 5);
  CHECK(rows[0].mean_effort_seconds == doctest::Approx(300.0).epsilon(1e-12));
  CHECK(rows[0].success_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows[0].mean_word_count == doctest::Approx(4.0).epsilon(1e-12));

  CHECK(rows[1].canonical_key == "ioexception");
  CHECK(rows[1].kind == "NAME");
  CHECK(rows[1].query_count == 7);
  CHECK(rows[1].unique_sessions == 4);
  CHECK(rows[1].mean_effort_seconds == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(rows[1].success_rate == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(rows[1].mean_word_count == doctest::Approx(4.0).epsilon(1e-12));

  CHECK(rows[2].canonical_key == "importerror");
  CHECK(rows[2].unique_sessions == 2);
  CHECK(rows[2].mean_effort_seconds == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(rows[2].success_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows[2].mean_word_count == doctest::Approx(5.0).epsilon(1e-12));

  // Tighter threshold keeps only the biggest group; looser keeps all four,
  // and the group query counts then sum to the fixture size.
  cfg.min_sessions = 5;
  auto top = aggregate_exception_stats(tagged, metrics, cfg);
  REQUIRE(top.size() == 1);
  CHECK(top[0].canonical_key == "2006");

  cfg.min_sessions = 1;
  auto all = aggregate_exception_stats(tagged, metrics, cfg);
  REQUIRE(all.size() == 4);
  CHECK(all[3].canonical_key == "404");
  CHECK(all[3].unique_sessions == 1);
  size_t total_queries = 0;
  for (const auto& r : all) total_queries += r.query_count;
  CHECK(total_queries == 20);
}

TEST_CASE("aggregate: language grouping splits keys and keeps the sort rules") {
  std::vector<TaggedQuery> tagged;
  std::unordered_map<std::string, QueryMetrics> metrics;
  build_fixture(tagged, metrics);

  MetricsConfig cfg;
  cfg.min_sessions = 2;
  auto rows = aggregate_exception_stats(tagged, metrics, cfg, /*group_by_language=*/true);
  REQUIRE(rows.size() == 4);

  // unique_sessions desc, then key asc: ioexception(4), 2006/java(3),
  // 2006/""(2) before importerror(2).
  CHECK(rows[0].canonical_key == "ioexception");
  CHECK(rows[0].language == "python");
  CHECK(rows[0].unique_sessions == 4);

  CHECK(rows[1].canonical_key == "2006");
  CHECK(rows[1].language == "java");
  CHECK(rows[1].unique_sessions == 3);
  CHECK(rows[1].query_count == 5);
  CHECK(rows[1].mean_effort_seconds == doctest::Approx(300.0).epsilon(1e-12));
  CHECK(rows[1].success_rate == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(rows[1].mean_word_count == doctest::Approx(4.0).epsilon(1e-12));

  CHECK(rows[2].canonical_key == "2006");
  CHECK(rows[2].language == "");
  CHECK(rows[2].unique_sessions == 2);
  CHECK(rows[2].query_count == 3);
  CHECK(rows[2].mean_effort_seconds == doctest::Approx(300.0).epsilon(1e-12));
  CHECK(rows[2].success_rate == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK(rows[3].canonical_key == "importerror");
  CHECK(rows[3].language == "python");
}

TEST_CASE("domains: host normalization, tie ranking, diagnostics") {
  CHECK(url_host("https://stackoverflow.com/q/1") == "stackoverflow.com");
  CHECK(url_host("http://WWW.Example.COM/x?y#z") == "example.com");
  CHECK(url_host("https://user:pw@host.net:8080/path") == "host.net");
  CHECK(url_host("https://docs.python.org") == "docs.python.org");
  CHECK(url_host("not a url") == "");
  CHECK(url_host("") == "");

  SearchRecord r1;
  r1.record_id = "a";
  r1.clicks = {{"https://stackoverflow.com/q/1", 1, 10},
               {"http://www.stackoverflow.com/q/2", 2, 10},
               {"https://github.com/x", 3, 10}};
  SearchRecord r2;
  r2.record_id = "b";
  r2.clicks = {{"https://reddit.com/r/1", 1, 10},
               {"https://github.com/y", 2, 10},
               {"garbage-url", 3, 10}};

  auto result = domain_popularity({r1, r2});
  REQUIRE(result.ranking.size() == 3);
  // stackoverflow and github tie at two clicks each: lexicographic.
  CHECK(result.ranking[0].domain == "github.com");
  CHECK(result.ranking[0].clicks == 2);
  CHECK(result.ranking[1].domain == "stackoverflow.com");
  CHECK(result.ranking[1].clicks == 2);
  CHECK(result.ranking[2].domain == "reddit.com");
  CHECK(result.ranking[2].clicks == 1);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].find("garbage-url") != std::string::npos);

  CHECK(domain_popularity({}).ranking.empty());
}

TEST_CASE("welch: identical and degenerate samples follow the conventions") {
  std::vector<double> base = {1, 2, 3, 4, 5};
  auto same = welch_t_test(base, base);
  CHECK(same.t == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK(same.df == doctest::Approx(8.0).epsilon(1e-12));

  auto flat = welch_t_test({1, 1, 1}, {2, 2, 2});
  CHECK(flat.p_value == 0.0);
  CHECK(std::isinf(flat.t));
  CHECK(flat.t < 0);  // mean_a < mean_b
  CHECK(flat.df == doctest::Approx(4.0));

  auto flat_equal = welch_t_test({2, 2}, {2, 2});
  CHECK(flat_equal.t == 0.0);
  CHECK(flat_equal.p_value == 1.0);

  CHECK_THROWS_AS((void)welch_t_test({1}, {1, 2}), ValidationError);
  CHECK_THROWS_AS((void)welch_t_test({1, 2}, {}), ValidationError);

  auto named = welch_t_test({1, 2, 3}, {4, 5, 6}, "left", "right");
  CHECK(named.group_a == "left");
  CHECK(named.group_b == "right");
  CHECK(named.n_a == 3);
  CHECK(named.mean_b == doctest::Approx(5.0));
}

TEST_CASE("welch: matches the frozen reference fixture") {
  REQUIRE(kWelchCases.size() == 50);
  for (size_t i = 0; i < kWelchCases.size(); ++i) {
    const auto& c = kWelchCases[i];
    CAPTURE(i);
    auto r = welch_t_test(c.a, c.b);
    CHECK(std::fabs(r.t - c.t) / std::max(1.0, std::fabs(c.t)) < 1e-9);
    CHECK(std::fabs(r.df - c.df) / std::max(1.0, std::fabs(c.df)) < 1e-9);
    CHECK(std::fabs(r.p_value - c.p) < 1e-6);
    if (c.p > 1e-8) CHECK(std::fabs(r.p_value - c.p) / c.p < 1e-6);

    // Symmetry: swapping the samples negates t and keeps df and p.
    auto s = welch_t_test(c.b, c.a);
    CHECK(s.t == doctest::Approx(-r.t).epsilon(1e-12));
    CHECK(s.df == doctest::Approx(r.df).epsilon(1e-12));
    CHECK(s.p_value == doctest::Approx(r.p_value).epsilon(1e-12));
  }
}

TEST_CASE("kappa: agreement formulas and degenerate structures") {
  std::vector<std::string> ident = {"ID", "NAME", "O", "ID", "NAME"};
  auto complete = cohens_kappa(ident, ident);
  CHECK(complete.observed_agreement == 1.0);
  CHECK(complete.kappa == doctest::Approx(1.0).epsilon(1e-12));

  // 2x2 counts (4,1,1,4): p_o 0.8, p_e 0.5, kappa 0.6.
  std::vector<std::string> r1 = {"A", "A", "A", "A", "A", "B", "B", "B", "B", "B"};
  std::vector<std::string> r2 = {"A", "A", "A", "A", "B", "A", "B", "B", "B", "B"};
  auto mid = cohens_kappa(r1, r2);
  CHECK(mid.observed_agreement == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(mid.expected_agreement == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid.kappa == doctest::Approx(0.6).epsilon(1e-12));

  // Total systematic disagreement: kappa -1.
  std::vector<std::string> all_a(5, "A"), all_b(5, "B");
  std::vector<std::string> ab = all_a, ba = all_b;
  ab.insert(ab.end(), all_b.begin(), all_b.end());
  ba.insert(ba.end(), all_a.begin(), all_a.end());
  auto anti = cohens_kappa(ab, ba);
  CHECK(anti.kappa == doctest::Approx(-1.0).epsilon(1e-12));

  // Both raters constant on one category: p_e = 1 resolves to kappa 1.
  auto constant = cohens_kappa(all_a, all_a);
  CHECK(constant.expected_agreement == 1.0);
  CHECK(constant.kappa == 1.0);

  // Consistent relabeling leaves kappa unchanged.
  auto relabel = [](std::vector<std::string> v) {
    for (auto& s : v) s = (s == "A") ? "B" : "A";
    return v;
  };
  auto swapped = cohens_kappa(relabel(r1), relabel(r2));
  CHECK(swapped.kappa == doctest::Approx(mid.kappa).epsilon(1e-12));

  CHECK_THROWS_AS((void)cohens_kappa({"A"}, {"A", "B"}), ValidationError);
  CHECK_THROWS_AS((void)cohens_kappa({}, {}), ValidationError);
}

TEST_CASE("ner eval: exact-match scoring with the zero conventions") {
  auto entity = [](const char* rec, const char* cls, size_t b, size_t e) {
    return EntityRef{rec, cls, b, e};
  };

  std::vector<EntityRef> gold = {entity("r1", "ID", 0, 1), entity("r2", "ID", 3, 5)};
  auto perfect = evaluate_ner(gold, gold);
  REQUIRE(perfect.per_class.size() == 1);
  CHECK(perfect.per_class[0].cls == "ID");
  CHECK(perfect.per_class[0].precision == 1.0);
  CHECK(perfect.per_class[0].recall == 1.0);
  CHECK(perfect.per_class[0].f1 == 1.0);
  CHECK(perfect.per_class[0].support == 2);
  CHECK(perfect.macro.f1 == 1.0);

  // One correct ID, one missed ID, one spurious NAME.
  std::vector<EntityRef> predicted = {entity("r1", "ID", 0, 1), entity("r3", "NAME", 0, 2)};
  auto mixed = evaluate_ner(gold, predicted);
  REQUIRE(mixed.per_class.size() == 2);  // sorted ascending: ID, NAME
  CHECK(mixed.per_class[0].cls == "ID");
  CHECK(mixed.per_class[0].precision == doctest::Approx(1.0));
  CHECK(mixed.per_class[0].recall == doctest::Approx(0.5));
  CHECK(mixed.per_class[0].f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(mixed.per_class[1].cls == "NAME");
  CHECK(mixed.per_class[1].precision == 0.0);
  CHECK(mixed.per_class[1].recall == 0.0);
  CHECK(mixed.per_class[1].f1 == 0.0);
  CHECK(mixed.per_class[1].support == 0);
  CHECK(mixed.per_class[1].predicted == 1);
  CHECK(mixed.macro.f1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // Duplicate entities match count-aware: 2 gold copies cap the correct count.
  std::vector<EntityRef> dup_gold = {entity("r1", "ID", 0, 1), entity("r1", "ID", 0, 1)};
  std::vector<EntityRef> dup_pred = {entity("r1", "ID", 0, 1), entity("r1", "ID", 0, 1),
                                     entity("r1", "ID", 0, 1)};
  auto dup = evaluate_ner(dup_gold, dup_pred);
  CHECK(dup.per_class[0].correct == 2);
  CHECK(dup.per_class[0].precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(dup.per_class[0].recall == doctest::Approx(1.0));

  // Predicting one more truly-present entity never lowers a class F1.
  auto before = evaluate_ner(gold, {entity("r1", "ID", 0, 1)});
  auto after = evaluate_ner(gold, {entity("r1", "ID", 0, 1), entity("r2", "ID", 3, 5)});
  CHECK(after.per_class[0].f1 >= before.per_class[0].f1);

  auto empty = evaluate_ner({}, {});
  CHECK(empty.per_class.empty());
  CHECK(empty.macro.f1 == 0.0);
}

TEST_CASE("ner eval: macro averaging reproduces the reference class rows") {
  // Two class rows with (P,R,F1) = (0.89,0.69,0.78) and (0.78,0.97,0.86):
  // the unweighted means are P 0.835, R 0.83, F1 0.82.
  std::vector<ClassScore> rows(2);
  rows[0] = {"ID", 0.89, 0.69, 0.78, 169, 0, 0};
  rows[1] = {"NAME", 0.78, 0.97, 0.86, 61, 0, 0};
  auto m = macro_average(rows);
  CHECK(m.f1 == doctest::Approx(0.82).epsilon(1e-12));
  CHECK(m.recall == doctest::Approx(0.83).epsilon(1e-12));
  CHECK(std::fabs(m.precision - 0.83) <= 0.005 + 1e-12);

  // Macro of identical rows is the row itself.
  std::vector<ClassScore> twin(2, ClassScore{"X", 0.4, 0.6, 0.48, 10, 10, 4});
  auto t = macro_average(twin);
  CHECK(t.precision == doctest::Approx(0.4));
  CHECK(t.recall == doctest::Approx(0.6));
  CHECK(t.f1 == doctest::Approx(0.48));
}
