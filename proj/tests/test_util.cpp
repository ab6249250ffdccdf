#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exmine/util/csv.hpp"
#include "exmine/util/error.hpp"
#include "exmine/util/fnv.hpp"
#include "exmine/util/numfmt.hpp"
#include "exmine/util/parallel.hpp"
#include "exmine/util/rng.hpp"
#include "exmine/util/strings.hpp"
#include "exmine/util/textfile.hpp"

using namespace exmine;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rng matches the published splitmix64 stream") {
  // Reference outputs of splitmix64 for state 0 (Vigna's public-domain code).
  Rng rng(0);
  CHECK(rng.next_u64() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next_u64() == 0x06c45d188009454fULL);
}

TEST_CASE("rng is deterministic per seed and differs across seeds") {
  Rng a(42), b(42), c(43);
  std::vector<uint64_t> sa, sb, sc;
  for (int i = 0; i < 64; ++i) {
    sa.push_back(a.next_u64());
    sb.push_back(b.next_u64());
    sc.push_back(c.next_u64());
  }
  CHECK(sa == sb);
  CHECK(sa != sc);
}

TEST_CASE("next_below stays in range and hits every residue") {
  Rng rng(7);
  std::set<uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    uint64_t x = rng.next_below(7);
    REQUIRE(x < 7);
    seen.insert(x);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("next_int covers both inclusive endpoints") {
  Rng rng(11);
  bool lo = false, hi = false;
  for (int i = 0; i < 2000; ++i) {
    int64_t x = rng.next_int(-3, 3);
    REQUIRE(x >= -3);
    REQUIRE(x <= 3);
    lo = lo || x == -3;
    hi = hi || x == 3;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("next_double is in [0, 1) with a plausible mean") {
  Rng rng(5);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double x = rng.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  CHECK(sum / 10000.0 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("shuffle permutes without losing elements") {
  Rng rng(3);
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  std::vector<int> orig = v;
  rng.shuffle(v);
  CHECK(v != orig);  // 1/100! chance; deterministic seed makes it stable
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == orig);
}

TEST_CASE("sample_without_replacement yields k distinct in-range indices") {
  Rng rng(9);
  auto picks = rng.sample_without_replacement(50, 20);
  REQUIRE(picks.size() == 20);
  std::set<size_t> uniq(picks.begin(), picks.end());
  CHECK(uniq.size() == 20);
  for (size_t p : picks) CHECK(p < 50);

  auto all = rng.sample_without_replacement(5, 5);
  std::set<size_t> every(all.begin(), all.end());
  CHECK(every.size() == 5);
}

TEST_CASE("fnv1a64 reproduces the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("fnv1a64 folds incrementally") {
  uint64_t whole = fnv1a64("hello world");
  uint64_t folded = fnv1a64(" world", fnv1a64("hello"));
  CHECK(whole == folded);
}

TEST_CASE("fnv1a64_hex is 16 lowercase hex chars") {
  std::string h = fnv1a64_hex("foobar");
  CHECK(h == "85944171f73967e8");
  CHECK(fnv1a64_hex("").size() == 16);
}

TEST_CASE("string helpers") {
  CHECK(to_lower("MiXeD 123") == "mixed 123");
  CHECK(is_ascii("plain ascii"));
  CHECK_FALSE(is_ascii("caf\xc3\xa9"));
  CHECK(starts_with_ci("JavaScript", "java"));
  CHECK_FALSE(starts_with_ci("jav", "java"));
  CHECK(find_ci("one ERROR two", "error") == 4);
  CHECK(find_ci("one ERROR two", "error", 5) == std::string_view::npos);
  CHECK(contains_ci("Exception in thread", "EXCEPT"));
  CHECK_FALSE(contains_ci("exertion", "exception"));
  CHECK(trim("  x \t") == "x");
  CHECK(trim("") == "");
  CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split("", ',') == std::vector<std::string>{""});
}

TEST_CASE("csv_escape quotes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
  std::ostringstream os;
  write_csv_row(os, {"a", "b,c", "d"});
  CHECK(os.str() == "a,\"b,c\",d\n");
}

TEST_CASE("number formatting is locale-independent and round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-7) == "-2.5e-07");
  CHECK(format_fixed(3.14159, 2) == "3.14");
  CHECK(format_fixed(2.0, 4) == "2.0000");
  CHECK(format_u64(18446744073709551615ULL) == "18446744073709551615");
}

TEST_CASE("textfile round-trip and line entries") {
  std::string path = temp_path("exmine_util_test.txt");
  write_file(path, "# comment\n\n  java.io.IOException  \r\nvalue two\n#tail\n");
  CHECK(read_file(path) == "# comment\n\n  java.io.IOException  \r\nvalue two\n#tail\n");
  auto entries = load_line_entries(path);
  CHECK(entries == std::vector<std::string>{"java.io.IOException", "value two"});
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file(path), RuntimeFailure);
  CHECK_THROWS_AS(load_line_entries(path), RuntimeFailure);
}

TEST_CASE("parallel_map_chunks preserves chunk order") {
  auto chunks = parallel_map_chunks<std::pair<size_t, size_t>>(
      10, 3, 4, [](size_t b, size_t e) { return std::make_pair(b, e); });
  REQUIRE(chunks.size() == 4);
  CHECK(chunks[0] == std::make_pair<size_t, size_t>(0, 3));
  CHECK(chunks[1] == std::make_pair<size_t, size_t>(3, 6));
  CHECK(chunks[2] == std::make_pair<size_t, size_t>(6, 9));
  CHECK(chunks[3] == std::make_pair<size_t, size_t>(9, 10));
}

TEST_CASE("parallel_map_chunks result is worker-count independent") {
  auto run = [](unsigned workers) {
    return parallel_map_chunks<double>(1000, 7, workers, [](size_t b, size_t e) {
      double s = 0.0;
      for (size_t i = b; i < e; ++i) s += static_cast<double>(i) * 0.25;
      return s;
    });
  };
  CHECK(run(1) == run(4));
  CHECK(run(2) == run(8));
}

TEST_CASE("parallel_map_chunks handles the empty range") {
  auto chunks = parallel_map_chunks<int>(0, 8, 4, [](size_t, size_t) { return 1; });
  CHECK(chunks.empty());
}

TEST_CASE("parallel_map_chunks rethrows a worker exception") {
  CHECK_THROWS_AS(parallel_map_chunks<int>(100, 1, 4,
                                           [](size_t b, size_t) -> int {
                                             if (b == 57) throw RuntimeFailure("boom");
                                             return 0;
                                           }),
                  RuntimeFailure);
}

TEST_CASE("error types are distinguishable std::runtime_errors") {
  ValidationError v("bad input");
  RuntimeFailure r("io fault");
  CHECK(std::string(v.what()) == "bad input");
  CHECK(std::string(r.what()) == "io fault");
  const std::runtime_error& base = v;
  CHECK(std::string(base.what()) == "bad input");
}
