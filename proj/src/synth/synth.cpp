#include "exmine/synth/synth.hpp"

#include <algorithm>
#include <ostream>

#include "exmine/log/ingest.hpp"
#include "exmine/util/error.hpp"
#include "exmine/util/rng.hpp"
#include "exmine/util/strings.hpp"

namespace exmine {
namespace {

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {
      "how",     "to",       "fix",      "windows", "when",    "install", "update",
      "failed",  "cannot",   "open",     "file",    "not",     "found",   "after",
      "upgrade", "help",     "why",      "does",    "crash",   "on",      "startup",
      "while",   "running",  "server",   "database", "during", "setup",   "service",
      "version", "issue",    "problem",  "with",    "loading", "page",    "settings",
      "account", "login",    "driver",   "printer", "network", "restart", "remove",
      "change",  "missing",  "slow",     "stuck",   "screen",  "message", "shows",
      "keeps",   "laptop",   "browser",  "email",   "sync",    "folder",  "excel",
      "outlook", "mysql",    "jenkins",  "docker",  "ubuntu",  "macos",   "android"};
  return words;
}

const std::vector<std::string>& app_words() {
  static const std::vector<std::string> words = {"outlook", "excel",  "mysql",  "ssrs",
                                                 "jenkins", "docker", "sql",    "word",
                                                 "teams",   "chrome", "photos", "git"};
  return words;
}

const std::vector<std::string>& code_prefixes() {
  static const std::vector<std::string> prefixes = {"LNK", "C", "CS", "BC", "MSB", "E", "TS"};
  return prefixes;
}

std::string pick(Rng& rng, const std::vector<std::string>& pool) {
  return pool[static_cast<size_t>(rng.next_below(pool.size()))];
}

std::string digits(Rng& rng, int min_len, int max_len) {
  int len = static_cast<int>(rng.next_int(min_len, max_len));
  std::string out;
  out.push_back(static_cast<char>('1' + rng.next_below(9)));
  for (int i = 1; i < len; ++i) out.push_back(static_cast<char>('0' + rng.next_below(10)));
  // "2016" is reserved for the noisy-group family
  if (out == "2016") out[3] = '7';
  return out;
}

std::string hex_code(Rng& rng) {
  static const char* upper = "0123456789ABCDEF";
  static const char* lower = "0123456789abcdef";
  const char* alphabet = rng.next_bool(0.5) ? upper : lower;
  int len = static_cast<int>(rng.next_int(6, 8));
  std::string out = "0x";
  for (int i = 0; i < len; ++i) out.push_back(alphabet[rng.next_below(16)]);
  return out;
}

std::string status_code(Rng& rng) {
  static const std::vector<std::string> codes = {"301", "302", "403", "404",
                                                 "500", "502", "503", "504"};
  return pick(rng, codes);
}

std::string letter_code(Rng& rng) {
  return pick(rng, code_prefixes()) + digits(rng, 3, 4);
}

std::string draw_name(Rng& rng, const std::vector<std::string>& pool) {
  std::string name = pick(rng, pool);
  return rng.next_bool(0.7) ? to_lower(name) : name;
}

void append_filler(Rng& rng, std::vector<std::string>& tokens, std::vector<std::string>& tags,
                   int count) {
  for (int i = 0; i < count; ++i) {
    tokens.push_back(pick(rng, filler_words()));
    tags.push_back("O");
  }
}

LabeledSequence positive_sequence(Rng& rng, const SynthNamePool& names, int family,
                                  const std::string& record_id) {
  std::vector<std::string> tokens, tags;
  switch (family) {
    case 0: {  // keyword-adjacent numeric code, trailing line number stays O
      static const std::vector<std::string> keywords = {"error", "errno", "exit", "hresult"};
      if (rng.next_bool(0.5)) append_filler(rng, tokens, tags, 1);
      tokens.push_back(pick(rng, keywords));
      tags.push_back("O");
      tokens.push_back(digits(rng, 3, 5));
      tags.push_back("B-EXID");
      if (rng.next_bool(0.6)) {
        tokens.push_back("at");
        tokens.push_back("line");
        tokens.push_back(digits(rng, 2, 3));
        tags.insert(tags.end(), {"O", "O", "O"});
      } else {
        append_filler(rng, tokens, tags, 2);
      }
      break;
    }
    case 1: {  // hex code
      tokens.push_back(hex_code(rng));
      tags.push_back("B-EXID");
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(1, 4)));
      break;
    }
    case 2: {  // letter-prefixed code, sometimes with the ';' glued on
      tokens.push_back(letter_code(rng));
      tags.push_back("B-EXID");
      if (rng.next_bool(0.5)) {
        tokens.push_back(";");
        tags.push_back("I-EXID");
      }
      tokens.push_back(digits(rng, 4, 5));
      tags.push_back("O");
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(0, 2)));
      break;
    }
    case 3: {  // HTTP status line
      tokens.push_back(status_code(rng));
      tags.push_back("B-EXID");
      tokens.push_back(rng.next_bool(0.5) ? "get" : "post");
      tags.push_back("O");
      tokens.push_back("/" + pick(rng, filler_words()) + "/" + pick(rng, filler_words()) + ".js");
      tags.push_back("O");
      break;
    }
    case 4: {  // dotted exception name
      tokens.push_back(draw_name(rng, names.dotted_names));
      tags.push_back("B-EXNAME");
      if (rng.next_bool(0.6)) {
        tokens.push_back(":");
        tags.push_back("O");
      }
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(1, 4)));
      break;
    }
    default: {  // bare exception name after a language word
      static const std::vector<std::string> languages = {"python", "java", "c#"};
      tokens.push_back(pick(rng, languages));
      tags.push_back("O");
      tokens.push_back(draw_name(rng, names.bare_names));
      tags.push_back("B-EXNAME");
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(1, 3)));
      break;
    }
  }
  return {std::move(tokens), std::move(tags), record_id};
}

LabeledSequence negative_sequence(Rng& rng, int family, const std::string& record_id) {
  std::vector<std::string> tokens, tags;
  switch (family) {
    case 0: {  // plain words
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(4, 7)));
      break;
    }
    case 1: {  // digits in a benign product context
      static const std::vector<std::string> products = {"office", "windows", "top",
                                                        "best", "year"};
      tokens.push_back(pick(rng, products));
      tags.push_back("O");
      tokens.push_back(digits(rng, 4, 4));
      tags.push_back("O");
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(1, 3)));
      break;
    }
    case 2: {  // page/line references
      tokens.push_back(rng.next_bool(0.5) ? "line" : "page");
      tags.push_back("O");
      tokens.push_back(digits(rng, 2, 3));
      tags.push_back("O");
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(1, 3)));
      break;
    }
    default: {  // keyword words without any code
      static const std::vector<std::string> starts = {"exception", "error", "errno"};
      tokens.push_back(pick(rng, starts));
      tags.push_back("O");
      tokens.push_back("handling");
      tags.push_back("O");
      append_filler(rng, tokens, tags, static_cast<int>(rng.next_int(1, 3)));
      break;
    }
  }
  return {std::move(tokens), std::move(tags), record_id};
}

}  // namespace

std::vector<LabeledSequence> generate_labeled_corpus(const SynthCorpusConfig& config,
                                                     const SynthNamePool& names) {
  if (names.dotted_names.empty() || names.bare_names.empty())
    throw ValidationError("synthetic corpus needs non-empty name pools");

  Rng rng(config.seed);
  std::vector<LabeledSequence> corpus;
  corpus.reserve(config.sequences);
  for (size_t i = 0; i < config.sequences; ++i) {
    std::string record_id = "syn" + std::to_string(i);
    if (i % 2 == 0) {
      corpus.push_back(positive_sequence(rng, names, static_cast<int>((i / 2) % 6), record_id));
    } else {
      corpus.push_back(negative_sequence(rng, static_cast<int>((i / 2) % 4), record_id));
    }
  }
  return corpus;
}

namespace {

const std::vector<std::pair<std::string, int>>& domain_pool() {
  // (domain, relative weight)
  static const std::vector<std::pair<std::string, int>> pool = {
      {"stackoverflow.com", 30}, {"github.com", 18},          {"learn.microsoft.com", 14},
      {"docs.python.org", 8},    {"answers.microsoft.com", 8}, {"superuser.com", 6},
      {"serverfault.com", 5},    {"reddit.com", 5},            {"medium.com", 3},
      {"docs.oracle.com", 3}};
  return pool;
}

std::string pick_domain(Rng& rng) {
  static const int total = [] {
    int t = 0;
    for (const auto& [d, w] : domain_pool()) t += w;
    return t;
  }();
  int roll = static_cast<int>(rng.next_below(static_cast<uint64_t>(total)));
  for (const auto& [domain, weight] : domain_pool()) {
    roll -= weight;
    if (roll < 0) return domain;
  }
  return domain_pool().back().first;
}

std::string make_url(Rng& rng) {
  std::string url = "https://";
  if (rng.next_bool(0.2)) url += "www.";
  url += pick_domain(rng);
  url += "/" + pick(rng, filler_words()) + "/" + std::to_string(rng.next_below(100000));
  return url;
}

// Half-second resolution keeps the JSON byte-exact across platforms.
double make_dwell(Rng& rng) {
  double roll = rng.next_double();
  int64_t halves;
  if (roll < 0.25) {
    halves = rng.next_int(4, 59);  // 2.0 .. 29.5, below the SAT bar
  } else if (roll < 0.29) {
    halves = 60;  // exactly 30.0, the strict boundary
  } else if (roll < 0.75) {
    halves = rng.next_int(62, 600);  // satisfied, uncapped
  } else if (roll < 0.97) {
    halves = rng.next_int(601, 1200);
  } else {
    halves = rng.next_int(1201, 1800);  // beyond the 600 s cap
  }
  return static_cast<double>(halves) / 2.0;
}

std::string make_query(Rng& rng, const SynthNamePool& names) {
  double roll = rng.next_double();
  if (roll < 0.18) {
    static const std::vector<std::string> keywords = {"error", "errno", "exit code", "hresult"};
    std::string q = pick(rng, app_words()) + " " + pick(rng, keywords) + " " + digits(rng, 3, 5);
    if (rng.next_bool(0.4)) q += " at line " + digits(rng, 2, 3);
    return q;
  }
  if (roll < 0.23) return hex_code(rng) + " " + pick(rng, filler_words());
  if (roll < 0.27) return letter_code(rng) + " " + digits(rng, 4, 5);
  if (roll < 0.35) {
    std::string q = draw_name(rng, names.dotted_names);
    if (rng.next_bool(0.6)) q += ":";
    return q + " " + pick(rng, filler_words()) + " " + pick(rng, filler_words());
  }
  if (roll < 0.38) {
    static const std::vector<std::string> languages = {"python", "java", "c#"};
    return pick(rng, languages) + " " + to_lower(pick(rng, names.bare_names)) + " " +
           pick(rng, filler_words()) + " " + pick(rng, filler_words());
  }
  if (roll < 0.40) {
    return status_code(rng) + " get /" + pick(rng, filler_words()) + "/" +
           pick(rng, filler_words()) + ".js";
  }
  if (roll < 0.43) {
    return rng.next_bool(0.5) ? "cyberterror facts" : "office 2016 error";
  }
  if (roll < 0.55) {
    static const std::vector<std::string> shapes = {
        "how to fix error in", "exception handling in", "errno meaning",
        "error while", "exception when"};
    return pick(rng, shapes) + " " + pick(rng, filler_words()) + " " + pick(rng, filler_words());
  }
  std::string q = pick(rng, filler_words());
  int extra = static_cast<int>(rng.next_int(2, 5));
  for (int i = 0; i < extra; ++i) q += " " + pick(rng, filler_words());
  return q;
}

}  // namespace

void generate_search_log(const SynthLogConfig& config, const SynthNamePool& names,
                         std::ostream& out) {
  if (names.dotted_names.empty() || names.bare_names.empty())
    throw ValidationError("synthetic log needs non-empty name pools");

  Rng rng(config.seed);
  size_t emitted = 0;
  size_t client_no = 0;
  while (emitted < config.records) {
    ++client_no;
    std::string client_id = "c" + std::to_string(100000 + client_no);

    std::string locale = "en-US", region = "US";
    double lroll = rng.next_double();
    if (lroll > 0.85 && lroll <= 0.90) {
      locale = "en-GB";
      region = "GB";
    } else if (lroll > 0.90 && lroll <= 0.95) {
      locale = "de-DE";
      region = "DE";
    } else if (lroll > 0.95) {
      locale = "es-MX";
      region = "MX";
    }

    int64_t ts = 1559347200 + rng.next_int(0, 86400 * 30);
    size_t client_records = static_cast<size_t>(rng.next_int(1, 8));
    for (size_t i = 0; i < client_records && emitted < config.records; ++i, ++emitted) {
      SearchRecord r;
      r.record_id = "r" + std::to_string(10000000 + emitted);
      r.client_id = client_id;
      double groll = rng.next_double();
      if (groll < 0.7) {
        ts += rng.next_int(30, 900);
      } else if (groll < 0.9) {
        ts += rng.next_int(900, 1800);
      } else {
        ts += rng.next_int(2000, 7200);
      }
      r.timestamp = ts;
      r.locale = locale;
      r.region = region;
      r.raw_query = make_query(rng, names);
      if (rng.next_bool(0.01)) r.raw_query += " caf\xc3\xa9";  // non-ASCII rejects

      int n_urls = static_cast<int>(rng.next_int(4, 8));
      for (int u = 0; u < n_urls; ++u) r.result_urls.push_back(make_url(rng));
      if (rng.next_bool(0.85)) {
        int n_clicks = static_cast<int>(rng.next_int(1, 3));
        auto picks = rng.sample_without_replacement(r.result_urls.size(),
                                                    static_cast<size_t>(n_clicks));
        for (int c = 0; c < n_clicks; ++c) {
          ClickEvent e;
          e.url = r.result_urls[picks[static_cast<size_t>(c)]];
          e.click_order = c + 1;
          e.dwell_seconds = make_dwell(rng);
          r.clicks.push_back(std::move(e));
        }
      }
      out << serialize_record(r, LogFormat::kJsonl) << '\n';
    }
  }
}

}  // namespace exmine
