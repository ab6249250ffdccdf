#include "exmine/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "exmine/util/error.hpp"
#include "exmine/util/numfmt.hpp"
#include "exmine/util/strings.hpp"
#include "exmine/util/textfile.hpp"

namespace exmine::cli {
namespace {

struct TomlValue {
  enum class Kind { kString, kInt, kFloat, kBool, kArray };
  Kind kind = Kind::kString;
  std::string str;
  int64_t integer = 0;
  double real = 0.0;
  bool boolean = false;
  std::vector<std::string> items;
  size_t line = 0;
};

const char* kind_name(TomlValue::Kind k) {
  switch (k) {
    case TomlValue::Kind::kString:
      return "string";
    case TomlValue::Kind::kInt:
      return "integer";
    case TomlValue::Kind::kFloat:
      return "float";
    case TomlValue::Kind::kBool:
      return "boolean";
    default:
      return "array";
  }
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

bool valid_bare_key(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return !std::isdigit(static_cast<unsigned char>(s[0]));
}

bool parse_number(const std::string& text, TomlValue& v) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ip, iec] = std::from_chars(begin, end, v.integer);
  if (iec == std::errc() && ip == end) {
    v.kind = TomlValue::Kind::kInt;
    v.real = static_cast<double>(v.integer);
    return true;
  }
  auto [fp, fec] = std::from_chars(begin, end, v.real);
  if (fec == std::errc() && fp == end) {
    v.kind = TomlValue::Kind::kFloat;
    return true;
  }
  return false;
}

bool parse_scalar(const std::string& text, size_t line_no, TomlValue& v,
                  std::vector<std::string>& errors) {
  v.line = line_no;
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    v.kind = TomlValue::Kind::kString;
    v.str = text.substr(1, text.size() - 2);
    if (v.str.find('"') != std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": escaped quotes are not supported");
      return false;
    }
    return true;
  }
  if (text == "true" || text == "false") {
    v.kind = TomlValue::Kind::kBool;
    v.boolean = text == "true";
    return true;
  }
  if (parse_number(text, v)) return true;
  errors.push_back("line " + std::to_string(line_no) + ": cannot parse value '" + text + "'");
  return false;
}

bool parse_value(const std::string& text, size_t line_no, TomlValue& v,
                 std::vector<std::string>& errors) {
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') {
      errors.push_back("line " + std::to_string(line_no) + ": unterminated array");
      return false;
    }
    v.kind = TomlValue::Kind::kArray;
    v.line = line_no;
    std::string inner(trim(text.substr(1, text.size() - 2)));
    if (inner.empty()) return true;
    // split on top-level commas; quotes protect commas inside items
    std::vector<std::string> parts;
    bool in_string = false;
    std::string current;
    for (char c : inner) {
      if (c == '"') in_string = !in_string;
      if (c == ',' && !in_string) {
        parts.push_back(current);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    parts.push_back(current);
    for (const auto& part : parts) {
      TomlValue item;
      if (!parse_scalar(std::string(trim(part)), line_no, item, errors)) return false;
      if (item.kind != TomlValue::Kind::kString) {
        errors.push_back("line " + std::to_string(line_no) +
                         ": array items must be quoted strings");
        return false;
      }
      v.items.push_back(item.str);
    }
    return true;
  }
  return parse_scalar(text, line_no, v, errors);
}

std::map<std::string, TomlValue> parse_toml(const std::string& text,
                                            std::vector<std::string>& errors) {
  std::map<std::string, TomlValue> table;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line(trim(strip_comment(raw)));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
        continue;
      }
      std::string name(trim(line.substr(1, line.size() - 2)));
      if (!valid_bare_key(name)) {
        errors.push_back("line " + std::to_string(line_no) + ": bad section name '" + name + "'");
        continue;
      }
      section = name;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    std::string key(trim(line.substr(0, eq)));
    if (!valid_bare_key(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": bad key '" + key + "'");
      continue;
    }
    std::string full_key = section.empty() ? key : section + "." + key;
    if (table.count(full_key)) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + full_key + "'");
      continue;
    }
    TomlValue v;
    if (parse_value(std::string(trim(line.substr(eq + 1))), line_no, v, errors)) {
      table.emplace(std::move(full_key), std::move(v));
    }
  }
  return table;
}

// Typed access over the parsed table; unread keys are reported as unknown.
class ConfigReader {
 public:
  ConfigReader(std::map<std::string, TomlValue> table, std::vector<std::string>& errors)
      : table_(std::move(table)), errors_(errors) {}

  void get_string(const std::string& key, std::string& out) {
    if (const TomlValue* v = fetch(key, TomlValue::Kind::kString)) out = v->str;
  }

  void get_bool(const std::string& key, bool& out) {
    if (const TomlValue* v = fetch(key, TomlValue::Kind::kBool)) out = v->boolean;
  }

  template <typename Int>
  void get_int(const std::string& key, Int& out, int64_t min_value, int64_t max_value) {
    if (const TomlValue* v = fetch(key, TomlValue::Kind::kInt)) {
      if (v->integer < min_value || v->integer > max_value) {
        fail(*v, key + " must be in [" + std::to_string(min_value) + ", " +
                     std::to_string(max_value) + "]");
        return;
      }
      out = static_cast<Int>(v->integer);
    }
  }

  void get_double(const std::string& key, double& out, double min_value, double max_value) {
    auto it = table_.find(key);
    if (it == table_.end()) return;
    consumed_.insert(key);
    const TomlValue& v = it->second;
    if (v.kind != TomlValue::Kind::kInt && v.kind != TomlValue::Kind::kFloat) {
      fail(v, key + " must be a number, got " + kind_name(v.kind));
      return;
    }
    if (v.real < min_value || v.real > max_value) {
      fail(v, key + " must be in [" + format_double(min_value) + ", " +
                  format_double(max_value) + "]");
      return;
    }
    out = v.real;
  }

  void get_string_list(const std::string& key, std::vector<std::string>& out) {
    if (const TomlValue* v = fetch(key, TomlValue::Kind::kArray)) out = v->items;
  }

  void get_string_list(const std::string& key, std::set<std::string>& out) {
    if (const TomlValue* v = fetch(key, TomlValue::Kind::kArray))
      out = std::set<std::string>(v->items.begin(), v->items.end());
  }

  void report_unknown_keys() {
    for (const auto& [key, v] : table_) {
      if (!consumed_.count(key)) fail(v, "unknown key '" + key + "'");
    }
  }

 private:
  const TomlValue* fetch(const std::string& key, TomlValue::Kind kind) {
    auto it = table_.find(key);
    if (it == table_.end()) return nullptr;
    consumed_.insert(key);
    if (it->second.kind != kind) {
      fail(it->second, key + " must be a " + std::string(kind_name(kind)) + ", got " +
                           kind_name(it->second.kind));
      return nullptr;
    }
    return &it->second;
  }

  void fail(const TomlValue& v, const std::string& message) {
    errors_.push_back("line " + std::to_string(v.line) + ": " + message);
  }

  std::map<std::string, TomlValue> table_;
  std::set<std::string> consumed_;
  std::vector<std::string>& errors_;
};

void check_path(const std::string& path, const std::string& what,
                std::vector<std::string>& errors) {
  if (path.empty()) return;
  if (!std::filesystem::exists(path)) errors.push_back(what + " does not exist: " + path);
}

std::vector<std::pair<std::string, std::string>> parse_gazetteer_entries(
    const std::vector<std::string>& entries, std::vector<std::string>& errors) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : entries) {
    size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
      errors.push_back("gazetteer entry must be name=path: '" + entry + "'");
      continue;
    }
    out.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
  }
  return out;
}

}  // namespace

PipelineConfig default_pipeline_config() { return PipelineConfig{}; }

std::vector<std::pair<std::string, std::string>> parse_gazetteer_list(
    const std::vector<std::string>& entries) {
  std::vector<std::string> errors;
  auto out = parse_gazetteer_entries(entries, errors);
  if (!errors.empty()) throw ValidationError(errors.front());
  return out;
}

PipelineConfig parse_pipeline_config_text(const std::string& text, const std::string& origin) {
  std::vector<std::string> errors;
  ConfigReader reader(parse_toml(text, errors), errors);

  PipelineConfig cfg = default_pipeline_config();
  reader.get_int("seed", cfg.seed, 0, INT64_MAX);
  reader.get_int("workers", cfg.workers, 0, 4096);
  reader.get_string("verbosity", cfg.verbosity);
  if (cfg.verbosity != "quiet" && cfg.verbosity != "info" && cfg.verbosity != "debug") {
    errors.push_back("verbosity must be quiet, info, or debug, got '" + cfg.verbosity + "'");
  }

  reader.get_string("input.log", cfg.input_log);
  std::string format = "jsonl";
  reader.get_string("input.format", format);
  if (format == "jsonl" || format == "tsv") {
    cfg.input_format = log_format_from_string(format);
  } else {
    errors.push_back("input.format must be jsonl or tsv, got '" + format + "'");
  }

  reader.get_string_list("filter.locales", cfg.filter.allowed_locales);
  reader.get_string_list("filter.regions", cfg.filter.allowed_regions);
  reader.get_string_list("filter.keywords", cfg.filter.trigger_keywords);
  reader.get_bool("filter.require_click", cfg.filter.require_click);
  reader.get_bool("filter.ascii_only", cfg.filter.reject_non_ascii);

  reader.get_string("weak.rules", cfg.rules_path);
  reader.get_string("weak.denylist", cfg.denylist_path);
  reader.get_double("weak.negative_ratio", cfg.negative_ratio, 0.0, 1e6);

  reader.get_int("features.window", cfg.features.window, 0, 16);
  reader.get_bool("features.orthographic", cfg.features.use_orthographic);
  reader.get_bool("features.coarse_pos", cfg.features.use_coarse_pos);
  reader.get_bool("features.gazetteer", cfg.features.use_gazetteer);
  std::vector<std::string> gazetteers;
  reader.get_string_list("features.gazetteers", gazetteers);
  if (!gazetteers.empty()) cfg.features.gazetteer_paths = parse_gazetteer_entries(gazetteers, errors);

  reader.get_double("train.l1", cfg.train.l1, 0.0, 1e9);
  reader.get_double("train.l2", cfg.train.l2, 0.0, 1e9);
  reader.get_int("train.max_iterations", cfg.train.max_iterations, 1, 1000000);
  reader.get_double("train.tolerance", cfg.train.gradient_tolerance, 0.0, 1e6);
  reader.get_int("train.history", cfg.train.history_size, 1, 1000);
  reader.get_double("train.holdout", cfg.holdout, 0.0, 0.999);

  reader.get_double("metrics.dwell_cap", cfg.metrics.dwell_cap_seconds, 1e-9, 1e9);
  reader.get_double("metrics.sat_threshold", cfg.metrics.sat_threshold_seconds, 0.0, 1e9);
  reader.get_int("metrics.min_sessions", cfg.metrics.min_sessions, 0, 1000000000);

  reader.get_string("output.dir", cfg.output_dir);
  if (cfg.output_dir.empty()) errors.push_back("output.dir must not be empty");

  reader.report_unknown_keys();

  check_path(cfg.input_log, "input.log", errors);
  check_path(cfg.rules_path, "weak.rules", errors);
  check_path(cfg.denylist_path, "weak.denylist", errors);
  for (const auto& [name, path] : cfg.features.gazetteer_paths) {
    check_path(path, "gazetteer '" + name + "'", errors);
  }

  if (!errors.empty()) {
    std::string message = "invalid config " + origin + ":";
    for (const auto& e : errors) message += "\n  - " + e;
    throw ValidationError(message);
  }

  cfg.train.seed = cfg.seed;
  return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  return parse_pipeline_config_text(read_file(path), path);
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

template <typename Container>
std::string string_array(const Container& items) {
  std::string out = "[";
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += ", ";
    first = false;
    out += quoted(item);
  }
  return out + "]";
}

}  // namespace

std::string to_toml(const PipelineConfig& c) {
  std::ostringstream os;
  os << "seed = " << c.seed << "\n";
  os << "workers = " << c.workers << "\n";
  os << "verbosity = " << quoted(c.verbosity) << "\n\n";

  os << "[input]\n";
  os << "log = " << quoted(c.input_log) << "\n";
  os << "format = " << quoted(c.input_format == LogFormat::kJsonl ? "jsonl" : "tsv") << "\n\n";

  os << "[filter]\n";
  os << "locales = " << string_array(c.filter.allowed_locales) << "\n";
  os << "regions = " << string_array(c.filter.allowed_regions) << "\n";
  os << "keywords = " << string_array(c.filter.trigger_keywords) << "\n";
  os << "require_click = " << (c.filter.require_click ? "true" : "false") << "\n";
  os << "ascii_only = " << (c.filter.reject_non_ascii ? "true" : "false") << "\n\n";

  os << "[weak]\n";
  os << "rules = " << quoted(c.rules_path) << "\n";
  os << "denylist = " << quoted(c.denylist_path) << "\n";
  os << "negative_ratio = " << format_double(c.negative_ratio) << "\n\n";

  os << "[features]\n";
  os << "window = " << c.features.window << "\n";
  os << "orthographic = " << (c.features.use_orthographic ? "true" : "false") << "\n";
  os << "coarse_pos = " << (c.features.use_coarse_pos ? "true" : "false") << "\n";
  os << "gazetteer = " << (c.features.use_gazetteer ? "true" : "false") << "\n";
  std::vector<std::string> gazetteers;
  for (const auto& [name, path] : c.features.gazetteer_paths) gazetteers.push_back(name + "=" + path);
  os << "gazetteers = " << string_array(gazetteers) << "\n\n";

  os << "[train]\n";
  os << "l1 = " << format_double(c.train.l1) << "\n";
  os << "l2 = " << format_double(c.train.l2) << "\n";
  os << "max_iterations = " << c.train.max_iterations << "\n";
  os << "tolerance = " << format_double(c.train.gradient_tolerance) << "\n";
  os << "history = " << c.train.history_size << "\n";
  os << "holdout = " << format_double(c.holdout) << "\n\n";

  os << "[metrics]\n";
  os << "dwell_cap = " << format_double(c.metrics.dwell_cap_seconds) << "\n";
  os << "sat_threshold = " << format_double(c.metrics.sat_threshold_seconds) << "\n";
  os << "min_sessions = " << c.metrics.min_sessions << "\n\n";

  os << "[output]\n";
  os << "dir = " << quoted(c.output_dir) << "\n";
  return os.str();
}

}  // namespace exmine::cli
