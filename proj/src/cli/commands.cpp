#include "exmine/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "exmine/analytics/evaluate.hpp"
#include "exmine/analytics/metrics.hpp"
#include "exmine/analytics/report.hpp"
#include "exmine/analytics/stats.hpp"
#include "exmine/cli/config.hpp"
#include "exmine/crf/features.hpp"
#include "exmine/crf/inference.hpp"
#include "exmine/crf/model.hpp"
#include "exmine/crf/train.hpp"
#include "exmine/log/filter.hpp"
#include "exmine/log/ingest.hpp"
#include "exmine/log/sessionize.hpp"
#include "exmine/synth/synth.hpp"
#include "exmine/tagger/gazetteer.hpp"
#include "exmine/tagger/tagger.hpp"
#include "exmine/util/csv.hpp"
#include "exmine/util/error.hpp"
#include "exmine/util/fnv.hpp"
#include "exmine/util/numfmt.hpp"
#include "exmine/util/parallel.hpp"
#include "exmine/util/rng.hpp"
#include "exmine/util/textfile.hpp"
#include "exmine/weak/corpus.hpp"
#include "exmine/weak/denylist.hpp"
#include "exmine/weak/rules.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace exmine::cli {
namespace {

bool chatty(const PipelineConfig& cfg) { return cfg.verbosity != "quiet"; }

void say(const PipelineConfig& cfg, const std::string& message) {
  if (chatty(cfg)) std::cerr << message << "\n";
}

unsigned effective_workers(const PipelineConfig& cfg) {
  return cfg.workers == 0 ? default_workers() : cfg.workers;
}

std::string checksum_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw RuntimeFailure("cannot open file for checksum: " + path);
  uint64_t state = 0xcbf29ce484222325ULL;
  std::vector<char> buffer(1 << 20);
  while (is) {
    is.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    std::streamsize got = is.gcount();
    if (got > 0) state = fnv1a64(std::string_view(buffer.data(), static_cast<size_t>(got)), state);
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(state));
  return out;
}

// Writes stage artifacts under the output directory and folds their
// checksums into manifest.json when the stage finishes.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(const PipelineConfig& cfg) : cfg_(cfg) {
    fs::create_directories(cfg.output_dir);
  }

  std::string path(const std::string& name) const { return cfg_.output_dir + "/" + name; }

  void write(const std::string& name, const std::string& content) {
    write_file(path(name), content);
    checksums_[name] = fnv1a64_hex(content);
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  // For artifacts written by other components directly to path(name).
  void note_file(const std::string& name) { checksums_[name] = checksum_file(path(name)); }

  void finish(const std::string& stage) {
    write("config." + stage + ".toml", to_toml(cfg_));
    json manifest = json::object();
    std::string manifest_path = path("manifest.json");
    if (fs::exists(manifest_path)) {
      try {
        manifest = json::parse(read_file(manifest_path));
      } catch (const std::exception&) {
        manifest = json::object();  // rebuilt from scratch below
      }
      if (!manifest.is_object()) manifest = json::object();
    }
    for (const auto& [name, checksum] : checksums_) manifest[name] = checksum;
    write_file(manifest_path, manifest.dump(2) + "\n");
  }

 private:
  const PipelineConfig& cfg_;
  std::map<std::string, std::string> checksums_;
};

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ValidationError(what + " is not set");
  if (!fs::exists(path)) throw ValidationError(what + " not found: " + path);
}

std::vector<SearchRecord> load_filtered(const std::string& path) {
  require_file(path, "filtered log");
  IngestResult res = ingest(path, LogFormat::kJsonl);
  if (!res.diagnostics.empty()) {
    throw ValidationError("filtered log " + path + " has " +
                          std::to_string(res.diagnostics.size()) +
                          " malformed lines; first: line " +
                          std::to_string(res.diagnostics.front().line) + ": " +
                          res.diagnostics.front().message);
  }
  return res.records;
}

std::string filtered_path(const PipelineConfig& cfg, const CliOverrides& o) {
  return o.input.value_or(cfg.output_dir + "/filtered.jsonl");
}

json weak_label_to_json(const WeakLabel& label) {
  return json{{"record_id", label.record_id},
              {"rule_id", label.rule_id},
              {"exception_class", exception_class_name(label.exception_class)},
              {"span_begin", label.span_begin},
              {"span_end", label.span_end},
              {"surface", label.surface}};
}

std::vector<WeakLabel> load_weak_labels(const std::string& path) {
  require_file(path, "weak labels");
  std::ifstream is(path, std::ios::binary);
  if (!is) throw RuntimeFailure("cannot open weak labels: " + path);
  std::vector<WeakLabel> labels;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      WeakLabel label;
      label.record_id = j.at("record_id").get<std::string>();
      label.rule_id = j.at("rule_id").get<int>();
      std::string cls = j.at("exception_class").get<std::string>();
      if (cls == "ID") {
        label.exception_class = ExceptionClass::kId;
      } else if (cls == "NAME") {
        label.exception_class = ExceptionClass::kName;
      } else {
        throw ValidationError("exception_class must be ID or NAME, got '" + cls + "'");
      }
      label.span_begin = j.at("span_begin").get<size_t>();
      label.span_end = j.at("span_end").get<size_t>();
      label.surface = j.at("surface").get<std::string>();
      labels.push_back(std::move(label));
    } catch (const json::exception& e) {
      throw ValidationError(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return labels;
}

json ner_to_json(const NerEvaluation& eval) {
  json classes = json::array();
  for (const auto& c : eval.per_class) {
    classes.push_back({{"class", c.cls},
                       {"precision", c.precision},
                       {"recall", c.recall},
                       {"f1", c.f1},
                       {"support", c.support},
                       {"predicted", c.predicted},
                       {"correct", c.correct}});
  }
  return json{{"classes", classes},
              {"macro", {{"precision", eval.macro.precision},
                         {"recall", eval.macro.recall},
                         {"f1", eval.macro.f1}}}};
}

NerEvaluation evaluate_sequences(const CrfModel& model, const FeatureExtractor& extractor,
                                 const std::vector<LabeledSequence>& sequences) {
  std::vector<EntityRef> gold, predicted;
  for (const auto& s : sequences) {
    for (const auto& e : decode_entities(s.tokens, s.tags)) {
      gold.push_back({s.record_id, e.kind, e.token_begin, e.token_end});
    }
    auto [tags, score] = viterbi_tags(model, extractor.make_sequence(s.tokens));
    for (const auto& e : decode_entities(s.tokens, tags)) {
      predicted.push_back({s.record_id, e.kind, e.token_begin, e.token_end});
    }
  }
  return evaluate_ner(gold, predicted);
}

SynthNamePool name_pool_from_gazetteers(const PipelineConfig& cfg) {
  SynthNamePool pool;
  for (const auto& [name, path] : cfg.features.gazetteer_paths) {
    require_file(path, "gazetteer '" + name + "'");
    for (const auto& entry : load_line_entries(path)) {
      if (entry.find('.') != std::string::npos) {
        pool.dotted_names.push_back(entry);
      } else {
        pool.bare_names.push_back(entry);
      }
    }
  }
  if (pool.dotted_names.empty() || pool.bare_names.empty()) {
    throw ValidationError(
        "synthetic generators need gazetteers with both dotted and bare names "
        "(configure [features] gazetteers or pass --gazetteer)");
  }
  return pool;
}

// ---- stages ----

int run_filter(const PipelineConfig& cfg, const CliOverrides& o) {
  std::string input = o.input.value_or(cfg.input_log);
  require_file(input, "input log");
  IngestResult res = ingest(input, cfg.input_format);
  std::vector<SearchRecord> kept = filter_records(res.records, cfg.filter);

  std::string out;
  for (const auto& r : kept) {
    out += serialize_record(r, LogFormat::kJsonl);
    out += '\n';
  }

  ArtifactWriter w(cfg);
  w.write("filtered.jsonl", out);
  json diagnostics = json::array();
  for (const auto& d : res.diagnostics) {
    diagnostics.push_back({{"line", d.line}, {"message", d.message}});
  }
  w.write_json("filter_summary.json", json{{"parsed_records", res.records.size()},
                                           {"skipped_lines", res.diagnostics.size()},
                                           {"kept_records", kept.size()},
                                           {"diagnostics", diagnostics}});
  w.finish("filter");
  say(cfg, "filter: kept " + std::to_string(kept.size()) + " of " +
               std::to_string(res.records.size()) + " records -> " + w.path("filtered.jsonl"));
  return 0;
}

int run_weak_label(const PipelineConfig& cfg, const CliOverrides& o) {
  std::vector<SearchRecord> records = load_filtered(filtered_path(cfg, o));
  std::vector<LabelRule> loaded;
  if (!cfg.rules_path.empty()) loaded = load_rules_file(cfg.rules_path);
  const std::vector<LabelRule>& rules = cfg.rules_path.empty() ? builtin_rules() : loaded;

  std::vector<WeakLabel> labels;
  for (const auto& r : records) {
    if (auto label = apply_rules(r.raw_query, rules)) {
      label->record_id = r.record_id;
      labels.push_back(std::move(*label));
    }
  }
  size_t matched = labels.size();
  if (!cfg.denylist_path.empty()) {
    labels = apply_denylist(labels, Denylist::load(cfg.denylist_path));
  }
  std::vector<ExceptionGroup> groups = group_exceptions(labels);

  std::string rows;
  for (const auto& label : labels) {
    rows += weak_label_to_json(label).dump();
    rows += '\n';
  }
  std::ostringstream groups_csv;
  groups_csv << "exception,query_count\n";
  for (const auto& g : groups) {
    write_csv_row(groups_csv, {g.canonical_key, format_u64(g.query_count)});
  }

  ArtifactWriter w(cfg);
  w.write("weak_labels.jsonl", rows);
  w.write("weak_groups.csv", groups_csv.str());
  w.write_json("weak_summary.json", json{{"records", records.size()},
                                         {"matched", matched},
                                         {"denylist_removed", matched - labels.size()},
                                         {"kept", labels.size()},
                                         {"groups", groups.size()}});
  w.finish("weak-label");
  say(cfg, "weak-label: " + std::to_string(labels.size()) + " of " +
               std::to_string(records.size()) + " queries labeled (" +
               std::to_string(matched - labels.size()) + " denylisted) -> " +
               w.path("weak_labels.jsonl"));
  return 0;
}

int run_build_corpus(const PipelineConfig& cfg, const CliOverrides& o) {
  std::vector<SearchRecord> records = load_filtered(filtered_path(cfg, o));
  std::vector<WeakLabel> labels =
      load_weak_labels(o.labels.value_or(cfg.output_dir + "/weak_labels.jsonl"));

  CorpusBuildResult result =
      build_training_corpus(records, labels, cfg.negative_ratio, cfg.seed);

  ArtifactWriter w(cfg);
  save_corpus(result.sequences, w.path("corpus.jsonl"));
  w.note_file("corpus.jsonl");
  w.write_json("corpus_summary.json", json{{"positives", result.positive_count},
                                           {"negatives", result.negative_count},
                                           {"warnings", result.warnings}});
  w.finish("build-corpus");
  say(cfg, "build-corpus: " + std::to_string(result.positive_count) + " positives + " +
               std::to_string(result.negative_count) + " negatives -> " +
               w.path("corpus.jsonl"));
  for (const auto& warning : result.warnings) say(cfg, "build-corpus: warning: " + warning);
  return 0;
}

int run_train(const PipelineConfig& cfg, const CliOverrides& o) {
  std::string corpus_path = o.corpus.value_or(cfg.output_dir + "/corpus.jsonl");
  require_file(corpus_path, "training corpus");
  std::vector<LabeledSequence> corpus = load_corpus(corpus_path);
  if (corpus.empty()) throw ValidationError("training corpus is empty: " + corpus_path);

  size_t n_hold = static_cast<size_t>(std::llround(cfg.holdout * static_cast<double>(corpus.size())));
  if (n_hold >= corpus.size()) n_hold = corpus.size() - 1;
  std::vector<size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed);
  rng.shuffle(order);
  std::vector<size_t> hold_idx(order.begin(), order.begin() + static_cast<long>(n_hold));
  std::vector<size_t> train_idx(order.begin() + static_cast<long>(n_hold), order.end());
  std::sort(hold_idx.begin(), hold_idx.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::vector<LabeledSequence> train_set, hold_set;
  for (size_t i : train_idx) train_set.push_back(corpus[i]);
  for (size_t i : hold_idx) hold_set.push_back(corpus[i]);

  FeatureExtractor extractor(cfg.features);
  CrfModel model = train(train_set, extractor, cfg.train, effective_workers(cfg));

  ArtifactWriter w(cfg);
  model.save(w.path("model.json"));
  w.note_file("model.json");

  json summary{{"sequences", corpus.size()},
               {"train_sequences", train_set.size()},
               {"holdout_sequences", hold_set.size()},
               {"labels", model.labels().names()},
               {"features", model.num_features()},
               {"iterations", model.objective_trace().empty()
                                  ? 0
                                  : model.objective_trace().size() - 1},
               {"objective_initial",
                model.objective_trace().empty() ? 0.0 : model.objective_trace().front()},
               {"objective_final",
                model.objective_trace().empty() ? 0.0 : model.objective_trace().back()},
               {"holdout", nullptr}};
  if (!hold_set.empty()) {
    save_corpus(hold_set, w.path("holdout.jsonl"));
    w.note_file("holdout.jsonl");
    summary["holdout"] = ner_to_json(evaluate_sequences(model, extractor, hold_set));
  }
  w.write_json("train_summary.json", summary);
  w.finish("train");

  std::string note = "train: " + std::to_string(model.num_features()) + " features, " +
                     std::to_string(summary["iterations"].get<size_t>()) +
                     " iterations, objective " +
                     format_double(summary["objective_final"].get<double>()) + " -> " +
                     w.path("model.json");
  if (!hold_set.empty()) {
    note += " (holdout macro F1 " +
            format_double(summary["holdout"]["macro"]["f1"].get<double>()) + ")";
  }
  say(cfg, note);
  return 0;
}

int run_evaluate(const PipelineConfig& cfg, const CliOverrides& o) {
  std::string model_path = o.model.value_or(cfg.output_dir + "/model.json");
  require_file(model_path, "model file");
  CrfModel model = CrfModel::load(model_path);

  std::string corpus_path;
  if (o.corpus) {
    corpus_path = *o.corpus;
  } else if (fs::exists(cfg.output_dir + "/holdout.jsonl")) {
    corpus_path = cfg.output_dir + "/holdout.jsonl";
  } else {
    corpus_path = cfg.output_dir + "/corpus.jsonl";
  }
  require_file(corpus_path, "evaluation corpus");
  std::vector<LabeledSequence> sequences = load_corpus(corpus_path);

  FeatureConfig fc = model.feature_config();
  if (!o.gazetteers.empty()) fc.gazetteer_paths = parse_gazetteer_list(o.gazetteers);
  FeatureExtractor extractor(fc);

  NerEvaluation eval = evaluate_sequences(model, extractor, sequences);
  ArtifactWriter w(cfg);
  json report = ner_to_json(eval);
  report["corpus"] = corpus_path;
  report["sequences"] = sequences.size();
  w.write_json("evaluation.json", report);
  w.finish("evaluate");

  std::cout << "sequences " << sequences.size() << "  macro precision "
            << format_fixed(eval.macro.precision, 4) << "  recall "
            << format_fixed(eval.macro.recall, 4) << "  f1 " << format_fixed(eval.macro.f1, 4)
            << "\n";
  return 0;
}

struct TagChunk {
  std::string lines;
  size_t tagged = 0;
  std::map<std::string, size_t> by_kind;
  std::map<std::string, size_t> by_language;
};

int run_tag(const PipelineConfig& cfg, const CliOverrides& o) {
  std::string model_path = o.model.value_or(cfg.output_dir + "/model.json");
  require_file(model_path, "model file");
  CrfModel model = CrfModel::load(model_path);

  std::vector<SearchRecord> records = load_filtered(filtered_path(cfg, o));
  std::vector<Session> sessions = segment_sessions(records);
  std::unordered_map<std::string, std::string> session_of;
  for (const auto& s : sessions) {
    for (const auto& r : s.records) session_of[r.record_id] = s.session_id;
  }

  FeatureConfig fc = model.feature_config();
  if (!o.gazetteers.empty()) fc.gazetteer_paths = parse_gazetteer_list(o.gazetteers);
  FeatureExtractor extractor(fc);
  std::vector<PlGazetteer> pl_gazetteers;
  for (const auto& [name, path] : cfg.features.gazetteer_paths) {
    pl_gazetteers.push_back(load_pl_gazetteer(name, path));
  }

  auto chunks = parallel_map_chunks<TagChunk>(
      records.size(), 256, effective_workers(cfg), [&](size_t begin, size_t end) {
        TagChunk chunk;
        for (size_t i = begin; i < end; ++i) {
          const SearchRecord& record = records[i];
          TaggedQuery q = tag_query(model, extractor, record);
          if (!q.tag) continue;
          q.session_id = session_of.at(record.record_id);
          q.language = categorize_pl(record, q.tag, pl_gazetteers);
          chunk.lines += tagged_row_json(q);
          chunk.lines += '\n';
          ++chunk.tagged;
          ++chunk.by_kind[exception_class_name(q.tag->kind)];
          ++chunk.by_language[q.language.empty() ? "none" : q.language];
        }
        return chunk;
      });

  std::string rows;
  size_t tagged = 0;
  std::map<std::string, size_t> by_kind, by_language;
  for (const auto& chunk : chunks) {
    rows += chunk.lines;
    tagged += chunk.tagged;
    for (const auto& [k, v] : chunk.by_kind) by_kind[k] += v;
    for (const auto& [k, v] : chunk.by_language) by_language[k] += v;
  }

  ArtifactWriter w(cfg);
  w.write("tagged.jsonl", rows);
  w.write_json("tag_summary.json", json{{"records", records.size()},
                                        {"sessions", sessions.size()},
                                        {"tagged", tagged},
                                        {"by_kind", by_kind},
                                        {"by_language", by_language}});
  w.finish("tag");
  say(cfg, "tag: " + std::to_string(tagged) + " of " + std::to_string(records.size()) +
               " records tagged -> " + w.path("tagged.jsonl"));
  return 0;
}

std::vector<TaggedQuery> load_tagged_rows(const std::string& path) {
  require_file(path, "tagged queries");
  std::ifstream is(path, std::ios::binary);
  if (!is) throw RuntimeFailure("cannot open tagged queries: " + path);
  std::vector<TaggedQuery> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      rows.push_back(parse_tagged_row(line));
    } catch (const ValidationError& e) {
      throw ValidationError(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

int run_analyze(const PipelineConfig& cfg, const CliOverrides& o) {
  std::vector<SearchRecord> records = load_filtered(filtered_path(cfg, o));
  std::vector<TaggedQuery> rows =
      load_tagged_rows(o.tagged.value_or(cfg.output_dir + "/tagged.jsonl"));

  std::vector<Session> sessions = segment_sessions(records);
  std::unordered_map<std::string, QueryMetrics> metrics;
  std::unordered_map<std::string, const SearchRecord*> record_by_id;
  for (const auto& r : records) {
    record_by_id[r.record_id] = &r;
    if (!r.clicks.empty()) metrics[r.record_id] = compute_query_metrics(r, cfg.metrics);
  }

  std::vector<TaggedQuery> usable;
  size_t dropped_no_clicks = 0, dropped_unknown = 0;
  for (const auto& row : rows) {
    if (!record_by_id.count(row.record_id)) {
      ++dropped_unknown;
    } else if (!metrics.count(row.record_id)) {
      ++dropped_no_clicks;
    } else {
      usable.push_back(row);
    }
  }

  AnalysisReport report;
  report.stats = aggregate_exception_stats(usable, metrics, cfg.metrics, false);
  report.stats_by_language = aggregate_exception_stats(usable, metrics, cfg.metrics, true);

  // Click domains over the exception-tagged records (clicks only are needed).
  std::vector<SearchRecord> tagged_records;
  std::unordered_set<std::string> seen;
  for (const auto& row : rows) {
    if (!seen.insert(row.record_id).second) continue;
    auto it = record_by_id.find(row.record_id);
    if (it == record_by_id.end()) continue;
    SearchRecord slim;
    slim.record_id = it->second->record_id;
    slim.clicks = it->second->clicks;
    tagged_records.push_back(std::move(slim));
  }
  report.domains = domain_popularity(tagged_records);

  std::map<std::string, std::vector<double>> effort, success;
  std::map<std::string, std::vector<double>> wordcount;
  for (const auto& q : usable) {
    const QueryMetrics& m = metrics.at(q.record_id);
    if (!q.language.empty()) {
      effort[q.language].push_back(m.total_dwell_seconds);
      success[q.language].push_back(static_cast<double>(m.success));
    }
    wordcount[exception_class_name(q.tag->kind)].push_back(static_cast<double>(m.word_count));
  }
  const std::pair<std::string, std::string> language_pairs[] = {
      {"java", "csharp"}, {"java", "python"}, {"csharp", "python"}};
  auto add_test = [&](const std::string& prefix, std::map<std::string, std::vector<double>>& samples,
                      const std::string& a, const std::string& b) {
    if (samples[a].size() >= 2 && samples[b].size() >= 2) {
      report.tests.emplace_back(prefix + ":" + a + "|" + b,
                                welch_t_test(samples[a], samples[b], a, b));
    }
  };
  for (const auto& [a, b] : language_pairs) add_test("effort", effort, a, b);
  for (const auto& [a, b] : language_pairs) add_test("success", success, a, b);
  add_test("wordcount", wordcount, "ID", "NAME");

  report.record_count = records.size();
  report.session_count = sessions.size();
  report.tagged_query_count = rows.size();

  ArtifactWriter w(cfg);
  for (const std::string& name : write_all_reports(report, cfg.output_dir)) w.note_file(name);
  w.write_json("analyze_summary.json",
               json{{"records", records.size()},
                    {"sessions", sessions.size()},
                    {"tagged_queries", rows.size()},
                    {"tagged_without_clicks", dropped_no_clicks},
                    {"tagged_unknown_records", dropped_unknown},
                    {"exception_groups", report.stats.size()},
                    {"tests", report.tests.size()}});
  w.finish("analyze");
  say(cfg, "analyze: " + std::to_string(report.stats.size()) + " exception groups over " +
               std::to_string(sessions.size()) + " sessions -> " + w.path("report.json"));
  return 0;
}

int run_report(const PipelineConfig& cfg, const CliOverrides& o) {
  std::string input = o.input.value_or(cfg.output_dir + "/report.json");
  require_file(input, "report bundle");
  AnalysisReport report = load_report_bundle(input);
  ArtifactWriter w(cfg);
  for (const std::string& name : write_all_reports(report, cfg.output_dir)) w.note_file(name);
  w.finish("report");
  say(cfg, "report: re-rendered " + input + " -> " + cfg.output_dir);
  return 0;
}

int run_synth_corpus(const PipelineConfig& cfg, const CliOverrides& o) {
  SynthNamePool pool = name_pool_from_gazetteers(cfg);
  SynthCorpusConfig sc;
  if (o.sequences) sc.sequences = *o.sequences;
  if (o.seed) sc.seed = *o.seed;
  std::vector<LabeledSequence> corpus = generate_labeled_corpus(sc, pool);

  ArtifactWriter w(cfg);
  std::string out = o.file.value_or(w.path("synthetic_corpus.jsonl"));
  save_corpus(corpus, out);
  if (out == w.path("synthetic_corpus.jsonl")) w.note_file("synthetic_corpus.jsonl");
  w.finish("synth-corpus");
  say(cfg, "synth-corpus: " + std::to_string(corpus.size()) + " sequences -> " + out);
  return 0;
}

int run_synth_log(const PipelineConfig& cfg, const CliOverrides& o) {
  SynthNamePool pool = name_pool_from_gazetteers(cfg);
  SynthLogConfig sc;
  if (o.records) sc.records = *o.records;
  if (o.seed) sc.seed = *o.seed;

  ArtifactWriter w(cfg);
  std::string out = o.file.value_or(w.path("synthetic_log.jsonl"));
  {
    std::ofstream os(out, std::ios::binary | std::ios::trunc);
    if (!os) throw RuntimeFailure("cannot open file for write: " + out);
    generate_search_log(sc, pool, os);
    os.flush();
    if (!os) throw RuntimeFailure("write error: " + out);
  }
  if (out == w.path("synthetic_log.jsonl")) w.note_file("synthetic_log.jsonl");
  w.finish("synth-log");
  say(cfg, "synth-log: " + std::to_string(sc.records) + " records -> " + out);
  return 0;
}

int run_pipeline(const PipelineConfig& cfg, const CliOverrides& o) {
  auto start = std::chrono::steady_clock::now();
  CliOverrides stage = o;  // per-stage flags are not meaningful here
  stage.input.reset();
  stage.corpus.reset();
  stage.model.reset();
  stage.tagged.reset();
  stage.labels.reset();
  stage.file.reset();

  run_filter(cfg, o.input ? o : stage);  // --input names the raw log
  run_weak_label(cfg, stage);
  run_build_corpus(cfg, stage);
  run_train(cfg, stage);
  run_evaluate(cfg, stage);
  run_tag(cfg, stage);
  run_analyze(cfg, stage);

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  say(cfg, "pipeline: all stages done in " + format_fixed(elapsed / 1000.0, 1) + " s");
  return 0;
}

void apply_overrides(PipelineConfig& cfg, const CliOverrides& o) {
  std::vector<std::string> errors;
  if (const char* env = std::getenv("EXMINE_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (cfg.output_dir.empty()) errors.push_back("output directory must not be empty");
  if (o.verbosity) {
    if (*o.verbosity != "quiet" && *o.verbosity != "info" && *o.verbosity != "debug") {
      errors.push_back("--verbosity must be quiet, info, or debug");
    } else {
      cfg.verbosity = *o.verbosity;
    }
  }
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.train.seed = *o.seed;
  }
  if (o.workers) cfg.workers = *o.workers;
  if (o.format) {
    if (*o.format != "jsonl" && *o.format != "tsv") {
      errors.push_back("--format must be jsonl or tsv");
    } else {
      cfg.input_format = log_format_from_string(*o.format);
    }
  }
  if (o.rules) cfg.rules_path = *o.rules;
  if (o.denylist) cfg.denylist_path = *o.denylist;
  if (o.negative_ratio) {
    if (*o.negative_ratio < 0) errors.push_back("--negative-ratio must be >= 0");
    cfg.negative_ratio = *o.negative_ratio;
  }
  if (o.l1) {
    if (*o.l1 < 0) errors.push_back("--l1 must be >= 0");
    cfg.train.l1 = *o.l1;
  }
  if (o.l2) {
    if (*o.l2 < 0) errors.push_back("--l2 must be >= 0");
    cfg.train.l2 = *o.l2;
  }
  if (o.tolerance) {
    if (*o.tolerance < 0) errors.push_back("--tolerance must be >= 0");
    cfg.train.gradient_tolerance = *o.tolerance;
  }
  if (o.max_iterations) {
    if (*o.max_iterations < 1) errors.push_back("--max-iterations must be >= 1");
    cfg.train.max_iterations = *o.max_iterations;
  }
  if (o.history) {
    if (*o.history < 1) errors.push_back("--history must be >= 1");
    cfg.train.history_size = *o.history;
  }
  if (o.holdout) {
    if (*o.holdout < 0 || *o.holdout >= 1) errors.push_back("--holdout must be in [0, 1)");
    cfg.holdout = *o.holdout;
  }
  if (!o.gazetteers.empty()) cfg.features.gazetteer_paths = parse_gazetteer_list(o.gazetteers);
  if (!errors.empty()) {
    std::string message = "invalid flags:";
    for (const auto& e : errors) message += "\n  - " + e;
    throw ValidationError(message);
  }
}

}  // namespace

int run_command(const std::string& command, const CliOverrides& o) {
  PipelineConfig cfg =
      o.config_path ? load_pipeline_config(*o.config_path) : default_pipeline_config();
  apply_overrides(cfg, o);

  if (command == "filter") return run_filter(cfg, o);
  if (command == "weak-label") return run_weak_label(cfg, o);
  if (command == "build-corpus") return run_build_corpus(cfg, o);
  if (command == "train") return run_train(cfg, o);
  if (command == "evaluate") return run_evaluate(cfg, o);
  if (command == "tag") return run_tag(cfg, o);
  if (command == "analyze") return run_analyze(cfg, o);
  if (command == "report") return run_report(cfg, o);
  if (command == "synth-corpus") return run_synth_corpus(cfg, o);
  if (command == "synth-log") return run_synth_log(cfg, o);
  if (command == "pipeline") return run_pipeline(cfg, o);
  throw ValidationError("unknown command: " + command);
}

}  // namespace exmine::cli
