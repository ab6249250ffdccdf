#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "exmine/cli/commands.hpp"
#include "exmine/util/error.hpp"

namespace {

using exmine::cli::CliOverrides;

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("-c,--config", o.config_path, "TOML config file (defaults apply without one)");
  cmd->add_option("-o,--out", o.output_dir,
                  "output directory (overrides config and EXMINE_OUTPUT_DIR)");
  cmd->add_option("--seed", o.seed, "seed for all randomness in this run");
  cmd->add_option("--workers", o.workers, "worker thread cap, 0 = all cores");
  cmd->add_option("--verbosity", o.verbosity, "quiet | info | debug");
}

void add_gazetteer_flag(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--gazetteer", o.gazetteers,
                  "name=path exception list; repeatable, replaces the config list");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exception-query mining pipeline"};
  app.require_subcommand(1);
  CliOverrides o;

  CLI::App* filter = app.add_subcommand(
      "filter", "ingest a raw search log and keep exception-seeking records");
  add_common_flags(filter, o);
  filter->add_option("--input", o.input, "raw log file (overrides [input].log)");
  filter->add_option("--format", o.format, "jsonl | tsv");

  CLI::App* weak = app.add_subcommand(
      "weak-label", "apply the rule table to filtered queries and group the matches");
  add_common_flags(weak, o);
  weak->add_option("--input", o.input, "filtered log (default <out>/filtered.jsonl)");
  weak->add_option("--rules", o.rules, "rule override file (JSON)");
  weak->add_option("--denylist", o.denylist, "denylisted canonical keys, one per line");

  CLI::App* corpus = app.add_subcommand(
      "build-corpus", "turn weak labels into a BIO training corpus with sampled negatives");
  add_common_flags(corpus, o);
  corpus->add_option("--input", o.input, "filtered log (default <out>/filtered.jsonl)");
  corpus->add_option("--labels", o.labels, "weak labels (default <out>/weak_labels.jsonl)");
  corpus->add_option("--negative-ratio", o.negative_ratio, "negatives per positive");

  CLI::App* train = app.add_subcommand("train", "fit the sequence model on a labeled corpus");
  add_common_flags(train, o);
  train->add_option("--corpus", o.corpus, "training corpus (default <out>/corpus.jsonl)");
  train->add_option("--l1", o.l1, "L1 penalty weight");
  train->add_option("--l2", o.l2, "L2 penalty weight");
  train->add_option("--max-iterations", o.max_iterations, "optimizer iteration cap");
  train->add_option("--tolerance", o.tolerance, "gradient max-norm stopping threshold");
  train->add_option("--history", o.history, "quasi-Newton history size");
  train->add_option("--holdout", o.holdout, "fraction of sequences held out, in [0, 1)");
  add_gazetteer_flag(train, o);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score a model against a labeled corpus, entity-exact");
  add_common_flags(evaluate, o);
  evaluate->add_option("--model", o.model, "model file (default <out>/model.json)");
  evaluate->add_option("--corpus", o.corpus,
                       "labeled corpus (default <out>/holdout.jsonl, then corpus.jsonl)");
  add_gazetteer_flag(evaluate, o);

  CLI::App* tag = app.add_subcommand(
      "tag", "run the model over filtered queries and attach languages and sessions");
  add_common_flags(tag, o);
  tag->add_option("--input", o.input, "filtered log (default <out>/filtered.jsonl)");
  tag->add_option("--model", o.model, "model file (default <out>/model.json)");
  add_gazetteer_flag(tag, o);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "aggregate tagged queries into popularity/effort/success/wordcount reports");
  add_common_flags(analyze, o);
  analyze->add_option("--input", o.input, "filtered log (default <out>/filtered.jsonl)");
  analyze->add_option("--tagged", o.tagged, "tagged queries (default <out>/tagged.jsonl)");

  CLI::App* report =
      app.add_subcommand("report", "re-render the CSV tables from an existing report bundle");
  add_common_flags(report, o);
  report->add_option("--input", o.input, "report bundle (default <out>/report.json)");

  CLI::App* synth_log =
      app.add_subcommand("synth-log", "generate a synthetic raw search log for end-to-end runs");
  add_common_flags(synth_log, o);
  synth_log->add_option("--records", o.records, "number of records (default 100000)");
  synth_log->add_option("--file", o.file, "output file (default <out>/synthetic_log.jsonl)");
  add_gazetteer_flag(synth_log, o);

  CLI::App* synth_corpus = app.add_subcommand(
      "synth-corpus", "generate a labeled synthetic corpus mirroring the rule families");
  add_common_flags(synth_corpus, o);
  synth_corpus->add_option("--sequences", o.sequences, "number of sequences (default 2000)");
  synth_corpus->add_option("--file", o.file,
                           "output file (default <out>/synthetic_corpus.jsonl)");
  add_gazetteer_flag(synth_corpus, o);

  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "run filter, weak-label, build-corpus, train, evaluate, tag, analyze");
  add_common_flags(pipeline, o);
  pipeline->add_option("--input", o.input, "raw log file (overrides [input].log)");
  add_gazetteer_flag(pipeline, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are validation errors
  }

  try {
    return exmine::cli::run_command(app.get_subcommands().front()->get_name(), o);
  } catch (const exmine::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const exmine::RuntimeFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
