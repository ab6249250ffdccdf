#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exmine::cli {

// Values collected from the command line. Unset fields fall back to the
// config file, then to built-in defaults; EXMINE_OUTPUT_DIR sits between
// the config and the --out flag.
struct CliOverrides {
  std::optional<std::string> config_path;
  std::optional<std::string> output_dir;
  std::optional<std::string> verbosity;
  std::optional<uint64_t> seed;
  std::optional<unsigned> workers;

  std::optional<std::string> input;   // stage input file (meaning is per command)
  std::optional<std::string> format;  // filter: jsonl | tsv
  std::optional<std::string> rules;
  std::optional<std::string> denylist;
  std::optional<std::string> labels;  // weak-label output consumed by build-corpus
  std::optional<std::string> model;
  std::optional<std::string> corpus;
  std::optional<std::string> tagged;
  std::optional<std::string> file;  // synth-*: output file
  std::optional<double> negative_ratio;
  std::optional<double> l1;
  std::optional<double> l2;
  std::optional<double> tolerance;
  std::optional<double> holdout;
  std::optional<int> max_iterations;
  std::optional<int> history;
  std::optional<uint64_t> records;    // synth-log size
  std::optional<uint64_t> sequences;  // synth-corpus size
  std::vector<std::string> gazetteers;  // name=path; replaces the config list
};

// Runs one pipeline command: filter, weak-label, build-corpus, train,
// evaluate, tag, analyze, report, synth-log, synth-corpus, or pipeline.
// Returns 0 on success; failures are reported by throwing ValidationError
// (usage/config/input problems) or RuntimeFailure (I/O and numeric faults).
int run_command(const std::string& command, const CliOverrides& overrides);

}  // namespace exmine::cli
