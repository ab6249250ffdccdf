#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "exmine/log/types.hpp"

namespace exmine {

enum class LogFormat { kJsonl, kTsv };

// Returns kJsonl for "jsonl", kTsv for "tsv"; throws ValidationError otherwise.
LogFormat log_format_from_string(const std::string& name);

struct IngestDiagnostic {
  size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<SearchRecord> records;
  std::vector<IngestDiagnostic> diagnostics;  // one per skipped line
};

// One record per well-formed line, input order preserved. Malformed lines are
// skipped and reported in diagnostics. Throws RuntimeFailure if the file
// cannot be opened.
IngestResult ingest(const std::string& path, LogFormat format);
IngestResult ingest_stream(std::istream& in, LogFormat format);

// Parses a single line. Throws ValidationError describing the defect.
SearchRecord parse_record_line(const std::string& line, LogFormat format);

// Canonical single-line form (no trailing newline). serialize followed by
// ingest round-trips bit-identically.
std::string serialize_record(const SearchRecord& r, LogFormat format);

void serialize(const std::vector<SearchRecord>& records, std::ostream& out, LogFormat format);

}  // namespace exmine
