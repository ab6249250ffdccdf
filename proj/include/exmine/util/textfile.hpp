#pragma once

#include <string>
#include <vector>

namespace exmine {

// Loads one entry per line. Blank lines and lines starting with '#' are
// skipped; entries are trimmed of surrounding whitespace.
std::vector<std::string> load_line_entries(const std::string& path);

// Reads a whole file into a string. Throws RuntimeFailure on I/O error.
std::string read_file(const std::string& path);

// Writes a string to a file atomically-ish (truncate + write). Throws
// RuntimeFailure on I/O error.
void write_file(const std::string& path, const std::string& content);

}  // namespace exmine
