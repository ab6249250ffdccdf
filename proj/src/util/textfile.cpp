#include "exmine/util/textfile.hpp"

#include <fstream>
#include <sstream>

#include "exmine/util/error.hpp"
#include "exmine/util/strings.hpp"

namespace exmine {

std::vector<std::string> load_line_entries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeFailure("cannot open file: " + path);
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    entries.emplace_back(sv);
  }
  return entries;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw RuntimeFailure("read error: " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeFailure("cannot open file for write: " + path);
  out << content;
  out.flush();
  if (!out) throw RuntimeFailure("write error: " + path);
}

}  // namespace exmine
