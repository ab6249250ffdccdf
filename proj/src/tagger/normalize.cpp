#include "exmine/tagger/normalize.hpp"

#include <cctype>

#include "exmine/util/error.hpp"
#include "exmine/util/strings.hpp"

namespace exmine {

std::string normalize_exception(const std::string& surface, ExceptionClass kind) {
  size_t b = 0;
  size_t e = surface.size();
  while (b < e && std::ispunct(static_cast<unsigned char>(surface[b]))) ++b;
  while (e > b && std::ispunct(static_cast<unsigned char>(surface[e - 1]))) --e;
  if (b == e) throw ValidationError("exception surface is empty after normalization: " + surface);

  std::string key = to_lower(surface.substr(b, e - b));
  if (kind == ExceptionClass::kName) {
    size_t dot = key.rfind('.');
    if (dot != std::string::npos) key = key.substr(dot + 1);
  }
  if (key.empty()) throw ValidationError("exception surface is empty after normalization: " + surface);
  return key;
}

}  // namespace exmine
