#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace exmine {

// Locale-independent double formatting (shortest round-trip form).
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// Locale-independent fixed-precision formatting.
inline std::string format_fixed(double x, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

inline std::string format_u64(uint64_t x) { return std::to_string(x); }

}  // namespace exmine
