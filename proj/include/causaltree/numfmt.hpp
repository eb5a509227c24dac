#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

#include "causaltree/errors.hpp"

namespace causaltree {

/// Shortest decimal string that parses back to exactly the same double.
inline std::string double_to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double string_to_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("not a decimal number: '" + s + "'");
  return v;
}

/// Fixed 12-significant-digit formatting for CSV output.
inline std::string fmt_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace causaltree
