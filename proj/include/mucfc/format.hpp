#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace mucfc {

/// Shortest round-trip decimal form of a double, locale-independent. All CSV
/// and report output goes through here so reruns are byte-identical.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace mucfc
