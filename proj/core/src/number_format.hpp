#pragma once

#include <charconv>
#include <string>

namespace rfuq {

// Shortest round-trip decimal form. Report files must be byte-stable across
// reruns, so all numeric output funnels through here instead of iostream
// locale-dependent formatting.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace rfuq
