#ifndef ZEROSEL_FORMAT_HPP
#define ZEROSEL_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace zerosel {

// 17 significant digits round-trips any double exactly; std::to_chars is
// locale-independent, so files are byte-identical across runs and machines.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline bool parse_double(const char* first, const char* last, double& out) {
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

inline bool parse_int64(const char* first, const char* last, long long& out) {
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

}  // namespace zerosel

#endif
