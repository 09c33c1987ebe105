#ifndef TZ_DETAIL_FORMAT_HPP
#define TZ_DETAIL_FORMAT_HPP

#include <cstdio>
#include <string>

namespace tz::detail {

/// 17 significant digits: enough to reproduce any binary64 exactly.
inline std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

} // namespace tz::detail

#endif // TZ_DETAIL_FORMAT_HPP
