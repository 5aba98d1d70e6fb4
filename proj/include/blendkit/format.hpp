#ifndef BLENDKIT_FORMAT_HPP
#define BLENDKIT_FORMAT_HPP

#include <cstdio>
#include <string>

namespace blendkit {

// 17 significant digits round-trip doubles exactly.
inline std::string format_sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace blendkit

#endif
