#pragma once

#include <cstdio>
#include <string>

namespace secbeam {

/// printf "%.Ng" formatting; used for every number emitted to CSV or JSON
/// so output files are reproducible byte for byte.
inline std::string fmt_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace secbeam
