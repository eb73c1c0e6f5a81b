#pragma once

#include <numbers>
#include <string>

#include "secbeam/errors.hpp"

namespace secbeam {

/// Unit used for every reported rate. Rates are derived from natural
/// logarithms internally and converted once at the point of computation.
enum class RateUnit { bits, nats };

inline double from_nats(double nats, RateUnit unit) {
  return unit == RateUnit::bits ? nats / std::numbers::ln2 : nats;
}

inline const char* to_string(RateUnit unit) {
  return unit == RateUnit::bits ? "bits" : "nats";
}

inline RateUnit rate_unit_from_string(const std::string& s) {
  if (s == "bits") return RateUnit::bits;
  if (s == "nats") return RateUnit::nats;
  throw invalid_input("unknown rate unit: " + s);
}

}  // namespace secbeam
