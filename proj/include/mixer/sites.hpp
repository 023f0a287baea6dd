#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mixer {

// A vertex of Z, doubling as a tile label.
using Site = std::int64_t;

// Site arithmetic never silently wraps: simulations at desk scale stay far
// inside the int64 range, so an overflow is a bug signal.
inline Site checked_add(Site a, Site b) {
  Site out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("site arithmetic overflow: " + std::to_string(a) +
                              " + " + std::to_string(b));
  }
  return out;
}

inline Site checked_sub(Site a, Site b) {
  Site out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw std::overflow_error("site arithmetic overflow: " + std::to_string(a) +
                              " - " + std::to_string(b));
  }
  return out;
}

inline Site checked_neg(Site a) { return checked_sub(0, a); }

// Graph distance on Z with generating set {+1,-1}. Exact for the full
// int64 range, hence the unsigned return type.
inline std::uint64_t site_distance(Site a, Site b) {
  return a >= b ? static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b)
                : static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a);
}

}  // namespace mixer
