#pragma once

#include <cstdint>

namespace hamforge::detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// qubit i, segment j, both 1-based
inline bool lambda_negative(std::int64_t k, std::int64_t i, std::int64_t j) {
  return (floor_div(i - j - 1, k) & 1) != 0;
}

inline bool gamma_negative(std::int64_t k, std::int64_t i, std::int64_t j) {
  std::int64_t r = (i - j) % k;
  return r != 0;
}

}  // namespace hamforge::detail
