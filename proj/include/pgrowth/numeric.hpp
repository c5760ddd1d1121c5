#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace pgrowth {

// Comparisons of exact integer lengths against real thresholds built from
// delta; the slack absorbs rounding in products such as 1000 * 0.002.
inline double slack(double b) { return 1e-9 * std::max(1.0, std::fabs(b)); }
inline bool le(double a, double b) { return a <= b + slack(b); }
inline bool lt(double a, double b) { return a < b - slack(b); }
inline bool ge(double a, double b) { return le(b, a); }
inline bool gt(double a, double b) { return lt(b, a); }
inline std::int64_t floor_tol(double a) {
  return static_cast<std::int64_t>(std::floor(a + slack(a)));
}
inline std::int64_t ceil_tol(double a) {
  return static_cast<std::int64_t>(std::ceil(a - slack(a)));
}

}  // namespace pgrowth
