#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gme {

inline constexpr double kSimplexTol = 1e-9;

/// Mixture weights (x, y) are admissible when x >= 0, y >= 0 and x + y <= 1,
/// up to `tol` of floating-point slack.
inline bool in_simplex(double x, double y, double tol = kSimplexTol) {
  return x >= -tol && y >= -tol && x + y <= 1.0 + tol;
}

/// Weight of the third mixture component, clamped against roundoff.
inline double third_weight(double x, double y) {
  return std::max(0.0, 1.0 - x - y);
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

inline void require_simplex(double x, double y, double tol = kSimplexTol) {
  if (in_simplex(x, y, tol)) return;
  std::string msg;
  if (x < -tol) {
    msg = "x is negative (x = " + std::to_string(x) + ")";
  } else if (y < -tol) {
    msg = "y is negative (y = " + std::to_string(y) + ")";
  } else {
    msg = "x + y exceeds 1 (x = " + std::to_string(x) +
          ", y = " + std::to_string(y) + ")";
  }
  throw std::domain_error(msg);
}

}  // namespace gme
