#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gme/domain.hpp"

namespace gme {

class DegeneratePolynomial : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoNonnegativeRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CubicSolution {
  std::vector<double> roots;  // non-negative real roots, ascending
  double chosen_t = 0.0;      // root maximizing the overlap
  double lambda_at_chosen = 0.0;
};

/// Overlap of the superposition with weights (x, y, 1-x-y) against the
/// symmetric product state ((|0> + t|1>) / sqrt(1+t^2))^(x3).
inline double family_overlap(double x, double y, double t) {
  const double z = third_weight(x, y);
  const double t2 = t * t;
  const double denom = std::pow(1.0 + t2, 1.5);
  return (std::sqrt(0.5 * std::max(0.0, x)) * (1.0 + t2 * t) +
          std::sqrt(3.0 * std::max(0.0, y)) * t + std::sqrt(3.0 * z) * t2) /
         denom;
}

/// Coefficients {a3, a2, a1, a0} of the stationarity condition
/// d(family_overlap)/dt = 0, cleared of its positive denominator:
/// a3 t^3 + a2 t^2 + a1 t + a0 = 0.
inline std::array<double, 4> cubic_coefficients(double x, double y) {
  const double z = third_weight(x, y);
  const double gx = std::sqrt(0.5 * std::max(0.0, x));
  const double wy = std::sqrt(3.0 * std::max(0.0, y));
  const double wz = std::sqrt(3.0 * z);
  return {-wz, 3.0 * gx - 2.0 * wy, -3.0 * gx + 2.0 * wz, wy};
}

namespace detail {

inline double cubic_eval(const std::array<double, 4>& c, double t) {
  return ((c[0] * t + c[1]) * t + c[2]) * t + c[3];
}

inline double cubic_deriv(const std::array<double, 4>& c, double t) {
  return (3.0 * c[0] * t + 2.0 * c[1]) * t + c[2];
}

inline void newton_polish(const std::array<double, 4>& c, double& t) {
  if (std::abs(t) > 1e8) return;
  for (int i = 0; i < 3; ++i) {
    const double d = cubic_deriv(c, t);
    if (std::abs(d) < 1e-30) return;
    const double step = cubic_eval(c, t) / d;
    if (!std::isfinite(step)) return;
    t -= step;
  }
}

/// Stable real roots of a quadratic; an empty result means none.
inline std::vector<double> quadratic_real_roots(double a, double b, double cc) {
  std::vector<double> roots;
  double disc = b * b - 4.0 * a * cc;
  const double disc_scale = b * b + std::abs(4.0 * a * cc);
  if (disc < 0.0 && -disc <= 1e-12 * disc_scale) disc = 0.0;
  if (disc < 0.0) return roots;
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (b + std::copysign(sq, b));
  if (qq != 0.0) {
    roots.push_back(qq / a);
    roots.push_back(cc / qq);
  } else {
    roots.push_back(0.0);  // b = 0 and disc = 0 imply cc = 0
  }
  return roots;
}

/// Real roots of a3 t^3 + ... + a0, by discriminant classification with
/// degree fallbacks when leading coefficients vanish.  Roots are polished
/// with a few Newton steps.  An identically zero polynomial throws.
inline std::vector<double> cubic_real_roots(const std::array<double, 4>& c) {
  const double maxc =
      std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  if (maxc == 0.0)
    throw DegeneratePolynomial("all cubic coefficients vanish");
  const double rel = 1e-14 * maxc;
  // Below this the closed form is wrecked by cancellation at the b = a2/a3
  // scale; the two moderate roots then come from the quadratic truncation
  // and the far root from the root sum.
  const double small_lead = 1e-5 * maxc;

  std::vector<double> roots;
  if (std::abs(c[0]) > small_lead) {
    const double b = c[1] / c[0];
    const double cc = c[2] / c[0];
    const double d = c[3] / c[0];
    const double shift = b / 3.0;
    const double p = cc - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc >= 0.0) {
      if (p >= 0.0) {
        // disc >= 0 with p >= 0 forces p = q = 0: triple root.
        roots.push_back(-shift);
      } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
          roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) - shift);
      }
    } else {
      const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
      roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) - shift);
    }
  } else if (std::abs(c[0]) > rel) {
    roots = quadratic_real_roots(c[1], c[2], c[3]);
    if (roots.empty() && std::abs(c[1]) <= rel && std::abs(c[2]) > rel)
      roots.push_back(-c[3] / c[2]);
    if (std::abs(c[1]) > 1e-8 * maxc)
      roots.push_back(-c[1] / c[0] + c[2] / c[1]);
  } else if (std::abs(c[1]) > rel) {
    roots = quadratic_real_roots(c[1], c[2], c[3]);
  } else if (std::abs(c[2]) > rel) {
    roots.push_back(-c[3] / c[2]);
  }
  // remaining case: (numerically) constant non-zero polynomial, no roots

  for (double& t : roots) newton_polish(c, t);
  return roots;
}

}  // namespace detail

/// Non-negative real roots of the stationarity cubic at (x, y), together
/// with the root whose overlap is largest.  Multiple non-negative roots do
/// occur on the simplex boundary; the overlap-maximizing one is the one
/// that matches the variational solver.
inline CubicSolution cubic_roots_nonneg(double x, double y) {
  require_simplex(x, y);
  const std::array<double, 4> coef = cubic_coefficients(x, y);
  std::vector<double> raw = detail::cubic_real_roots(coef);

  std::vector<double> roots;
  for (double t : raw) {
    if (!std::isfinite(t)) continue;
    if (std::abs(t) <= 1e-12) t = 0.0;
    if (t >= 0.0) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) {
                            return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b));
                          }),
              roots.end());

  // Stationary points beyond t ~ 1e3 are within O(1e-6) in overlap of the
  // t -> infinity basis-product limit and carry residuals dominated by
  // roundoff; drop them unless nothing else remains.
  std::vector<double> sane;
  for (double t : roots)
    if (t <= 1e3) sane.push_back(t);
  if (sane.empty() && !roots.empty()) sane.push_back(roots.front());
  roots = std::move(sane);

  if (roots.empty())
    throw NoNonnegativeRoot("no non-negative stationary root at (" +
                            std::to_string(x) + ", " + std::to_string(y) + ")");

  double best_t = roots.front();
  double best_lambda = family_overlap(x, y, best_t);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    const double lam = family_overlap(x, y, roots[i]);
    if (lam > best_lambda) {
      best_lambda = lam;
      best_t = roots[i];
    }
  }
  return CubicSolution{std::move(roots), best_t, best_lambda};
}

/// Entanglement eigenvalue of the non-negative family superposition at (x, y).
inline double lambda_family(double x, double y) {
  return cubic_roots_nonneg(x, y).lambda_at_chosen;
}

/// Pure-state entanglement 1 - lambda^2 of the family superposition.
inline double e_psi(double x, double y) {
  const double lam = std::min(1.0, lambda_family(x, y));
  return std::max(0.0, 1.0 - lam * lam);
}

}  // namespace gme
