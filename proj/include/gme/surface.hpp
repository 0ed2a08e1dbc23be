#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gme/domain.hpp"

namespace gme {

/// Uniform grid of samples of a scalar function over either the (x, y)
/// mixing simplex (cells outside the simplex hold NaN) or the full
/// (x, r) unit square with y = (1-x) r.
struct SurfaceGrid {
  enum class Param { XYSimplex, XRSquare };

  Param param = Param::XYSimplex;
  int nx = 0;
  int ny = 0;  // r-resolution for XRSquare grids
  std::vector<double> values;

  SurfaceGrid() = default;
  SurfaceGrid(Param p, int nx_, int ny_)
      : param(p),
        nx(nx_),
        ny(ny_),
        values(static_cast<std::size_t>(nx_) * ny_,
               std::numeric_limits<double>::quiet_NaN()) {
    if (nx < 2 || ny < 2)
      throw std::invalid_argument("SurfaceGrid: resolutions must be at least 2");
  }

  double x_at(int i) const { return static_cast<double>(i) / (nx - 1); }
  double y_at(int j) const { return static_cast<double>(j) / (ny - 1); }

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * ny + j]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * ny + j]; }

  bool valid(int i, int j) const { return std::isfinite(at(i, j)); }
};

namespace detail {

/// Grid value at (i, j) or, for nodes just outside the simplex, a linear
/// extrapolation from in-simplex neighbours so that bilinear interpolation
/// stays usable up to the diagonal boundary.
inline double corner_value(const SurfaceGrid& g, int i, int j) {
  if (g.valid(i, j)) return g.at(i, j);
  if (i >= 2 && g.valid(i - 1, j) && g.valid(i - 2, j))
    return 2.0 * g.at(i - 1, j) - g.at(i - 2, j);
  if (j >= 2 && g.valid(i, j - 1) && g.valid(i, j - 2))
    return 2.0 * g.at(i, j - 1) - g.at(i, j - 2);
  if (i >= 1 && j >= 1 && g.valid(i - 1, j) && g.valid(i, j - 1) &&
      g.valid(i - 1, j - 1))
    return g.at(i - 1, j) + g.at(i, j - 1) - g.at(i - 1, j - 1);
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

/// Bilinear interpolation of the grid at (x, y) (or (x, r)).  Queries
/// outside the grid's domain return NaN.
inline double bilinear_value(const SurfaceGrid& g, double x, double y) {
  if (g.param == SurfaceGrid::Param::XYSimplex && !in_simplex(x, y))
    return std::numeric_limits<double>::quiet_NaN();
  if (x < -kSimplexTol || x > 1.0 + kSimplexTol || y < -kSimplexTol ||
      y > 1.0 + kSimplexTol)
    return std::numeric_limits<double>::quiet_NaN();
  x = clamp01(x);
  y = clamp01(y);

  const double fx = x * (g.nx - 1);
  const double fy = y * (g.ny - 1);
  const int i = std::min(static_cast<int>(fx), g.nx - 2);
  const int j = std::min(static_cast<int>(fy), g.ny - 2);
  const double a = fx - i;
  const double b = fy - j;

  const double v00 = detail::corner_value(g, i, j);
  const double v10 = detail::corner_value(g, i + 1, j);
  const double v01 = detail::corner_value(g, i, j + 1);
  const double v11 = detail::corner_value(g, i + 1, j + 1);
  return (1.0 - a) * (1.0 - b) * v00 + a * (1.0 - b) * v10 +
         (1.0 - a) * b * v01 + a * b * v11;
}

}  // namespace gme
