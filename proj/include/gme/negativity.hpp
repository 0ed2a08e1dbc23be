#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "gme/states.hpp"
#include "gme/surface.hpp"

namespace gme {

struct PartialTransposeSpectrum {
  int party = 0;                    // 1-based
  std::vector<double> eigenvalues;  // ascending
};

/// Transpose the indices of one party only.  The result stays Hermitian with
/// unit trace but may have negative eigenvalues, so it is returned as a bare
/// matrix rather than a DensityMatrix.
inline CMatrix partial_transpose(const DensityMatrix& rho, int party) {
  const int n = rho.n_qubits;
  if (party < 1 || party > n)
    throw std::invalid_argument("partial_transpose: party index out of range");
  const int s = party - 1;
  const int d = rho.matrix.dim();
  const int mask = 1 << (n - 1 - s);
  CMatrix out(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const int a2 = (a & ~mask) | (b & mask);
      const int b2 = (b & ~mask) | (a & mask);
      out(a2, b2) = rho.matrix(a, b);
    }
  return out;
}

inline PartialTransposeSpectrum pt_spectrum(const DensityMatrix& rho, int party) {
  return {party, hermitian_eigenvalues(partial_transpose(rho, party))};
}

/// Negativity: -2 times the sum of negative partial-transpose eigenvalues.
/// Eigenvalues within 1e-12 of zero count as zero, so exactly-PPT states
/// report zero instead of accumulated roundoff.
inline double negativity_of(const DensityMatrix& rho, int party = 3) {
  double s = 0.0;
  for (double lam : pt_spectrum(rho, party).eigenvalues)
    if (lam < -1e-12) s += lam;
  return std::max(0.0, -2.0 * s);
}

/// Negativity of the mixed family over the simplex grid.
inline SurfaceGrid negativity_surface(int nx, int ny) {
  if (nx < 3 || ny < 3)
    throw std::invalid_argument("negativity_surface: resolutions must be at least 3");
  SurfaceGrid g(SurfaceGrid::Param::XYSimplex, nx, ny);
  for (int i = 0; i < nx; ++i) {
    const double x = g.x_at(i);
    for (int j = 0; j < ny; ++j) {
      const double y = g.y_at(j);
      if (!in_simplex(x, y)) continue;
      const FamilyPoint p(clamp01(x), std::min(clamp01(y), 1.0 - clamp01(x)));
      g.at(i, j) = negativity_of(family_density_matrix(p));
    }
  }
  return g;
}

struct OrderingPair {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  double n1 = 0, n2 = 0;  // negativities
  double e1 = 0, e2 = 0;  // mixed-state entanglements
};

/// Pairs of grid points on which negativity and the entanglement surface
/// disagree about which state is the more entangled (strictly, with margin
/// 1e-6 on both measures).  The three pure corner pairs are always tested;
/// beyond that the scan is exhaustive when the grid is small enough and
/// seeded random sampling otherwise.  Sorted by |dN| * |dE|, descending.
inline std::vector<OrderingPair> ordering_search(const SurfaceGrid& gme_surface,
                                                 const SurfaceGrid& neg_surface,
                                                 long n_pairs, std::uint64_t seed) {
  if (gme_surface.param != SurfaceGrid::Param::XYSimplex ||
      neg_surface.param != SurfaceGrid::Param::XYSimplex)
    throw std::invalid_argument("ordering_search: expected (x, y) grids");
  if (gme_surface.nx != neg_surface.nx || gme_surface.ny != neg_surface.ny)
    throw std::invalid_argument("ordering_search: grid dimensions differ");

  std::vector<std::pair<int, int>> nodes;
  for (int i = 0; i < gme_surface.nx; ++i)
    for (int j = 0; j < gme_surface.ny; ++j)
      if (gme_surface.valid(i, j) && neg_surface.valid(i, j))
        nodes.emplace_back(i, j);

  constexpr double kMargin = 1e-6;
  std::vector<OrderingPair> found;
  std::unordered_set<std::uint64_t> seen;
  auto node_key = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * nodes.size() + b;
  };
  auto consider = [&](std::size_t a, std::size_t b) {
    if (a == b || !seen.insert(node_key(a, b)).second) return;
    const auto [i1, j1] = nodes[a];
    const auto [i2, j2] = nodes[b];
    const double n1 = neg_surface.at(i1, j1), n2 = neg_surface.at(i2, j2);
    const double e1 = gme_surface.at(i1, j1), e2 = gme_surface.at(i2, j2);
    const bool disagree = (n1 - n2 > kMargin && e2 - e1 > kMargin) ||
                          (n2 - n1 > kMargin && e1 - e2 > kMargin);
    if (disagree)
      found.push_back({gme_surface.x_at(i1), gme_surface.y_at(j1),
                       gme_surface.x_at(i2), gme_surface.y_at(j2), n1, n2, e1, e2});
  };

  // Corner pairs first: (1,0)-(0,1), (1,0)-(0,0), (0,1)-(0,0).
  std::vector<std::size_t> corners;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto [i, j] = nodes[k];
    const double x = gme_surface.x_at(i), y = gme_surface.y_at(j);
    if ((x == 1.0 && y == 0.0) || (x == 0.0 && y == 1.0) || (x == 0.0 && y == 0.0))
      corners.push_back(k);
  }
  for (std::size_t a = 0; a < corners.size(); ++a)
    for (std::size_t b = a + 1; b < corners.size(); ++b)
      consider(corners[a], corners[b]);

  const std::size_t m = nodes.size();
  const long total_pairs = static_cast<long>(m) * (static_cast<long>(m) - 1) / 2;
  if (total_pairs <= n_pairs) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) consider(a, b);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (long k = 0; k < n_pairs; ++k) consider(pick(rng), pick(rng));
  }

  std::sort(found.begin(), found.end(), [](const OrderingPair& a, const OrderingPair& b) {
    const double ma = std::abs(a.n1 - a.n2) * std::abs(a.e1 - a.e2);
    const double mb = std::abs(b.n1 - b.n2) * std::abs(b.e1 - b.e2);
    if (ma != mb) return ma > mb;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    if (a.y1 != b.y1) return a.y1 < b.y1;
    if (a.x2 != b.x2) return a.x2 < b.x2;
    return a.y2 < b.y2;
  });
  return found;
}

}  // namespace gme
