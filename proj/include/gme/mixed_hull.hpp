#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "gme/family_analytic.hpp"
#include "gme/surface.hpp"

namespace gme {

class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Samples of the pure-state entanglement over the (x, r) square,
/// y = (1-x) r.  Symmetric under r <-> 1-r.
inline SurfaceGrid sample_e_psi_xr(int nx, int nr) {
  if (nx < 3 || nr < 3)
    throw std::invalid_argument("sample_e_psi_xr: resolutions must be at least 3");
  SurfaceGrid g(SurfaceGrid::Param::XRSquare, nx, nr);
  for (int i = 0; i < nx; ++i) {
    const double x = g.x_at(i);
    for (int j = 0; j < nr; ++j) {
      const double y = (1.0 - x) * g.y_at(j);
      g.at(i, j) = e_psi(x, std::min(y, 1.0 - x));
    }
  }
  return g;
}

namespace detail {

/// In-place lower convex envelope of uniformly spaced samples, by monotone
/// chain over (index, value) followed by linear fill between hull knots.
/// Values at the kept knots are untouched, so already-convex data passes
/// through unchanged.
inline void lower_envelope_row(std::vector<double>& v) {
  const int m = static_cast<int>(v.size());
  if (m < 3) return;
  std::vector<int> hull;
  hull.reserve(m);
  for (int k = 0; k < m; ++k) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull[hull.size() - 1];
      // pop b when it lies on or above the chord a -> k
      if ((v[b] - v[a]) * (k - b) >= (v[k] - v[b]) * (b - a))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int a = hull[h];
    const int b = hull[h + 1];
    const double slope = (v[b] - v[a]) / (b - a);
    for (int k = a + 1; k < b; ++k) v[k] = v[a] + slope * (k - a);
  }
}

}  // namespace detail

/// Replace each fixed-x row by its lower convex envelope in r.  For the
/// cusped rows of this family the envelope is exactly the horizontal bridge
/// between the symmetric pair of minima; convex rows are unchanged.
inline SurfaceGrid convexify_in_r(SurfaceGrid g) {
  if (g.param != SurfaceGrid::Param::XRSquare)
    throw std::invalid_argument("convexify_in_r: expected an (x, r) grid");
  std::vector<double> row(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) row[j] = g.at(i, j);
    detail::lower_envelope_row(row);
    for (int j = 0; j < g.ny; ++j) g.at(i, j) = row[j];
  }
  return g;
}

/// Replace each fixed-r column by its lower convex envelope in x.  This is
/// the tangent-line construction for the inflection-point nonconvexity near
/// x = 1; columns that are already convex are unchanged.
inline SurfaceGrid convexify_in_x(SurfaceGrid g) {
  if (g.param != SurfaceGrid::Param::XRSquare)
    throw std::invalid_argument("convexify_in_x: expected an (x, r) grid");
  std::vector<double> col(g.nx);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) col[i] = g.at(i, j);
    detail::lower_envelope_row(col);
    for (int i = 0; i < g.nx; ++i) g.at(i, j) = col[i];
  }
  return g;
}

/// Mixed-state entanglement surface: sample in (x, r), convexify along r
/// then along x (both directions are straight lines of density matrices),
/// and resample onto the (x, y) simplex grid.  Resampled values are capped
/// by the pure-state value, which the exact surface never exceeds.
inline SurfaceGrid mixed_gme_surface(int nx, int ny) {
  if (nx < 3 || ny < 3)
    throw std::invalid_argument("mixed_gme_surface: resolutions must be at least 3");
  const SurfaceGrid xr = convexify_in_x(convexify_in_r(sample_e_psi_xr(nx, ny)));

  SurfaceGrid out(SurfaceGrid::Param::XYSimplex, nx, ny);
  const int nr = ny;
  for (int i = 0; i < nx; ++i) {
    const double x = out.x_at(i);
    for (int j = 0; j < ny; ++j) {
      const double y = out.y_at(j);
      if (!in_simplex(x, y)) continue;
      double v;
      if (1.0 - x <= 1e-12) {
        v = xr.at(i, 0);  // the x = 1 row is constant in r
      } else {
        const double r = clamp01(y / (1.0 - x));
        const double fr = r * (nr - 1);
        const int k = std::min(static_cast<int>(fr), nr - 2);
        const double f = fr - k;
        v = (1.0 - f) * xr.at(i, k) + f * xr.at(i, k + 1);
      }
      out.at(i, j) = std::min(v, e_psi(x, std::min(y, 1.0 - x)));
    }
  }
  return out;
}

struct ViolatingPair {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  double violation = 0;
};

struct HullReport {
  // Largest midpoint defect value(mid) - (value(p1) + value(p2)) / 2 over
  // all tested segments; positive means a convexity violation.
  double max_violation = -std::numeric_limits<double>::infinity();
  long n_segments_tested = 0;
  std::vector<ViolatingPair> violating_pairs;
};

/// Midpoint convexity check over the sampled surface.  Segments are chosen
/// so that both endpoints and the midpoint land exactly on grid nodes; this
/// keeps the measurement free of interpolation error, which near the simplex
/// edges would otherwise swamp the O(h^2) resolution coupling the tolerance
/// assumes.  Deterministic axis-aligned and boundary scans run first, then
/// `n_pairs` seeded random node pairs of matching index parity.
inline HullReport verify_convexity(const SurfaceGrid& g, long n_pairs,
                                   std::uint64_t seed) {
  if (g.param != SurfaceGrid::Param::XYSimplex)
    throw std::invalid_argument("verify_convexity: expected an (x, y) grid");

  HullReport rep;
  constexpr std::size_t kMaxRecorded = 1000;

  auto test_triple = [&](int i1, int j1, int im, int jm, int i2, int j2) {
    if (!g.valid(i1, j1) || !g.valid(im, jm) || !g.valid(i2, j2)) return;
    const double defect = g.at(im, jm) - 0.5 * (g.at(i1, j1) + g.at(i2, j2));
    ++rep.n_segments_tested;
    rep.max_violation = std::max(rep.max_violation, defect);
    // record genuine violations only, not last-bit roundoff
    if (defect > 1e-12 && rep.violating_pairs.size() < kMaxRecorded)
      rep.violating_pairs.push_back(
          {g.x_at(i1), g.y_at(j1), g.x_at(i2), g.y_at(j2), defect});
  };

  // Axis-aligned scans: fixed x varying y, fixed y varying x.
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      for (int d = 1; j - d >= 0 && j + d < g.ny; ++d)
        test_triple(i, j - d, i, j, i, j + d);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (int d = 1; i - d >= 0 && i + d < g.nx; ++d)
        test_triple(i - d, j, i, j, i + d, j);
  // Boundary scan along x + y = 1 (the nonconvex corner region lives there).
  if (g.nx == g.ny) {
    const int n = g.nx - 1;
    for (int i = 0; i <= n; ++i)
      for (int d = 1; i - d >= 0 && i + d <= n; ++d)
        test_triple(i - d, n - (i - d), i, n - i, i + d, n - (i + d));
  }

  std::vector<std::pair<int, int>> nodes;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (g.valid(i, j)) nodes.emplace_back(i, j);
  if (nodes.empty()) return rep;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  for (long k = 0; k < n_pairs; ++k) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const auto [i1, j1] = nodes[pick(rng)];
      const auto [i2, j2] = nodes[pick(rng)];
      if (((i1 + i2) | (j1 + j2)) & 1) continue;  // midpoint must be a node
      test_triple(i1, j1, (i1 + i2) / 2, (j1 + j2) / 2, i2, j2);
      break;
    }
  }
  return rep;
}

namespace detail {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm3(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct HullFace {
  int a = 0, b = 0, c = 0;
  Vec3 n;            // outward normal, unit length
  double d = 0;      // plane offset: dot(n, p) = d on the face
  bool alive = true;
};

/// Incremental convex hull of a 3D point cloud.  Returns the surviving
/// faces with outward unit normals.  Throws DegenerateInput when the cloud
/// is (numerically) coplanar.
inline std::vector<HullFace> convex_hull_3d(const std::vector<Vec3>& pts) {
  const std::size_t n = pts.size();
  if (n < 4) throw DegenerateInput("convex_hull_3d: need at least 4 points");
  constexpr double kEps = 1e-11;

  // Initial tetrahedron from greedy extremes.
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (pts[i].x < pts[i0].x ||
        (pts[i].x == pts[i0].x &&
         (pts[i].y < pts[i0].y ||
          (pts[i].y == pts[i0].y && pts[i].z < pts[i0].z))))
      i0 = i;
  std::size_t i1 = i0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm3(sub(pts[i], pts[i0]));
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (best <= kEps) throw DegenerateInput("convex_hull_3d: points coincide");
  std::size_t i2 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm3(cross(sub(pts[i1], pts[i0]), sub(pts[i], pts[i0])));
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= kEps) throw DegenerateInput("convex_hull_3d: points are collinear");
  const Vec3 n012 = cross(sub(pts[i1], pts[i0]), sub(pts[i2], pts[i0]));
  std::size_t i3 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(dot(n012, sub(pts[i], pts[i0])));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best / std::max(norm3(n012), 1e-300) <= kEps)
    throw DegenerateInput("convex_hull_3d: points are coplanar");

  const Vec3 interior = {
      (pts[i0].x + pts[i1].x + pts[i2].x + pts[i3].x) / 4.0,
      (pts[i0].y + pts[i1].y + pts[i2].y + pts[i3].y) / 4.0,
      (pts[i0].z + pts[i1].z + pts[i2].z + pts[i3].z) / 4.0};

  std::vector<HullFace> faces;
  auto push_face = [&](int a, int b, int c) {
    HullFace f;
    f.a = a;
    f.b = b;
    f.c = c;
    Vec3 nn = cross(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
    const double len = norm3(nn);
    if (len < 1e-300) return;  // degenerate sliver, never visible
    nn = {nn.x / len, nn.y / len, nn.z / len};
    double dd = dot(nn, pts[a]);
    if (dot(nn, interior) > dd) {  // flip to point away from the interior
      std::swap(f.b, f.c);
      nn = {-nn.x, -nn.y, -nn.z};
      dd = -dd;
    }
    f.n = nn;
    f.d = dd;
    faces.push_back(f);
  };

  const int t0 = static_cast<int>(i0), t1 = static_cast<int>(i1),
            t2 = static_cast<int>(i2), t3 = static_cast<int>(i3);
  push_face(t0, t1, t2);
  push_face(t0, t1, t3);
  push_face(t0, t2, t3);
  push_face(t1, t2, t3);

  std::vector<std::size_t> visible;
  std::unordered_set<std::uint64_t> edges;
  for (std::size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    visible.clear();
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && dot(faces[f].n, pts[p]) > faces[f].d + kEps)
        visible.push_back(f);
    if (visible.empty()) continue;

    edges.clear();
    auto key = [n](int u, int v) {
      return static_cast<std::uint64_t>(u) * n + static_cast<std::uint64_t>(v);
    };
    for (std::size_t f : visible) {
      edges.insert(key(faces[f].a, faces[f].b));
      edges.insert(key(faces[f].b, faces[f].c));
      edges.insert(key(faces[f].c, faces[f].a));
    }
    for (std::size_t f : visible) faces[f].alive = false;
    const int pi = static_cast<int>(p);
    // Horizon edges are directed edges of the visible patch whose reversed
    // twin lies in a hidden face; fan new faces from the inserted point.
    for (std::uint64_t e : edges) {
      const int u = static_cast<int>(e / n);
      const int v = static_cast<int>(e % n);
      if (edges.count(key(v, u))) continue;  // interior to the visible patch
      push_face(u, v, pi);
    }
  }

  std::vector<HullFace> out;
  for (const HullFace& f : faces)
    if (f.alive) out.push_back(f);
  return out;
}

}  // namespace detail

/// Independent construction of the mixed-state surface: the lower convex
/// hull of the sampled point cloud (x, y, E_psi(x, y)), evaluated back on
/// the grid as the maximum over downward-facing hull planes.
inline SurfaceGrid hull_oracle(int nx, int ny) {
  if (nx < 3 || ny < 3)
    throw std::invalid_argument("hull_oracle: resolutions must be at least 3");

  SurfaceGrid out(SurfaceGrid::Param::XYSimplex, nx, ny);
  std::vector<detail::Vec3> pts;
  std::vector<std::pair<int, int>> nodes;
  for (int i = 0; i < nx; ++i) {
    const double x = out.x_at(i);
    for (int j = 0; j < ny; ++j) {
      const double y = out.y_at(j);
      if (!in_simplex(x, y)) continue;
      pts.push_back({x, y, e_psi(x, std::min(y, 1.0 - x))});
      nodes.emplace_back(i, j);
    }
  }

  const std::vector<detail::HullFace> faces = detail::convex_hull_3d(pts);
  std::vector<detail::HullFace> lower;
  for (const detail::HullFace& f : faces)
    if (f.n.z < -1e-9) lower.push_back(f);
  if (lower.empty()) throw DegenerateInput("hull_oracle: no downward faces");

  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto [i, j] = nodes[k];
    const double x = pts[k].x;
    const double y = pts[k].y;
    double env = -std::numeric_limits<double>::infinity();
    for (const detail::HullFace& f : lower)
      env = std::max(env, (f.d - f.n.x * x - f.n.y * y) / f.n.z);
    out.at(i, j) = std::max(0.0, std::min(env, pts[k].z));
  }
  return out;
}

}  // namespace gme
