// Acceptance battery for the library: every check prints one PASS/FAIL line
// with its measured numbers and wall time, and the process exits nonzero if
// any check fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gme/gme.hpp"

using namespace gme;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Shared {
  SurfaceGrid mixed201;   // convexified surface on the simplex grid
  SurfaceGrid raw201;     // raw pure-state surface on the same grid
  bool ready = false;

  void ensure() {
    if (ready) return;
    mixed201 = mixed_gme_surface(201, 201);
    raw201 = SurfaceGrid(SurfaceGrid::Param::XYSimplex, 201, 201);
    for (int i = 0; i < 201; ++i)
      for (int j = 0; j < 201; ++j) {
        const double x = raw201.x_at(i), y = raw201.y_at(j);
        if (in_simplex(x, y)) raw201.at(i, j) = e_psi(x, std::min(y, 1.0 - x));
      }
    ready = true;
  }
};

Shared shared;

std::string fmt(const char* pattern, ...) {
  char buf[256];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

Outcome ghz_corner() {
  const double e = solve_gme(make_ghz()).e_sin2;
  const double lam = lambda_family(1.0, 0.0);
  const bool ok =
      std::abs(e - 0.5) < 1e-9 && std::abs(lam - 1.0 / std::sqrt(2.0)) < 1e-9;
  return {ok, fmt("solver E = %.12f, formula Lambda = %.12f", e, lam)};
}

Outcome w_corners() {
  const double ew = solve_gme(make_w()).e_sin2;
  const double et = solve_gme(make_w_tilde()).e_sin2;
  const double fw = e_psi(0.0, 1.0);
  const double ft = e_psi(0.0, 0.0);
  const double want = 5.0 / 9.0;
  const bool ok = std::abs(ew - want) < 1e-9 && std::abs(et - want) < 1e-9 &&
                  std::abs(fw - want) < 1e-9 && std::abs(ft - want) < 1e-9;
  return {ok, fmt("solver %.12f/%.12f, formula %.12f/%.12f", ew, et, fw, ft)};
}

Outcome w_closest_product() {
  const GmeResult r = solve_gme(make_w());
  // target site vector sqrt(2/3)|0> + sqrt(1/3)|1>, free per-site phase
  double fidelity = 1.0;
  for (int s = 0; s < 3; ++s)
    fidelity *= std::norm(std::sqrt(2.0 / 3.0) * r.closest_product.sites[s][0] +
                          std::sqrt(1.0 / 3.0) * r.closest_product.sites[s][1]);
  return {fidelity >= 1.0 - 1e-8, fmt("product-state fidelity = %.12f", fidelity)};
}

Outcome grid_agreement() {
  const int n = 24;
  double worst = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      const double x = double(i) / n, y = double(j) / n;
      const GmeResult r = solve_gme(family_pure_state(FamilyPoint(x, y)));
      worst = std::max(worst, std::abs(r.e_sin2 - e_psi(x, y)));
    }
  return {worst <= 1e-7, fmt("max |E_formula - E_solver| = %.3e on 25x25", worst)};
}

Outcome negativity_corners() {
  const double ng = negativity_of(DensityMatrix::from_pure(make_ghz()));
  const double nw = negativity_of(DensityMatrix::from_pure(make_w()));
  const bool ok = std::abs(ng - 1.0) < 1e-10 &&
                  std::abs(nw - 2.0 * std::sqrt(2.0) / 3.0) < 1e-10;
  return {ok, fmt("N(GHZ) = %.12f, N(W) = %.12f", ng, nw)};
}

Outcome separable_point() {
  shared.ensure();
  const double n0 = negativity_of(family_density_matrix(FamilyPoint(0.25, 0.375)));
  const double e0 = shared.mixed201.at(50, 75);
  double min_far = 1e9;
  for (int i = 0; i < 201; ++i)
    for (int j = 0; j < 201; ++j) {
      if (!shared.mixed201.valid(i, j)) continue;
      const double dx = shared.mixed201.x_at(i) - 0.25;
      const double dy = shared.mixed201.y_at(j) - 0.375;
      if (std::sqrt(dx * dx + dy * dy) > 0.05)
        min_far = std::min(min_far, shared.mixed201.at(i, j));
    }
  const bool ok = n0 <= 1e-10 && e0 <= 2e-3 && min_far > 1e-3;
  return {ok, fmt("N = %.2e, E_rho = %.2e; min E_rho beyond 0.05 = %.2e", n0, e0,
                  min_far)};
}

Outcome nonconvex_region() {
  shared.ensure();
  const HullReport rep = verify_convexity(shared.raw201, 100000, 2026);
  bool corner_pair = false;
  for (const ViolatingPair& p : rep.violating_pairs)
    if (p.x1 > 0.8 && p.x2 > 0.8 && p.violation > 0.0) corner_pair = true;
  double worst_low = 0.0;
  for (int i = 0; i < 201; ++i)
    for (int j = 0; j < 201; ++j) {
      if (!shared.mixed201.valid(i, j) || shared.mixed201.x_at(i) > 0.8) continue;
      worst_low =
          std::max(worst_low, shared.raw201.at(i, j) - shared.mixed201.at(i, j));
    }
  return {corner_pair && worst_low <= 5e-3,
          fmt("violating pair at x > 0.8: %s; max E_psi - E_rho for x <= 0.8 = %.3e",
              corner_pair ? "yes" : "no", worst_low)};
}

Outcome hull_equivalence() {
  const SurfaceGrid oracle = hull_oracle(101, 101);
  const SurfaceGrid surgical = mixed_gme_surface(101, 101);
  double worst = 0.0;
  for (int i = 0; i < 101; ++i)
    for (int j = 0; j < 101; ++j)
      if (oracle.valid(i, j))
        worst = std::max(worst, std::abs(oracle.at(i, j) - surgical.at(i, j)));
  return {worst <= 5e-3, fmt("max |surgical - lower hull| = %.3e at 101x101", worst)};
}

Outcome final_convexity() {
  shared.ensure();
  const HullReport rep = verify_convexity(shared.mixed201, 100000, 4242);
  return {rep.max_violation <= 5e-3,
          fmt("max violation = %.3e over %ld segments", rep.max_violation,
              rep.n_segments_tested)};
}

Outcome symmetries() {
  const int n = 60;
  double worst_analytic = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double x = double(i) / n, r = double(j) / n;
      worst_analytic =
          std::max(worst_analytic, std::abs(e_psi(x, (1.0 - x) * r) -
                                            e_psi(x, (1.0 - x) * (1.0 - r))));
    }
  shared.ensure();
  double worst_grid = 0.0;
  for (int i = 0; i < 201; ++i)
    for (int j = 0; j < 201; ++j) {
      if (!shared.mixed201.valid(i, j)) continue;
      const int j_sym = 200 - i - j;
      if (j_sym < 0) continue;
      worst_grid = std::max(
          worst_grid, std::abs(shared.mixed201.at(i, j) - shared.mixed201.at(i, j_sym)));
    }
  return {worst_analytic <= 1e-10 && worst_grid <= 5e-3,
          fmt("analytic r-mirror drift = %.3e, grid w-exchange drift = %.3e",
              worst_analytic, worst_grid)};
}

Outcome ordering_disagreement() {
  const int n = 21;
  const SurfaceGrid gme_s = mixed_gme_surface(n, n);
  const SurfaceGrid neg_s = negativity_surface(n, n);
  const std::vector<OrderingPair> pairs = ordering_search(gme_s, neg_s, 1000000, 7);
  bool corner = false;
  for (const OrderingPair& p : pairs) {
    const bool fwd = p.x1 == 1.0 && p.y1 == 0.0 && p.x2 == 0.0 && p.y2 == 1.0;
    const bool rev = p.x2 == 1.0 && p.y2 == 0.0 && p.x1 == 0.0 && p.y1 == 1.0;
    if (fwd || rev) corner = true;
  }
  return {!pairs.empty() && corner,
          fmt("%zu disagreeing pairs at 21x21, GHZ/W pair %s", pairs.size(),
              corner ? "present" : "missing")};
}

Outcome twirl_invariance() {
  const int n = 24;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      const FamilyPoint p(double(i) / n, double(j) / n);
      const DensityMatrix rho = family_density_matrix(p);
      worst = std::max(worst, max_abs_difference(twirl(rho).matrix, rho.matrix));
    }
  for (int trial = 0; trial < 20; ++trial) {
    double x = uni(rng), y = uni(rng);
    if (x + y > 1.0) {
      x = 1.0 - x;
      y = 1.0 - y;
    }
    const std::array<double, 3> phases = {2 * M_PI * uni(rng), 2 * M_PI * uni(rng),
                                          2 * M_PI * uni(rng)};
    const DensityMatrix proj =
        DensityMatrix::from_pure(family_pure_state(FamilyPoint(x, y, phases)));
    const DensityMatrix rho = family_density_matrix(FamilyPoint(x, y));
    worst = std::max(worst, max_abs_difference(twirl(proj).matrix, rho.matrix));
  }
  return {worst <= 1e-12, fmt("max entrywise drift = %.3e", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds;  // 0 = no budget
  };
  const std::vector<Criterion> criteria = {
      {"GHZ corner value", ghz_corner, 1.0},
      {"W and inverted-W corner values", w_corners, 1.0},
      {"closest product state of W", w_closest_product, 0.0},
      {"formula vs solver on 25x25 grid", grid_agreement, 120.0},
      {"negativity corner values", negativity_corners, 0.0},
      {"separable point (1/4, 3/8)", separable_point, 0.0},
      {"nonconvexity localized to x > 0.8", nonconvex_region, 0.0},
      {"hull oracle equivalence", hull_equivalence, 300.0},
      {"final surface convexity", final_convexity, 0.0},
      {"r-mirror and w-exchange symmetries", symmetries, 0.0},
      {"negativity/GME ordering reversal", ordering_disagreement, 0.0},
      {"twirl invariance and preimages", twirl_invariance, 0.0},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    bool pass = o.pass;
    std::string detail = o.detail;
    if (criteria[k].budget_seconds > 0.0 && secs > criteria[k].budget_seconds) {
      pass = false;
      detail += fmt(" [exceeded %.0f s budget]", criteria[k].budget_seconds);
    }
    std::printf("[%s] %2zu. %s — %s (%.2f s)\n", pass ? "PASS" : "FAIL", k + 1,
                criteria[k].name.c_str(), detail.c_str(), secs);
    if (!pass) ++failures;
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
