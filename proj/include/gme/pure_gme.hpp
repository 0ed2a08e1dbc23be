#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gme/states.hpp"

namespace gme {

/// Thrown when a site contraction collapses to the zero vector, which means
/// the current product state is orthogonal to the target on that site.  The
/// solver treats the affected initialization as failed and moves on.
class DegenerateContraction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  int max_iterations = 2000;
  double tolerance = 1e-12;  // convergence threshold on the overlap per sweep
  int restarts = 24;         // random initializations, on top of basis starts
  std::uint64_t seed = 1;
};

struct GmeResult {
  double lambda_max = 0.0;  // largest stationary overlap found
  double e_sin2 = 0.0;      // 1 - lambda_max^2
  ProductState closest_product;
  int iterations_used = 0;
  bool converged = false;
};

struct SweepResult {
  ProductState product;
  double lambda = 0.0;
};

namespace detail {

/// Contraction of psi against the conjugated site vectors of phi on every
/// site except `site`; a stationary product state satisfies
/// w_site = <phi|psi> * c_site.
inline std::array<Complex, 2> contract_excluding(const PureState& psi,
                                                 const ProductState& phi,
                                                 int site) {
  const int n = psi.n_qubits;
  std::array<Complex, 2> w{};
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    Complex p = psi.amplitudes[b];
    if (p == Complex{}) continue;
    for (int k = 0; k < n; ++k) {
      if (k == site) continue;
      p *= std::conj(phi.sites[k][qubit_bit(b, n, k)]);
    }
    w[qubit_bit(b, n, site)] += p;
  }
  return w;
}

inline ProductState random_product_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::array<Complex, 2>> sites(n);
  for (auto& c : sites) {
    double nrm = 0.0;
    do {
      c[0] = Complex(gauss(rng), gauss(rng));
      c[1] = Complex(gauss(rng), gauss(rng));
      nrm = std::sqrt(std::norm(c[0]) + std::norm(c[1]));
    } while (nrm < 1e-12);
    c[0] /= nrm;
    c[1] /= nrm;
  }
  return ProductState(n, std::move(sites));
}

}  // namespace detail

/// One full pass of the alternating update: each site vector in turn is
/// replaced by its normalized contraction against the others.  Every site
/// update maximizes the overlap over that site, so the overlap is
/// non-decreasing across the sweep.  Returns the updated product state and
/// the overlap magnitude after the final site update.
inline SweepResult stationarity_sweep(const PureState& psi, ProductState phi) {
  if (psi.n_qubits != phi.n_qubits)
    throw std::invalid_argument("stationarity_sweep: qubit count mismatch");
  double lambda = 0.0;
  for (int s = 0; s < psi.n_qubits; ++s) {
    const std::array<Complex, 2> w = detail::contract_excluding(psi, phi, s);
    const double nw = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
    if (!(nw > 1e-150))
      throw DegenerateContraction("zero contraction at site " + std::to_string(s));
    std::array<Complex, 2> c = {w[0] / nw, w[1] / nw};
    // Gauge fix: rotate so the largest-magnitude component is real and
    // non-negative, which makes fixed points well-defined vectors.
    const int big = std::abs(c[0]) >= std::abs(c[1]) ? 0 : 1;
    const Complex ph = c[big] / std::abs(c[big]);
    c[0] *= std::conj(ph);
    c[1] *= std::conj(ph);
    phi.sites[s] = c;
    lambda = nw;
  }
  return {std::move(phi), lambda};
}

/// Max over sites of || w_site - <phi|psi> c_site ||; vanishes at a
/// stationary product state.
inline double stationarity_residual(const PureState& psi, const ProductState& phi) {
  const Complex z = overlap(phi, psi);
  double worst = 0.0;
  for (int s = 0; s < psi.n_qubits; ++s) {
    const std::array<Complex, 2> w = detail::contract_excluding(psi, phi, s);
    const Complex r0 = w[0] - z * phi.sites[s][0];
    const Complex r1 = w[1] - z * phi.sites[s][1];
    worst = std::max(worst, std::sqrt(std::norm(r0) + std::norm(r1)));
  }
  return worst;
}

/// Largest overlap between psi and any product state, by alternating
/// fixed-point iteration from several starts: every computational basis
/// product state (for small n) plus `restarts` random draws.  Deterministic
/// given (psi, config); ties between starts go to the earliest one.
inline GmeResult solve_gme(const PureState& psi, const SolverConfig& config = {}) {
  if (config.tolerance <= 0.0)
    throw std::invalid_argument("SolverConfig: tolerance must be positive");
  if (config.restarts < 1)
    throw std::invalid_argument("SolverConfig: restarts must be at least 1");
  if (config.max_iterations < 1)
    throw std::invalid_argument("SolverConfig: max_iterations must be at least 1");

  const int n = psi.n_qubits;
  const int basis_starts = n <= 6 ? (1 << n) : 0;
  const int total_starts = basis_starts + config.restarts;
  std::mt19937_64 rng(config.seed);

  // The overlap is stationary at a fixed point, so its per-sweep change
  // flattens out well before the site vectors settle; keep sweeping after
  // the overlap converges until the residual drops too.
  constexpr double kResidualTarget = 1e-9;
  auto iterate = [&](ProductState phi, double& lambda, bool& converged) {
    double lambda_prev = -1.0;
    int iters = 0;
    for (int it = 1; it <= config.max_iterations; ++it) {
      SweepResult r = stationarity_sweep(psi, std::move(phi));
      phi = std::move(r.product);
      lambda = r.lambda;
      iters = it;
      if (std::abs(lambda - lambda_prev) < config.tolerance) {
        converged = true;
        if (stationarity_residual(psi, phi) <= kResidualTarget) break;
      }
      lambda_prev = lambda;
    }
    return std::pair<ProductState, int>(std::move(phi), iters);
  };

  bool have_result = false;
  double best_lambda = -1.0;
  ProductState best_phi = ProductState::basis(n, 0);
  int best_iters = 0;
  bool best_converged = false;

  for (int start = 0; start < total_starts; ++start) {
    ProductState phi = start < basis_starts
                           ? ProductState::basis(n, static_cast<std::size_t>(start))
                           : detail::random_product_state(n, rng);
    double lambda = 0.0;
    bool converged = false;
    try {
      auto [final_phi, iters] = iterate(std::move(phi), lambda, converged);
      have_result = true;
      if (lambda > best_lambda) {
        best_lambda = lambda;
        best_phi = std::move(final_phi);
        best_iters = iters;
        best_converged = converged;
      }
    } catch (const DegenerateContraction&) {
      continue;  // orthogonal initialization; try the next start
    }
  }

  if (!have_result)
    throw DegenerateContraction("every initialization produced a zero contraction");

  // Maximizers are sometimes degenerate along relative-phase circles (the
  // W-type states are the canonical case).  Among equally good products,
  // prefer the representative with non-negative real amplitudes whenever it
  // attains the same overlap, so the reported state is well defined.
  try {
    std::vector<std::array<Complex, 2>> stripped(n);
    for (int s = 0; s < n; ++s)
      stripped[s] = {std::abs(best_phi.sites[s][0]), std::abs(best_phi.sites[s][1])};
    double lambda_s = 0.0;
    bool converged_s = false;
    auto [phi_s, iters_s] =
        iterate(ProductState(n, std::move(stripped)), lambda_s, converged_s);
    if (lambda_s >= best_lambda - 100.0 * config.tolerance) {
      best_lambda = lambda_s;  // overlap of the state actually returned
      best_phi = std::move(phi_s);
      best_iters = iters_s;
      best_converged = converged_s;
    }
  } catch (const DegenerateContraction&) {
    // stripped start collapsed; keep the original representative
  }

  const double lam = std::min(1.0, std::max(0.0, best_lambda));
  GmeResult out{lam, std::max(0.0, 1.0 - lam * lam), std::move(best_phi),
                best_iters, best_converged};
  return out;
}

}  // namespace gme
