#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gme/domain.hpp"
#include "gme/linalg.hpp"

namespace gme {

inline constexpr double kNormTol = 1e-12;

/// Bit of `basis` belonging to qubit `site` (0-based), with qubit 0 stored
/// in the most significant position of the index.
inline int qubit_bit(std::size_t basis, int n_qubits, int site) {
  return static_cast<int>((basis >> (n_qubits - 1 - site)) & 1u);
}

/// Pure state of n qubits as a dense amplitude vector of length 2^n.
struct PureState {
  int n_qubits = 0;
  std::vector<Complex> amplitudes;

  PureState(int n, std::vector<Complex> amps)
      : n_qubits(n), amplitudes(std::move(amps)) {
    if (n <= 0) throw std::invalid_argument("PureState: n_qubits must be positive");
    if (amplitudes.size() != (std::size_t{1} << n))
      throw std::invalid_argument("PureState: amplitude vector has wrong length");
    double s = 0.0;
    for (const Complex& a : amplitudes) s += std::norm(a);
    if (std::abs(s - 1.0) > 1e3 * kNormTol)
      throw std::invalid_argument("PureState: amplitudes are not normalized");
  }

  static PureState normalized(int n, std::vector<Complex> amps) {
    double s = 0.0;
    for (const Complex& a : amps) s += std::norm(a);
    if (s <= 0.0) throw std::invalid_argument("PureState: zero vector");
    const double inv = 1.0 / std::sqrt(s);
    for (Complex& a : amps) a *= inv;
    return PureState(n, std::move(amps));
  }

  static PureState basis(int n, std::size_t index) {
    std::vector<Complex> amps(std::size_t{1} << n);
    amps.at(index) = 1.0;
    return PureState(n, std::move(amps));
  }

  std::size_t dim() const { return amplitudes.size(); }
};

/// Separable pure state: one normalized coefficient 2-vector per qubit.
struct ProductState {
  int n_qubits = 0;
  std::vector<std::array<Complex, 2>> sites;

  ProductState(int n, std::vector<std::array<Complex, 2>> s)
      : n_qubits(n), sites(std::move(s)) {
    if (n <= 0) throw std::invalid_argument("ProductState: n_qubits must be positive");
    if (sites.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("ProductState: wrong number of site vectors");
    for (const auto& c : sites) {
      const double nrm = std::norm(c[0]) + std::norm(c[1]);
      if (std::abs(nrm - 1.0) > 1e3 * kNormTol)
        throw std::invalid_argument("ProductState: site vector not normalized");
    }
  }

  /// Computational basis product state |b_0 b_1 ... b_{n-1}>.
  static ProductState basis(int n, std::size_t bits) {
    std::vector<std::array<Complex, 2>> s(n);
    for (int k = 0; k < n; ++k) {
      const int b = qubit_bit(bits, n, k);
      s[k] = {Complex(b == 0 ? 1.0 : 0.0), Complex(b == 1 ? 1.0 : 0.0)};
    }
    return ProductState(n, std::move(s));
  }

  PureState to_pure() const {
    const std::size_t d = std::size_t{1} << n_qubits;
    std::vector<Complex> amps(d);
    for (std::size_t b = 0; b < d; ++b) {
      Complex p = 1.0;
      for (int k = 0; k < n_qubits; ++k) p *= sites[k][qubit_bit(b, n_qubits, k)];
      amps[b] = p;
    }
    return PureState(n_qubits, std::move(amps));
  }
};

/// <phi|psi> for a product state phi.
inline Complex overlap(const ProductState& phi, const PureState& psi) {
  if (phi.n_qubits != psi.n_qubits)
    throw std::invalid_argument("overlap: qubit count mismatch");
  std::vector<Complex> v = psi.amplitudes;
  // Contract one site at a time, least significant qubit first.
  for (int k = psi.n_qubits - 1; k >= 0; --k) {
    const Complex c0 = std::conj(phi.sites[k][0]);
    const Complex c1 = std::conj(phi.sites[k][1]);
    const std::size_t half = v.size() / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = c0 * v[2 * i] + c1 * v[2 * i + 1];
    v.resize(half);
  }
  return v[0];
}

/// Hermitian, unit-trace, positive-semidefinite operator on n qubits.
/// All three properties are checked at construction.
struct DensityMatrix {
  int n_qubits = 0;
  CMatrix matrix;

  DensityMatrix(int n, CMatrix m) : n_qubits(n), matrix(std::move(m)) {
    if (n <= 0) throw std::invalid_argument("DensityMatrix: n_qubits must be positive");
    if (matrix.dim() != (1 << n))
      throw std::invalid_argument("DensityMatrix: matrix has wrong dimension");
    if (!is_hermitian(matrix, 1e-12))
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    if (std::abs(trace(matrix) - Complex{1.0}) > 1e-12)
      throw std::invalid_argument("DensityMatrix: trace differs from 1");
    const std::vector<double> eig = hermitian_eigenvalues(matrix);
    if (eig.front() < -1e-10)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                  std::to_string(eig.front()));
  }

  static DensityMatrix from_pure(const PureState& psi) {
    CMatrix m(static_cast<int>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i)
      for (std::size_t j = 0; j < psi.dim(); ++j)
        m(static_cast<int>(i), static_cast<int>(j)) =
            psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return DensityMatrix(psi.n_qubits, std::move(m));
  }
};

inline PureState make_ghz() {
  std::vector<Complex> a(8);
  a[0] = a[7] = 1.0 / std::sqrt(2.0);
  return PureState(3, std::move(a));
}

inline PureState make_w() {
  std::vector<Complex> a(8);
  a[1] = a[2] = a[4] = 1.0 / std::sqrt(3.0);
  return PureState(3, std::move(a));
}

inline PureState make_w_tilde() {
  std::vector<Complex> a(8);
  a[3] = a[5] = a[6] = 1.0 / std::sqrt(3.0);
  return PureState(3, std::move(a));
}

/// Point of the GHZ/W/W-tilde mixing simplex, with optional phases for the
/// pure superposition (the mixed state carries none).
struct FamilyPoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<std::array<double, 3>> phases;

  FamilyPoint(double x_, double y_,
              std::optional<std::array<double, 3>> ph = std::nullopt)
      : x(x_), y(y_), phases(ph) {
    require_simplex(x, y, 1e-12);
  }

  double z() const { return third_weight(x, y); }
};

/// sqrt(x) e^{i phi1} |GHZ> + sqrt(y) e^{i phi2} |W> + sqrt(1-x-y) e^{i phi3} |W~>.
/// The three components are mutually orthogonal, so the result is normalized.
inline PureState family_pure_state(const FamilyPoint& p) {
  const std::array<double, 3> ph = p.phases.value_or(std::array<double, 3>{});
  const Complex cg = std::sqrt(std::max(0.0, p.x)) * std::polar(1.0, ph[0]);
  const Complex cw = std::sqrt(std::max(0.0, p.y)) * std::polar(1.0, ph[1]);
  const Complex ct = std::sqrt(p.z()) * std::polar(1.0, ph[2]);

  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  std::vector<Complex> a(8);
  a[0] = cg * s2;
  a[7] = cg * s2;
  a[1] = cw * s3;
  a[2] = cw * s3;
  a[4] = cw * s3;
  a[3] = ct * s3;
  a[5] = ct * s3;
  a[6] = ct * s3;
  return PureState::normalized(3, std::move(a));
}

/// x |GHZ><GHZ| + y |W><W| + (1-x-y) |W~><W~|, an 8x8 real symmetric matrix.
inline DensityMatrix family_density_matrix(const FamilyPoint& p) {
  if (p.phases)
    throw std::invalid_argument(
        "family_density_matrix: phases apply only to the pure superposition");
  const PureState ghz = make_ghz();
  const PureState w = make_w();
  const PureState wt = make_w_tilde();
  const double z = p.z();
  CMatrix m(8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      m(i, j) = p.x * ghz.amplitudes[i] * std::conj(ghz.amplitudes[j]) +
                p.y * w.amplitudes[i] * std::conj(w.amplitudes[j]) +
                z * wt.amplitudes[i] * std::conj(wt.amplitudes[j]);
  return DensityMatrix(3, std::move(m));
}

/// Group average rho -> (1/3) sum_k U_k rho U_k^dagger, where U_k applies the
/// phase |1> -> exp(2 pi i k / 3) |1> on every qubit simultaneously.
inline DensityMatrix twirl(const DensityMatrix& rho) {
  const int n = rho.n_qubits;
  const int d = rho.matrix.dim();
  CMatrix out(d);
  for (int k = 1; k <= 3; ++k) {
    std::vector<Complex> phase(d);
    for (int a = 0; a < d; ++a) {
      const int w = std::popcount(static_cast<unsigned>(a));
      phase[a] = std::polar(1.0, 2.0 * M_PI * k * w / 3.0);
    }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        out(a, b) += phase[a] * rho.matrix(a, b) * std::conj(phase[b]) / 3.0;
  }
  return DensityMatrix(n, std::move(out));
}

}  // namespace gme
