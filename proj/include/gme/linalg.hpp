#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace gme {

using Complex = std::complex<double>;

/// Dense square complex matrix, row major.  Sized for the few-qubit
/// operators used here (8x8 for three qubits); nothing is tuned for
/// large dimensions.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n <= 0) throw std::invalid_argument("CMatrix dimension must be positive");
  }

  static CMatrix identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return n_; }

  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Complex& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  const std::vector<Complex>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

inline CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matmul: dimension mismatch");
  const int n = a.dim();
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline Complex trace(const CMatrix& m) {
  Complex t{};
  for (int i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

inline double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const Complex& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

inline double max_abs_difference(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline bool is_hermitian(const CMatrix& m, double tol) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi
/// rotations.  The input is folded with its adjoint first so roundoff
/// asymmetry cannot bias the rotations.
inline std::vector<double> hermitian_eigenvalues(CMatrix h) {
  const int n = h.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex m = 0.5 * (h(i, j) + std::conj(h(j, i)));
      h(i, j) = m;
      h(j, i) = std::conj(m);
    }

  const double scale = std::max(frobenius_norm(h), 1e-300);
  const double stop = 1e-14 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (off <= stop * stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(h(p, q));
        if (g <= 1e-18 * scale) continue;
        const Complex u = h(p, q) / g;  // phase of the pivot entry
        const double alpha = h(p, p).real();
        const double beta = h(q, q).real();
        const double tau = (beta - alpha) / (2.0 * g);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex kp = h(k, p);
          const Complex kq = h(k, q);
          h(k, p) = c * kp - s * std::conj(u) * kq;
          h(k, q) = s * u * kp + c * kq;
          h(p, k) = std::conj(h(k, p));
          h(q, k) = std::conj(h(k, q));
        }
        h(p, p) = alpha - t * g;
        h(q, q) = beta + t * g;
        h(p, q) = 0.0;
        h(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = h(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace gme
