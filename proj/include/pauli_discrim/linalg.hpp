// Copyright 2026 The pauli-discrim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "pauli_discrim/errors.hpp"

namespace pauli_discrim {

using Complex = std::complex<double>;

/// Max entrywise |a - a^dagger| accepted as "Hermitian".
inline constexpr double kHermitianTol = 1e-12;
/// Jacobi sweep convergence: off-diagonal Frobenius norm below this is done.
inline constexpr double kJacobiOffTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

/// Dense square complex matrix, row-major. Carrier for qubit states,
/// two-qubit states, and the operators acting on them. Arithmetic accepts
/// any dimension; the spectral routines are tuned for the 2x2 and 4x4
/// problems this library actually solves.
///
/// All operations are pure: inputs are never mutated, values move freely
/// across threads.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(int dim) : dim_(dim) {
    if (dim <= 0) throw ValidationError("matrix dimension must be positive");
    entries_.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), Complex(0.0, 0.0));
  }

  /// Row-major entries; rejects NaN/Inf.
  ComplexMatrix(int dim, std::initializer_list<Complex> entries) : ComplexMatrix(dim) {
    if (entries.size() != entries_.size())
      throw ValidationError("entry count does not match dimension");
    std::copy(entries.begin(), entries.end(), entries_.begin());
    require_finite();
  }

  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  Complex operator()(int row, int col) const { return entries_[index(row, col)]; }
  Complex& operator()(int row, int col) { return entries_[index(row, col)]; }

  bool is_finite() const {
    for (const Complex& z : entries_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  void require_finite() const {
    if (!is_finite()) throw ValidationError("matrix contains a non-finite entry");
  }

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(col);
  }

  int dim_ = 0;
  std::vector<Complex> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("matmul: dimension mismatch");
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

/// a + c*b, entrywise.
inline ComplexMatrix add_scaled(const ComplexMatrix& a, double c, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("add_scaled: dimension mismatch");
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a(i, j) + c * b(i, j);
  return out;
}

inline ComplexMatrix scaled(const ComplexMatrix& a, Complex c) {
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = c * a(i, j);
  return out;
}

/// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

/// Kronecker product; block (j,k) of the result is a(j,k)*b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

inline Complex trace(const ComplexMatrix& a) {
  Complex t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// Max entrywise |a - a^dagger|.
inline double hermiticity_deviation(const ComplexMatrix& a) {
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) worst = std::max(worst, std::norm(a(i, j) - std::conj(a(j, i))));
  return std::sqrt(worst);
}

/// (a + a^dagger)/2. Removes roundoff drift accumulated by repeated
/// arithmetic before a spectral routine sees the matrix.
inline ComplexMatrix symmetrized(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return out;
}

namespace detail {

// The Jacobi kernel works on a flat row-major buffer so the dim <= 4 hot
// path stays on the stack.

inline double offdiag_norm_sq(const Complex* m, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(m[i * n + j]);
  return s;
}

// One two-sided Jacobi rotation annihilating m(p,q). The rotation is the
// real Jacobi rotation preceded by a phase that makes m(p,q) real:
// U = diag(e^{i phi}, 1) * [[c, s], [-s, c]] restricted to rows/cols (p,q).
inline void jacobi_rotate(Complex* m, int n, int p, int q) {
  const Complex g = m[p * n + q];
  const double ag = std::sqrt(std::norm(g));
  if (ag == 0.0) return;
  const Complex phase = g / ag;
  const double tau = (m[q * n + q].real() - m[p * n + p].real()) / (2.0 * ag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex upp = phase * c;
  const Complex upq = phase * s;
  for (int i = 0; i < n; ++i) {  // m <- m U
    const Complex mip = m[i * n + p], miq = m[i * n + q];
    m[i * n + p] = mip * upp - miq * s;
    m[i * n + q] = mip * upq + miq * c;
  }
  for (int j = 0; j < n; ++j) {  // m <- U^dagger m
    const Complex mpj = m[p * n + j], mqj = m[q * n + j];
    m[p * n + j] = std::conj(upp) * mpj - s * mqj;
    m[q * n + j] = std::conj(upq) * mpj + c * mqj;
  }
}

inline void jacobi_diagonalize(Complex* m, int n) {
  const double tol_sq = kJacobiOffTol * kJacobiOffTol;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (offdiag_norm_sq(m, n) < tol_sq) return;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) jacobi_rotate(m, n, p, q);
  }
  if (offdiag_norm_sq(m, n) >= tol_sq)
    throw ConsistencyError("hermitian_eigenvalues: Jacobi iteration failed to converge in 100 sweeps");
}

}  // namespace detail

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// Cyclic complex Jacobi: sweeps over all (p,q) pairs until the
/// off-diagonal Frobenius norm drops below kJacobiOffTol, hard-capped at
/// kJacobiMaxSweeps. Chosen for robustness at dimension <= 4, not speed.
/// The input must be Hermitian within kHermitianTol (max entrywise
/// deviation of a - dagger(a)); it is symmetrized before iterating.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  a.require_finite();
  if (hermiticity_deviation(a) > kHermitianTol)
    throw ValidationError("hermitian_eigenvalues: input is not Hermitian within 1e-12");
  const int n = a.dim();
  std::array<Complex, 16> stack_buffer;
  std::vector<Complex> heap_buffer;
  Complex* m = stack_buffer.data();
  if (n > 4) {
    heap_buffer.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    m = heap_buffer.data();
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = 0.5 * (a(i, j) + std::conj(a(j, i)));
  detail::jacobi_diagonalize(m, n);
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = m[i * n + i].real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(a)) s += std::abs(lambda);
  return s;
}

/// Transpose on the second tensor factor of a two-qubit operator, with the
/// composite index convention row = 2*(system) + (ancilla):
/// out((j,k),(l,m)) = a((j,m),(l,k)).
inline ComplexMatrix partial_transpose(const ComplexMatrix& a) {
  if (a.dim() != 4) throw ValidationError("partial_transpose: dimension must be 4");
  ComplexMatrix out(4);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) out(2 * j + k, 2 * l + m) = a(2 * j + m, 2 * l + k);
  return out;
}

/// The Pauli basis: sigma(0) = I, sigma(1) = X, sigma(2) = Y, sigma(3) = Z.
inline const ComplexMatrix& pauli(int alpha) {
  static const std::array<ComplexMatrix, 4> basis = {
      ComplexMatrix(2, {1, 0, 0, 1}),
      ComplexMatrix(2, {0, 1, 1, 0}),
      ComplexMatrix(2, {0, Complex(0, -1), Complex(0, 1), 0}),
      ComplexMatrix(2, {1, 0, 0, -1}),
  };
  if (alpha < 0 || alpha > 3) throw ValidationError("pauli: index out of range");
  return basis[static_cast<std::size_t>(alpha)];
}

}  // namespace pauli_discrim
