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

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pauli_discrim/errors.hpp"
#include "pauli_discrim/linalg.hpp"

namespace pauli_discrim {

/// Channel weights may undershoot zero by this much before rejection.
inline constexpr double kWeightNegTol = 1e-12;
/// Channel weights may missum to 1 by this much before rejection.
inline constexpr double kWeightSumTol = 1e-9;
/// Density matrices: |trace - 1| and hermiticity tolerance.
inline constexpr double kDensityTol = 1e-12;
/// Density matrices / PPT test: eigenvalues above this count as nonnegative.
inline constexpr double kEigNegTol = 1e-10;

/// A qubit Pauli channel rho -> sum_a q[a] sigma_a rho sigma_a.
/// Weights are nonnegative and sum to exactly 1 after construction.
struct PauliChannel {
  std::array<double, 4> q;
};

/// Validates and normalizes a weight vector into a channel. Tiny negative
/// components (within kWeightNegTol) are clamped to zero and the vector is
/// renormalized to unit sum; anything worse is rejected. Sweep code produces
/// weights by floating arithmetic, so exactness is not demanded on input.
inline PauliChannel make_pauli_channel(const std::array<double, 4>& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw ValidationError("channel weight is not finite");
    if (w < -kWeightNegTol)
      throw ValidationError("channel weight " + std::to_string(w) + " is negative beyond tolerance");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw ValidationError("channel weights sum to " + std::to_string(sum) + ", not 1");
  PauliChannel ch{};
  double clamped_sum = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    ch.q[a] = std::max(weights[a], 0.0);
    clamped_sum += ch.q[a];
  }
  for (double& w : ch.q) w /= clamped_sum;
  return ch;
}

/// Depolarizing channel: weight q on the identity, (1-q)/3 on each Pauli.
inline PauliChannel depolarizing(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("depolarizing: q must lie in [0, 1]");
  const double rest = (1.0 - q) / 3.0;
  return make_pauli_channel({q, rest, rest, rest});
}

/// A validated quantum state: Hermitian within 1e-12, unit trace within
/// 1e-12, eigenvalues >= -1e-10. Dimension 2 (qubit) or 4 (qubit + ancilla).
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& mat) : mat_(mat) {
    if (mat_.dim() != 2 && mat_.dim() != 4)
      throw ValidationError("density matrix must have dimension 2 or 4");
    mat_.require_finite();
    if (hermiticity_deviation(mat_) > kDensityTol)
      throw ValidationError("density matrix is not Hermitian within 1e-12");
    if (std::abs(trace(mat_) - Complex(1.0, 0.0)) > kDensityTol)
      throw ValidationError("density matrix trace differs from 1 beyond 1e-12");
    const std::vector<double> eig = hermitian_eigenvalues(mat_);
    if (eig.front() < -kEigNegTol)
      throw ValidationError("density matrix has eigenvalue " + std::to_string(eig.front()) +
                            " below -1e-10");
  }

  const ComplexMatrix& mat() const { return mat_; }
  int dim() const { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
};

namespace detail {

inline std::array<Complex, 4> apply_matrix4(const ComplexMatrix& m, const std::array<Complex, 4>& v) {
  std::array<Complex, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(i)] += m(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

// sum_a w[a] sigma_a rho sigma_a, with sigma_a acting on the basis bit
// selected by bit_mask (1: the qubit itself, 2: the system half of a
// two-qubit state). Each conjugation is a signed entry permutation
// (X flips the bit, Y flips with signs, Z applies signs), so the sum is
// exact entry arithmetic, identical in value to the matrix-product route.
inline ComplexMatrix pauli_mix(const std::array<double, 4>& weights, const ComplexMatrix& m, int bit_mask) {
  const int n = m.dim();
  ComplexMatrix out(n);
  for (int a = 0; a < 4; ++a) {
    const double w = weights[static_cast<std::size_t>(a)];
    if (w == 0.0) continue;
    const int flip = (a == 1 || a == 2) ? bit_mask : 0;
    const bool phased = a == 2 || a == 3;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex v = m(i ^ flip, j ^ flip);
        out(i, j) += phased && ((i ^ j) & bit_mask) != 0 ? w * -v : w * v;
      }
  }
  return out;
}

}  // namespace detail

/// |beta_alpha> = (sigma_alpha (x) I)|beta>, |beta> = (|00> + |11>)/sqrt(2).
/// The four of them are the Bell basis: orthonormal, summing to I4 as
/// projectors. Components in the composite basis row = 2*system + ancilla.
inline const std::array<Complex, 4>& bell_state(int alpha) {
  static const std::array<std::array<Complex, 4>, 4> states = [] {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::array<Complex, 4> beta = {inv_sqrt2, 0.0, 0.0, inv_sqrt2};
    std::array<std::array<Complex, 4>, 4> out{};
    for (int a = 0; a < 4; ++a)
      out[static_cast<std::size_t>(a)] = detail::apply_matrix4(kron(pauli(a), ComplexMatrix::identity(2)), beta);
    return out;
  }();
  if (alpha < 0 || alpha > 3) throw ValidationError("bell_state: index out of range");
  return states[static_cast<std::size_t>(alpha)];
}

/// |v><v| for a dim-2 or dim-4 amplitude vector; normalizes the input.
inline ComplexMatrix projector(const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  double norm2 = 0.0;
  for (const Complex& z : v) norm2 += std::norm(z);
  if (norm2 <= 0.0) throw ValidationError("projector: zero vector");
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]) / norm2;
  return out;
}

inline ComplexMatrix bell_projector(int alpha) {
  const auto& b = bell_state(alpha);
  return projector(std::vector<Complex>(b.begin(), b.end()));
}

/// (I + n.sigma)/2 for a Bloch vector with |n| <= 1.
inline DensityMatrix qubit_state(const std::array<double, 3>& bloch) {
  const double len = std::sqrt(bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]);
  if (len > 1.0 + 1e-12) throw ValidationError("qubit_state: Bloch vector longer than 1");
  ComplexMatrix m = scaled(ComplexMatrix::identity(2), 0.5);
  for (int k = 0; k < 3; ++k) m = add_scaled(m, 0.5 * bloch[static_cast<std::size_t>(k)], pauli(k + 1));
  return DensityMatrix(m);
}

/// sum_a q[a] sigma_a rho sigma_a on a qubit state.
inline DensityMatrix apply(const PauliChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != 2) throw ValidationError("apply: expected a qubit (dim 2) state");
  return DensityMatrix(detail::pauli_mix(ch.q, rho.mat(), 1));
}

/// sum_a q[a] (sigma_a (x) I) Gamma (sigma_a (x) I): the channel on the
/// system half of a two-qubit state, identity on the ancilla.
inline DensityMatrix apply_extended(const PauliChannel& ch, const DensityMatrix& gamma) {
  if (gamma.dim() != 4) throw ValidationError("apply_extended: expected a two-qubit (dim 4) state");
  return DensityMatrix(detail::pauli_mix(ch.q, gamma.mat(), 2));
}

/// The Choi state (E (x) I)(|beta><beta|) = sum_a q[a] |beta_a><beta_a|,
/// normalized to unit trace. Bell-diagonal with spectrum q.
inline DensityMatrix choi(const PauliChannel& ch) {
  ComplexMatrix out(4);
  for (int a = 0; a < 4; ++a) out = add_scaled(out, ch.q[static_cast<std::size_t>(a)], bell_projector(a));
  return DensityMatrix(out);
}

struct EBReport {
  bool is_entanglement_breaking;
  double min_pt_eigenvalue;
};

/// PPT certificate on the Choi state. For qubit channels PPT is exact:
/// the Choi state is separable iff its partial transpose is positive
/// semidefinite, so the flag decides entanglement breaking outright.
/// Eigenvalues down to -1e-10 count as nonnegative so that boundary
/// channels classify as entanglement breaking.
inline EBReport is_entanglement_breaking(const PauliChannel& ch) {
  const std::vector<double> eig = hermitian_eigenvalues(partial_transpose(choi(ch).mat()));
  const double min_eig = eig.front();
  return EBReport{min_eig >= -kEigNegTol, min_eig};
}

}  // namespace pauli_discrim
