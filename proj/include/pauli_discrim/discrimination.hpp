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
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "pauli_discrim/channels.hpp"
#include "pauli_discrim/errors.hpp"
#include "pauli_discrim/linalg.hpp"
#include "pauli_discrim/rng.hpp"

namespace pauli_discrim {

/// "Strictly improves" is decided at improvement > 1e-12 ...
inline constexpr double kImprovementTol = 1e-12;
/// ... and at prod_a r_a < -1e-15. Exact zeros are "no strict improvement".
inline constexpr double kProductTol = 1e-15;

/// Two Pauli channels with prior p1 on the first (p2 = 1 - p1 implied).
struct DiscriminationProblem {
  PauliChannel channel1;
  PauliChannel channel2;
  double p1;

  double p2() const { return 1.0 - p1; }
};

inline void require_valid(const DiscriminationProblem& prob) {
  if (!(prob.p1 >= 0.0 && prob.p1 <= 1.0))
    throw ValidationError("prior p1 must lie in [0, 1]");
}

/// The four coefficients r_a = p1*q1[a] - p2*q2[a]. Their signs decide
/// whether entanglement helps; their magnitudes carry both optimal error
/// probabilities.
struct RVector {
  std::array<double, 4> r;

  double sum() const { return r[0] + r[1] + r[2] + r[3]; }
  double abs_sum() const { return std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]) + std::abs(r[3]); }
  double product() const { return r[0] * r[1] * r[2] * r[3]; }
};

inline RVector r_vector(const DiscriminationProblem& prob) {
  require_valid(prob);
  RVector rv{};
  for (std::size_t a = 0; a < 4; ++a)
    rv.r[a] = prob.p1 * prob.channel1.q[a] - prob.p2() * prob.channel2.q[a];
  return rv;
}

/// True iff an entangled probe strictly lowers the discrimination error,
/// decided by the sign of prod_a r_a (strictly negative beyond tolerance).
inline bool entanglement_helps(const DiscriminationProblem& prob) {
  return r_vector(prob).product() < -kProductTol;
}

/// Minimum-error (Helstrom) probability of confusing rho1 (prior p1) with
/// rho2 (prior 1-p1): (1 - ||p1 rho1 - p2 rho2||_1) / 2.
inline double helstrom_error(const DensityMatrix& rho1, const DensityMatrix& rho2, double p1) {
  if (rho1.dim() != rho2.dim()) throw ValidationError("helstrom_error: dimension mismatch");
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw ValidationError("helstrom_error: prior must lie in [0, 1]");
  const ComplexMatrix diff = add_scaled(scaled(rho1.mat(), p1), -(1.0 - p1), rho2.mat());
  return (1.0 - trace_norm(diff)) / 2.0;
}

/// Error probability of the maximally entangled strategy: Helstrom on the
/// two Choi states. Both are Bell-diagonal, so the trace norm also equals
/// sum_a |r_a|; the two routes are computed independently and must agree
/// within 1e-12 or the call aborts with a ConsistencyError.
inline double error_entangled(const DiscriminationProblem& prob) {
  require_valid(prob);
  const double via_choi = helstrom_error(choi(prob.channel1), choi(prob.channel2), prob.p1);
  const double via_r = (1.0 - r_vector(prob).abs_sum()) / 2.0;
  if (std::abs(via_choi - via_r) > 1e-12)
    throw ConsistencyError("error_entangled: Choi route " + std::to_string(via_choi) +
                           " disagrees with Bell-diagonal route " + std::to_string(via_r));
  return via_choi;
}

struct UnentangledOptimum {
  double error;
  std::array<double, 3> bloch_axis;
};

/// Error probability of the best single-qubit (no ancilla) strategy.
///
/// Conjugation by sigma_a reflects Bloch components, so a Pauli channel
/// scales the Bloch axis k by (q0 + qk - qi - qj). For the weighted
/// difference of the two outputs the attainable trace norm over pure inputs
/// is max(|s|, max_k |c_k|) with s = sum_a r_a and c_k = r0 + r_k - r_i - r_j,
/// attained on the coordinate axis maximizing |c_k| (any input attains |s|
/// when that dominates). Mixed inputs never win: the objective is convex in
/// the Bloch vector. This closed form is certified against the brute-force
/// oracle in the test suite.
inline UnentangledOptimum error_unentangled(const DiscriminationProblem& prob) {
  const RVector rv = r_vector(prob);
  const double s = rv.sum();
  std::array<double, 3> c{};
  for (int k = 1; k <= 3; ++k)
    c[static_cast<std::size_t>(k - 1)] = 2.0 * (rv.r[0] + rv.r[static_cast<std::size_t>(k)]) - s;
  int best_k = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(c[static_cast<std::size_t>(k)]) > std::abs(c[static_cast<std::size_t>(best_k)])) best_k = k;
  const double best_norm = std::max(std::abs(s), std::abs(c[static_cast<std::size_t>(best_k)]));
  std::array<double, 3> axis = {0.0, 0.0, 0.0};
  axis[static_cast<std::size_t>(best_k)] = 1.0;
  return UnentangledOptimum{(1.0 - best_norm) / 2.0, axis};
}

/// Brute-force oracle for the single-qubit strategy: minimum Helstrom error
/// over pure inputs on an n_grid x n_grid (theta, phi) sphere grid plus the
/// six coordinate-axis points, so the analytic optimizer is exactly
/// representable. Pure states suffice: the error is concave in the input
/// state, so mixing never lowers it.
inline double error_unentangled_bruteforce(const DiscriminationProblem& prob, int n_grid) {
  require_valid(prob);
  if (n_grid < 6) throw ValidationError("error_unentangled_bruteforce: grid must be at least 6");
  std::vector<std::array<double, 3>> points;
  points.reserve(static_cast<std::size_t>(n_grid) * static_cast<std::size_t>(n_grid) + 6);
  for (int i = 0; i < n_grid; ++i) {
    const double theta = std::numbers::pi * i / (n_grid - 1);
    for (int j = 0; j < n_grid; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_grid;
      points.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
    }
  }
  for (int k = 0; k < 3; ++k)
    for (double sign : {1.0, -1.0}) {
      std::array<double, 3> axis = {0.0, 0.0, 0.0};
      axis[static_cast<std::size_t>(k)] = sign;
      points.push_back(axis);
    }
  double best = 1.0;
  for (const auto& n : points) {
    const DensityMatrix rho = qubit_state(n);
    best = std::min(best, helstrom_error(apply(prob.channel1, rho), apply(prob.channel2, rho), prob.p1));
  }
  return best;
}

/// Brute-force upper-bound oracle for the two-qubit strategy: minimum
/// Helstrom error of (E_i (x) I) over n_samples pseudo-random pure states
/// (normalized complex Gaussian 4-vectors, splitmix64-seeded) plus the
/// maximally entangled |beta>, which is optimal and keeps the oracle exact
/// for Pauli channels.
inline double error_entangled_bruteforce(const DiscriminationProblem& prob, int n_samples,
                                         std::uint64_t seed) {
  require_valid(prob);
  if (n_samples < 1) throw ValidationError("error_entangled_bruteforce: need at least one sample");
  SplitMix64 rng(seed);
  const auto& beta = bell_state(0);
  double best = 1.0;
  std::vector<Complex> amps(beta.begin(), beta.end());
  for (int sample = 0; sample <= n_samples; ++sample) {
    if (sample > 0)
      for (Complex& z : amps) z = Complex(rng.next_gaussian(), rng.next_gaussian());
    const DensityMatrix gamma{projector(amps)};
    best = std::min(best, helstrom_error(apply_extended(prob.channel1, gamma),
                                         apply_extended(prob.channel2, gamma), prob.p1));
  }
  return best;
}

/// Everything the library knows about one discrimination problem.
/// `boundary` marks |prod_a r_a| within tolerance of zero, where the strict
/// improvement criterion is degenerate and neither outcome is certified.
struct DiscriminationReport {
  RVector r;
  double err_unentangled;
  std::array<double, 3> optimal_bloch_axis;
  double err_entangled;
  bool entanglement_helps;
  double improvement;
  double r_product;
  bool boundary;
};

inline DiscriminationReport discriminate(const DiscriminationProblem& prob) {
  const RVector rv = r_vector(prob);
  const UnentangledOptimum unent = error_unentangled(prob);
  const double ent = error_entangled(prob);
  DiscriminationReport report{};
  report.r = rv;
  report.err_unentangled = unent.error;
  report.optimal_bloch_axis = unent.bloch_axis;
  report.err_entangled = ent;
  report.entanglement_helps = rv.product() < -kProductTol;
  report.improvement = unent.error - ent;
  report.r_product = rv.product();
  report.boundary = std::abs(rv.product()) <= kProductTol;
  if (report.entanglement_helps != (report.improvement > kImprovementTol))
    throw ConsistencyError(
        "discriminate: sign criterion and error improvement disagree (r_product = " +
        std::to_string(report.r_product) + ", improvement = " + std::to_string(report.improvement) + ")");
  return report;
}

namespace detail {

inline void require_depolarizing_pair(double q1, double q2) {
  if (!(q1 >= 0.0 && q1 <= 1.0) || !(q2 >= 0.0 && q2 <= 1.0))
    throw ValidationError("depolarizing parameters must lie in [0, 1]");
  if (q1 == q2) throw ValidationError("depolarizing pair requires q1 != q2");
}

}  // namespace detail

/// Quadratic improvement test for two depolarizing channels:
/// (q1+q2)(2-q1-q2) p^2 - (q1 - 2 q1 q2 + 3 q2 - 2 q2^2) p + q2(1-q2) < 0.
inline bool depolarizing_improvement_condition(double p, double q1, double q2) {
  detail::require_depolarizing_pair(q1, q2);
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("prior p must lie in [0, 1]");
  const double a = (q1 + q2) * (2.0 - q1 - q2);
  const double b = -(q1 - 2.0 * q1 * q2 + 3.0 * q2 - 2.0 * q2 * q2);
  const double c = q2 * (1.0 - q2);
  return (a * p + b) * p + c < -kProductTol;
}

/// Open interval of priors where an entangled probe strictly helps.
struct PriorInterval {
  double lower;
  double upper;
  bool empty;

  bool contains(double p) const { return !empty && lower < p && p < upper; }
};

/// Roots of the depolarizing improvement quadratic in closed form:
/// q2/(q1+q2) and (1-q2)/(2-q1-q2), ordered by the sign of q1 - q2. Flagged
/// empty if the bounds collapse within 1e-12.
inline PriorInterval depolarizing_region(double q1, double q2) {
  detail::require_depolarizing_pair(q1, q2);
  const double at_identity = q2 / (q1 + q2);
  const double at_flip = (1.0 - q2) / (2.0 - q1 - q2);
  PriorInterval interval{};
  interval.lower = q1 > q2 ? at_identity : at_flip;
  interval.upper = q1 > q2 ? at_flip : at_identity;
  interval.empty = !(interval.upper - interval.lower > 1e-12);
  return interval;
}

struct RegionRow {
  double q1;
  double lower;
  double upper;
};

struct RegionSweep {
  std::vector<RegionRow> rows;
  std::vector<double> skipped_q1;  // grid points within 1e-9 of q2
};

/// Uniform q1 grid with the improvement interval per point. Points colliding
/// with q2 (within 1e-9) are excluded and reported in skipped_q1.
inline RegionSweep region_sweep(double q2, double q1_min, double q1_max, int n_points) {
  if (n_points < 2) throw ValidationError("region_sweep: need at least 2 grid points");
  if (!(q2 >= 0.0 && q2 <= 1.0)) throw ValidationError("region_sweep: q2 must lie in [0, 1]");
  if (!(q1_min >= 0.0 && q1_max <= 1.0 && q1_min <= q1_max))
    throw ValidationError("region_sweep: need 0 <= q1_min <= q1_max <= 1");
  RegionSweep sweep;
  const int count = q1_max == q1_min ? 1 : n_points;
  sweep.rows.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double q1 = count == 1 ? q1_min : q1_min + (q1_max - q1_min) * i / (n_points - 1);
    if (std::abs(q1 - q2) < 1e-9) {
      sweep.skipped_q1.push_back(q1);
      continue;
    }
    const PriorInterval interval = depolarizing_region(q1, q2);
    if (interval.empty) {
      sweep.skipped_q1.push_back(q1);
      continue;
    }
    sweep.rows.push_back(RegionRow{q1, interval.lower, interval.upper});
  }
  return sweep;
}

}  // namespace pauli_discrim
