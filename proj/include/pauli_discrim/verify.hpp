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
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "pauli_discrim/channels.hpp"
#include "pauli_discrim/discrimination.hpp"
#include "pauli_discrim/errors.hpp"
#include "pauli_discrim/linalg.hpp"
#include "pauli_discrim/rng.hpp"

// Self-verification battery: every cross-module invariant the library
// promises, runnable in-process (the CLI `verify` subcommand) and from the
// test suite. Each property reports its worst observed deviation and, on
// failure, the offending inputs verbatim so a run can be replayed.

namespace pauli_discrim::verify {

struct PropertyResult {
  std::string name;
  bool pass = true;
  double worst_deviation = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int samples = 10000;
  std::uint64_t seed = 42;
  int grid = 24;
};

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt4(const std::array<double, 4>& v) {
  return "[" + fmt(v[0]) + "," + fmt(v[1]) + "," + fmt(v[2]) + "," + fmt(v[3]) + "]";
}

inline std::string fmt_problem(const DiscriminationProblem& prob) {
  return "p1=" + fmt(prob.p1) + " q1=" + fmt4(prob.channel1.q) + " q2=" + fmt4(prob.channel2.q);
}

inline ComplexMatrix random_hermitian(SplitMix64& rng, int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return symmetrized(m);
}

inline DensityMatrix random_qubit_density(SplitMix64& rng) {
  std::array<double, 3> n = {rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  const double radius = rng.next_double();  // mixed states included
  for (double& x : n) x *= len > 0.0 ? radius / len : 0.0;
  return qubit_state(n);
}

inline DensityMatrix random_two_qubit_density(SplitMix64& rng) {
  const std::array<double, 4> w = rng.next_simplex4();
  ComplexMatrix m(4);
  std::vector<Complex> amps(4);
  for (int k = 0; k < 4; ++k) {
    for (Complex& z : amps) z = Complex(rng.next_gaussian(), rng.next_gaussian());
    m = add_scaled(m, w[static_cast<std::size_t>(k)], projector(amps));
  }
  return DensityMatrix(m);
}

inline DiscriminationProblem random_problem(SplitMix64& rng) {
  return DiscriminationProblem{make_pauli_channel(rng.next_simplex4()),
                               make_pauli_channel(rng.next_simplex4()), rng.next_double()};
}

namespace detail {

// Tracks the worst deviation; first failure wins the counterexample slot.
struct Tracker {
  PropertyResult result;
  double tol;

  Tracker(std::string name, double tolerance) : tol(tolerance) { result.name = std::move(name); }

  void observe(double deviation, const std::string& context) {
    result.worst_deviation = std::max(result.worst_deviation, deviation);
    if (deviation > tol && result.pass) {
      result.pass = false;
      result.detail = "deviation " + fmt(deviation) + " > " + fmt(tol) + " at " + context;
    }
  }

  void require(bool ok, const std::string& context) {
    if (!ok && result.pass) {
      result.pass = false;
      result.detail = "violated at " + context;
    }
  }

  PropertyResult done(const std::string& note = "") {
    if (result.pass && !note.empty()) result.detail = note;
    return result;
  }
};

inline Complex bell_element(const ComplexMatrix& m, int a, int b) {
  const auto& va = bell_state(a);
  const auto& vb = bell_state(b);
  Complex out = 0.0;
  for (int i = 0; i < 4; ++i) {
    Complex mv = 0.0;
    for (int j = 0; j < 4; ++j) mv += m(i, j) * vb[static_cast<std::size_t>(j)];
    out += std::conj(va[static_cast<std::size_t>(i)]) * mv;
  }
  return out;
}

inline PropertyResult kron_associativity(SplitMix64& rng, int cases) {
  Tracker t("linalg.kron_associativity", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const ComplexMatrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 2), c = random_hermitian(rng, 2);
    t.observe(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), "case " + std::to_string(i));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult kron_trace_multiplicative(SplitMix64& rng, int cases) {
  Tracker t("linalg.kron_trace_multiplicative", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const ComplexMatrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 4);
    t.observe(std::abs(trace(kron(a, b)) - trace(a) * trace(b)), "case " + std::to_string(i));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult eigen_sum_equals_trace(SplitMix64& rng, int cases) {
  Tracker t("linalg.eigen_sum_equals_trace", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const ComplexMatrix a = random_hermitian(rng, i % 2 == 0 ? 4 : 2);
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(a)) sum += lambda;
    t.observe(std::abs(sum - trace(a).real()), "case " + std::to_string(i));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult eigen_unitary_invariance(SplitMix64& rng, int cases) {
  Tracker t("linalg.eigen_unitary_invariance", 1e-10);
  for (int i = 0; i < cases; ++i) {
    const ComplexMatrix a = random_hermitian(rng, 4);
    const int alpha = static_cast<int>(rng.next_u64() % 4), beta = static_cast<int>(rng.next_u64() % 4);
    const ComplexMatrix u = kron(pauli(alpha), pauli(beta));
    const std::vector<double> before = hermitian_eigenvalues(a);
    const std::vector<double> after = hermitian_eigenvalues(matmul(matmul(u, a), dagger(u)));
    for (std::size_t k = 0; k < before.size(); ++k)
      t.observe(std::abs(before[k] - after[k]),
                "case " + std::to_string(i) + " sigma" + std::to_string(alpha) + "(x)sigma" + std::to_string(beta));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult trace_norm_bounds(SplitMix64& rng, int cases) {
  Tracker t("linalg.trace_norm_bounds", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const ComplexMatrix a = random_hermitian(rng, 4);
    t.observe(std::max(0.0, std::abs(trace(a).real()) - trace_norm(a)), "lower bound, case " + std::to_string(i));
    const ComplexMatrix sq = matmul(a, a);  // PSD
    const double tr = trace(sq).real();
    if (tr <= 0.0) continue;
    t.observe(std::abs(trace_norm(scaled(sq, 1.0 / tr)) - 1.0), "psd equality, case " + std::to_string(i));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult partial_transpose_structure(SplitMix64& rng, int cases) {
  Tracker t("linalg.partial_transpose_structure", 0.0);
  for (int i = 0; i < cases; ++i) {
    const ComplexMatrix a = random_hermitian(rng, 4);
    const ComplexMatrix pt = partial_transpose(a);
    const std::string ctx = "case " + std::to_string(i);
    t.observe(std::abs(trace(pt) - trace(a)), "trace, " + ctx);
    t.observe(hermiticity_deviation(pt), "hermiticity, " + ctx);
    t.observe(max_abs_diff(partial_transpose(pt), a), "involution, " + ctx);
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult outputs_are_density_matrices(SplitMix64& rng, int cases) {
  Tracker t("channels.outputs_are_density_matrices", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const PauliChannel ch = make_pauli_channel(rng.next_simplex4());
    const std::string ctx = "case " + std::to_string(i) + " q=" + fmt4(ch.q);
    const DensityMatrix out2 = apply(ch, random_qubit_density(rng));
    const DensityMatrix out4 = apply_extended(ch, random_two_qubit_density(rng));
    for (const DensityMatrix* out : {&out2, &out4}) {
      t.observe(std::abs(trace(out->mat()) - Complex(1.0, 0.0)), "trace, " + ctx);
      const double min_eig = hermitian_eigenvalues(out->mat()).front();
      t.require(min_eig >= -kEigNegTol, "positivity (min eig " + fmt(min_eig) + "), " + ctx);
    }
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult choi_bell_diagonal(SplitMix64& rng, int cases) {
  Tracker t("channels.choi_bell_diagonal", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const PauliChannel ch = make_pauli_channel(rng.next_simplex4());
    const ComplexMatrix c = choi(ch).mat();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double expected = a == b ? ch.q[static_cast<std::size_t>(a)] : 0.0;
        t.observe(std::abs(bell_element(c, a, b) - expected),
                  "element (" + std::to_string(a) + "," + std::to_string(b) + ") q=" + fmt4(ch.q));
      }
  }
  return t.done("cases=" + std::to_string(cases));
}

// PT spectrum of the depolarizing Choi state is {(1-2q)/2, (1+2q)/6 x3};
// the smallest eigenvalue is whichever branch is lower ((1-2q)/2 for
// q >= 1/4, (1+2q)/6 below).
inline PropertyResult depolarizing_pt_spectrum() {
  Tracker t("channels.depolarizing_pt_spectrum", 1e-12);
  for (int i = 0; i <= 100; ++i) {
    const double q = i / 100.0;
    const double singlet = (1.0 - 2.0 * q) / 2.0;
    const double triplet = (1.0 + 2.0 * q) / 6.0;
    std::array<double, 4> expected = {singlet, triplet, triplet, triplet};
    std::sort(expected.begin(), expected.end());
    const std::vector<double> eig = hermitian_eigenvalues(partial_transpose(choi(depolarizing(q)).mat()));
    const std::string ctx = "q=" + fmt(q);
    for (std::size_t k = 0; k < 4; ++k) t.observe(std::abs(eig[k] - expected[k]), ctx);
    t.observe(std::abs(is_entanglement_breaking(depolarizing(q)).min_pt_eigenvalue - std::min(singlet, triplet)),
              "min eigenvalue, " + ctx);
  }
  return t.done("grid=101");
}

inline PropertyResult eb_threshold() {
  Tracker t("channels.eb_threshold", 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double q = i / 100.0;
    const bool expected = q <= 0.5 + kEigNegTol;
    t.require(is_entanglement_breaking(depolarizing(q)).is_entanglement_breaking == expected, "q=" + fmt(q));
  }
  return t.done("grid=101, flip at q=0.5 (boundary EB)");
}

inline PropertyResult extended_factorizes_on_products(SplitMix64& rng, int cases) {
  Tracker t("channels.extended_factorizes_on_products", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const PauliChannel ch = make_pauli_channel(rng.next_simplex4());
    const DensityMatrix rho = random_qubit_density(rng);
    const DensityMatrix tau = random_qubit_density(rng);
    const DensityMatrix joint = apply_extended(ch, DensityMatrix(kron(rho.mat(), tau.mat())));
    t.observe(max_abs_diff(joint.mat(), kron(apply(ch, rho).mat(), tau.mat())),
              "case " + std::to_string(i) + " q=" + fmt4(ch.q));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult rvector_invariants(SplitMix64& rng, int cases) {
  Tracker t("discrimination.rvector_invariants", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const DiscriminationProblem prob = random_problem(rng);
    const RVector rv = r_vector(prob);
    t.observe(std::abs(rv.sum() - (prob.p1 - prob.p2())), fmt_problem(prob));
    for (double r : rv.r)
      t.observe(std::max(0.0, std::abs(r) - std::max(prob.p1, prob.p2())), fmt_problem(prob));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult equivalence_eq3(SplitMix64& rng, int cases) {
  Tracker t("discrimination.equivalence_eq3", 0.0);
  int excluded = 0;
  for (int i = 0; i < cases; ++i) {
    const DiscriminationProblem prob = random_problem(rng);
    const RVector rv = r_vector(prob);
    if (std::abs(rv.product()) < kProductTol) {
      ++excluded;
      continue;
    }
    const bool sign_test = rv.product() < -kProductTol;
    const bool numeric = error_entangled(prob) < error_unentangled(prob).error - kImprovementTol;
    t.require(sign_test == numeric, fmt_problem(prob) + " r_product=" + fmt(rv.product()));
  }
  return t.done("cases=" + std::to_string(cases) + " excluded_boundary=" + std::to_string(excluded));
}

inline PropertyResult error_ordering_and_range(SplitMix64& rng, int cases) {
  Tracker t("discrimination.error_ordering_and_range", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const DiscriminationProblem prob = random_problem(rng);
    const double ent = error_entangled(prob);
    const double unent = error_unentangled(prob).error;
    t.observe(std::max(0.0, ent - unent), "ordering, " + fmt_problem(prob));
    for (double e : {ent, unent}) {
      t.observe(std::max(0.0, e - 0.5), "upper range, " + fmt_problem(prob));
      t.observe(std::max(0.0, -e), "lower range, " + fmt_problem(prob));
    }
  }
  // r = 0 forces error exactly 1/2 for both strategies.
  for (int i = 0; i < 8; ++i) {
    const PauliChannel ch = make_pauli_channel(rng.next_simplex4());
    const DiscriminationProblem same{ch, ch, 0.5};
    t.observe(std::abs(error_entangled(same) - 0.5), "r=0, q=" + fmt4(ch.q));
    t.observe(std::abs(error_unentangled(same).error - 0.5), "r=0, q=" + fmt4(ch.q));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult swap_symmetry(SplitMix64& rng, int cases) {
  Tracker t("discrimination.swap_symmetry", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const DiscriminationProblem prob = random_problem(rng);
    const DiscriminationProblem swapped{prob.channel2, prob.channel1, prob.p2()};
    t.observe(std::abs(error_entangled(prob) - error_entangled(swapped)), "entangled, " + fmt_problem(prob));
    t.observe(std::abs(error_unentangled(prob).error - error_unentangled(swapped).error),
              "unentangled, " + fmt_problem(prob));
  }
  return t.done("cases=" + std::to_string(cases));
}

inline PropertyResult unentangled_oracle_agreement(SplitMix64& rng, int cases, int grid) {
  Tracker t("discrimination.unentangled_oracle_agreement", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const DiscriminationProblem prob = random_problem(rng);
    t.observe(std::abs(error_unentangled(prob).error - error_unentangled_bruteforce(prob, grid)),
              fmt_problem(prob));
  }
  return t.done("cases=" + std::to_string(cases) + " grid=" + std::to_string(grid));
}

inline PropertyResult bell_diagonal_trace_norm(SplitMix64& rng, int cases) {
  Tracker t("discrimination.bell_diagonal_trace_norm", 1e-12);
  for (int i = 0; i < cases; ++i) {
    const DiscriminationProblem prob = random_problem(rng);
    const ComplexMatrix diff =
        add_scaled(scaled(choi(prob.channel1).mat(), prob.p1), -prob.p2(), choi(prob.channel2).mat());
    t.observe(std::abs(trace_norm(diff) - r_vector(prob).abs_sum()), fmt_problem(prob));
  }
  return t.done("cases=" + std::to_string(cases));
}

// Three routes to the same yes/no on the depolarizing grid: the closed-form
// prior interval, the quadratic condition, and the general sign criterion.
// Grid points within 1e-9 of an interval bound are skipped; there the strict
// inequalities are decided by roundoff and the routes legitimately differ.
inline PropertyResult region_consistency() {
  Tracker t("discrimination.region_consistency", 0.0);
  const double q2 = 0.25;
  int skipped = 0;
  for (int i = 1; i <= 99; ++i) {
    const double q1 = 0.5 * i / 99.0;
    const PriorInterval interval = depolarizing_region(q1, q2);
    for (int j = 0; j <= 100; ++j) {
      const double p = j / 100.0;
      if (std::abs(p - interval.lower) <= 1e-9 || std::abs(p - interval.upper) <= 1e-9) {
        ++skipped;
        continue;
      }
      const bool in_interval = interval.contains(p);
      const bool by_quadratic = depolarizing_improvement_condition(p, q1, q2);
      const bool by_sign = entanglement_helps({depolarizing(q1), depolarizing(q2), p});
      t.require(in_interval == by_quadratic && by_quadratic == by_sign,
                "q1=" + fmt(q1) + " p=" + fmt(p) + " interval=" + std::to_string(in_interval) +
                    " quadratic=" + std::to_string(by_quadratic) + " sign=" + std::to_string(by_sign));
    }
  }
  return t.done("grid=99x101 skipped_boundary=" + std::to_string(skipped));
}

inline PropertyResult region_rows_valid() {
  Tracker t("cli.region_rows_valid", 0.0);
  const RegionSweep sweep = region_sweep(0.25, 0.0, 0.5, 200);
  double prev = -1.0;
  for (const RegionRow& row : sweep.rows) {
    const std::string ctx = "q1=" + fmt(row.q1);
    t.require(std::isfinite(row.q1) && std::isfinite(row.lower) && std::isfinite(row.upper), "finite, " + ctx);
    t.require(row.q1 > prev, "strictly increasing q1, " + ctx);
    t.require(row.lower >= 0.0 && row.lower < row.upper && row.upper <= 1.0, "bounds, " + ctx);
    prev = row.q1;
  }
  return t.done("rows=" + std::to_string(sweep.rows.size()));
}

}  // namespace detail

/// Runs every cross-module property at the given sample budget. The heavy
/// brute-force oracle comparison runs at samples/10; the fixed-grid checks
/// ignore the budget.
inline std::vector<PropertyResult> run_all(const VerifyOptions& options) {
  if (options.samples < 1) throw ValidationError("verify: samples must be positive");
  if (options.grid < 6) throw ValidationError("verify: grid must be at least 6");
  SplitMix64 root(options.seed);
  const int cases = options.samples;
  const int linalg_cases = std::min(cases, 2000);
  const int oracle_cases = std::max(1, cases / 10);

  std::vector<PropertyResult> results;
  SplitMix64 rng = root.split();
  results.push_back(detail::kron_associativity(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::kron_trace_multiplicative(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::eigen_sum_equals_trace(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::eigen_unitary_invariance(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::trace_norm_bounds(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::partial_transpose_structure(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::outputs_are_density_matrices(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::choi_bell_diagonal(rng, linalg_cases));
  results.push_back(detail::depolarizing_pt_spectrum());
  results.push_back(detail::eb_threshold());
  rng = root.split();
  results.push_back(detail::extended_factorizes_on_products(rng, linalg_cases));
  rng = root.split();
  results.push_back(detail::rvector_invariants(rng, cases));
  rng = root.split();
  results.push_back(detail::equivalence_eq3(rng, cases));
  rng = root.split();
  results.push_back(detail::error_ordering_and_range(rng, cases));
  rng = root.split();
  results.push_back(detail::swap_symmetry(rng, cases));
  rng = root.split();
  results.push_back(detail::unentangled_oracle_agreement(rng, oracle_cases, options.grid));
  rng = root.split();
  results.push_back(detail::bell_diagonal_trace_norm(rng, cases));
  results.push_back(detail::region_consistency());
  results.push_back(detail::region_rows_valid());
  return results;
}

}  // namespace pauli_discrim::verify
