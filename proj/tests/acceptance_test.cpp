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

// Acceptance suite: the end-to-end numerical claims this library stands on,
// each printed as a single pass/fail line. Tolerances are pinned here, in
// code, and are not configurable.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pauli_discrim/channels.hpp"
#include "pauli_discrim/discrimination.hpp"
#include "pauli_discrim/linalg.hpp"
#include "pauli_discrim/rng.hpp"
#include "pauli_discrim/verify.hpp"

using namespace pauli_discrim;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string label) : label_(std::move(label)) {}

  void check(bool condition, const std::string& what) {
    if (!condition && ok_) {
      ok_ = false;
      first_failure_ = what;
    }
  }

  void within(double value, double expected, double tol, const std::string& what) {
    const double deviation = std::abs(value - expected);
    worst_ = std::max(worst_, deviation);
    check(deviation <= tol, what + ": |" + verify::fmt(value) + " - " + verify::fmt(expected) +
                                "| = " + verify::fmt(deviation) + " > " + verify::fmt(tol));
  }

  void finish() const {
    std::cout << "[acceptance] " << label_ << ": " << (ok_ ? "PASS" : "FAIL")
              << " (worst deviation " << verify::fmt(worst_) << ")";
    if (!ok_) std::cout << "  " << first_failure_;
    std::cout << "\n";
    EXPECT_TRUE(ok_) << first_failure_;
  }

 private:
  std::string label_;
  bool ok_ = true;
  double worst_ = 0.0;
  std::string first_failure_;
};

DiscriminationProblem worked_instance() {
  return {depolarizing(0.5), depolarizing(0.25), 0.5};
}

// Criterion 1: entanglement-breaking threshold. For 101 values q in [0,1]
// the PT spectrum of the depolarizing Choi state is {(1-2q)/2, (1+2q)/6 x3}
// within 1e-12 (hence the minimum eigenvalue is the lower branch), and the
// EB flag flips exactly at q = 1/2 with the boundary classified EB.
TEST(Acceptance, Criterion1_EbThreshold) {
  Criterion crit("1 EB threshold at q = 1/2, PT spectrum analytic on 101-point grid");
  for (int i = 0; i <= 100; ++i) {
    const double q = i / 100.0;
    const double singlet = (1.0 - 2.0 * q) / 2.0;
    const double triplet = (1.0 + 2.0 * q) / 6.0;
    std::array<double, 4> expected = {singlet, triplet, triplet, triplet};
    std::sort(expected.begin(), expected.end());
    const std::vector<double> eig = hermitian_eigenvalues(partial_transpose(choi(depolarizing(q)).mat()));
    for (std::size_t k = 0; k < 4; ++k)
      crit.within(eig[k], expected[k], 1e-12, "PT eigenvalue " + std::to_string(k) + " at q=" + verify::fmt(q));

    const EBReport report = is_entanglement_breaking(depolarizing(q));
    crit.within(report.min_pt_eigenvalue, std::min(singlet, triplet), 1e-12,
                "min PT eigenvalue at q=" + verify::fmt(q));
    crit.check(report.is_entanglement_breaking == (q <= 0.5 + 1e-10),
               "EB flag at q=" + verify::fmt(q));
  }
  crit.check(is_entanglement_breaking(depolarizing(0.50)).is_entanglement_breaking, "boundary q=0.50 must be EB");
  crit.check(!is_entanglement_breaking(depolarizing(0.51)).is_entanglement_breaking, "q=0.51 must not be EB");
  crit.finish();
}

// Criterion 2: improvement-region reproduction at q2 = 1/4. Closed-form
// bounds match the quadratic roots within 1e-12 on 99 grid points
// q1 in (0, 1/2], and first-principles membership (error_entangled <
// error_unentangled - 1e-12) matches interval membership at 101 priors per
// q1, outside a 1e-9 band around the bounds.
TEST(Acceptance, Criterion2_RegionReproduction) {
  Criterion crit("2 improvement region (q2=1/4): bounds = quadratic roots, membership = errors");
  const double q2 = 0.25;
  int compared = 0, skipped = 0;
  for (int i = 1; i <= 99; ++i) {
    const double q1 = 0.5 * i / 99.0;
    const PriorInterval interval = depolarizing_region(q1, q2);

    const double a = (q1 + q2) * (2.0 - q1 - q2);
    const double b = -(q1 - 2.0 * q1 * q2 + 3.0 * q2 - 2.0 * q2 * q2);
    const double c = q2 * (1.0 - q2);
    const double disc = b * b - 4.0 * a * c;
    crit.check(disc >= 0.0, "negative discriminant at q1=" + verify::fmt(q1));
    const double shifted = -(b + std::copysign(std::sqrt(std::max(disc, 0.0)), b)) / 2.0;
    const double root1 = std::min(shifted / a, c / shifted);
    const double root2 = std::max(shifted / a, c / shifted);
    crit.within(interval.lower, root1, 1e-12, "lower bound vs root at q1=" + verify::fmt(q1));
    crit.within(interval.upper, root2, 1e-12, "upper bound vs root at q1=" + verify::fmt(q1));

    for (int j = 0; j <= 100; ++j) {
      const double p = j / 100.0;
      if (std::abs(p - interval.lower) <= 1e-9 || std::abs(p - interval.upper) <= 1e-9) {
        ++skipped;
        continue;
      }
      const DiscriminationProblem prob{depolarizing(q1), depolarizing(q2), p};
      const bool numeric = error_entangled(prob) < error_unentangled(prob).error - 1e-12;
      crit.check(numeric == interval.contains(p),
                 "membership mismatch at q1=" + verify::fmt(q1) + " p=" + verify::fmt(p));
      ++compared;
    }
  }
  crit.check(compared > 9900, "expected ~9999 membership comparisons, got " + std::to_string(compared));
  crit.finish();
  std::cout << "             (membership points compared: " << compared << ", boundary-band skipped: " << skipped
            << ")\n";
}

// Criterion 3: the worked instance p = 0.5, q1 = 0.5, q2 = 0.25 gives
// unentangled error 5/12, entangled error 3/8, improvement 1/24, each
// cross-checked against the corresponding brute-force oracle.
TEST(Acceptance, Criterion3_WorkedInstance) {
  Criterion crit("3 worked instance: 5/12 vs 3/8, improvement 1/24, oracles agree");
  const DiscriminationProblem prob = worked_instance();
  const DiscriminationReport report = discriminate(prob);
  crit.within(report.err_unentangled, 5.0 / 12.0, 1e-12, "unentangled error");
  crit.within(report.err_entangled, 3.0 / 8.0, 1e-12, "entangled error");
  crit.within(report.improvement, 1.0 / 24.0, 1e-12, "improvement");
  crit.check(report.entanglement_helps, "entanglement must strictly help");
  crit.within(error_unentangled_bruteforce(prob, 24), 5.0 / 12.0, 1e-12, "Bloch-grid brute force");
  crit.within(error_entangled_bruteforce(prob, 2000, 42), 3.0 / 8.0, 1e-12, "two-qubit brute force");
  crit.finish();
}

// Criterion 4: sign criterion equivalence. Over 10^4 seeded random problems,
// prod_a r_a < 0 iff the strict improvement exceeds 1e-12, excluding the
// degenerate band |prod_a r_a| < 1e-15. Zero counterexamples allowed.
TEST(Acceptance, Criterion4_SignEquivalence) {
  Criterion crit("4 sign criterion <=> strict improvement on 10^4 random problems");
  SplitMix64 rng(1001);
  int excluded = 0, tested = 0;
  for (int i = 0; i < 10000; ++i) {
    const DiscriminationProblem prob = verify::random_problem(rng);
    const RVector rv = r_vector(prob);
    if (std::abs(rv.product()) < 1e-15) {
      ++excluded;
      continue;
    }
    const bool sign_test = rv.product() < 0.0;
    const double improvement = error_unentangled(prob).error - error_entangled(prob);
    crit.check(sign_test == (improvement > 1e-12),
               verify::fmt_problem(prob) + " r_product=" + verify::fmt(rv.product()) +
                   " improvement=" + verify::fmt(improvement));
    ++tested;
  }
  crit.check(tested + excluded == 10000, "bookkeeping");
  crit.finish();
  std::cout << "             (tested: " << tested << ", boundary-excluded: " << excluded << ")\n";
}

// Criterion 5: oracle agreement. Closed-form unentangled error equals the
// axis-augmented Bloch-grid brute force within 1e-12 on 10^3 random
// problems; the entangled error equals the Helstrom value on the Choi pair
// within 1e-12 and lower-bounds the 2000-sample two-qubit brute force
// minus 1e-12.
TEST(Acceptance, Criterion5_OracleAgreement) {
  Criterion crit("5 oracle agreement on 10^3 random problems (grid 24, 2000 samples)");
  SplitMix64 rng(1002);
  for (int i = 0; i < 1000; ++i) {
    const DiscriminationProblem prob = verify::random_problem(rng);
    const double closed = error_unentangled(prob).error;
    crit.within(error_unentangled_bruteforce(prob, 24), closed, 1e-12,
                "Bloch brute force, " + verify::fmt_problem(prob));
    const double ent = error_entangled(prob);
    crit.within(helstrom_error(choi(prob.channel1), choi(prob.channel2), prob.p1), ent, 1e-12,
                "Helstrom on Choi pair, " + verify::fmt_problem(prob));
    const double brute = error_entangled_bruteforce(prob, 2000, 9000 + static_cast<std::uint64_t>(i));
    crit.check(brute >= ent - 1e-12, "two-qubit brute force undercut the optimum, " + verify::fmt_problem(prob) +
                                         " brute=" + verify::fmt(brute) + " ent=" + verify::fmt(ent));
  }
  crit.finish();
}

// Criterion 6: Bell-diagonal trace-norm identity on 10^3 random problems.
TEST(Acceptance, Criterion6_BellDiagonalIdentity) {
  Criterion crit("6 trace_norm(p1 Choi1 - p2 Choi2) = sum |r_a| on 10^3 random problems");
  SplitMix64 rng(1003);
  for (int i = 0; i < 1000; ++i) {
    const DiscriminationProblem prob = verify::random_problem(rng);
    const ComplexMatrix diff =
        add_scaled(scaled(choi(prob.channel1).mat(), prob.p1), -prob.p2(), choi(prob.channel2).mat());
    crit.within(trace_norm(diff), r_vector(prob).abs_sum(), 1e-12, verify::fmt_problem(prob));
  }
  crit.finish();
}

// Criterion 7: degeneracies and symmetry. Identical channels give error
// min(p1, p2) for both strategies; swapping channels and priors leaves both
// errors invariant; a certain prior (p1 = 0 or 1) gives error 0.
TEST(Acceptance, Criterion7_DegenerateAndSymmetry) {
  Criterion crit("7 degenerate cases and channel/prior swap symmetry");
  SplitMix64 rng(1004);
  for (int i = 0; i < 200; ++i) {
    const PauliChannel ch = make_pauli_channel(rng.next_simplex4());
    const double p1 = rng.next_double();
    const DiscriminationProblem same{ch, ch, p1};
    const double expected = std::min(p1, 1.0 - p1);
    crit.within(error_entangled(same), expected, 1e-12, "identical channels, entangled, p1=" + verify::fmt(p1));
    crit.within(error_unentangled(same).error, expected, 1e-12,
                "identical channels, unentangled, p1=" + verify::fmt(p1));

    const DiscriminationProblem prob = verify::random_problem(rng);
    const DiscriminationProblem swapped{prob.channel2, prob.channel1, prob.p2()};
    crit.within(error_entangled(swapped), error_entangled(prob), 1e-12, "swap, entangled, " + verify::fmt_problem(prob));
    crit.within(error_unentangled(swapped).error, error_unentangled(prob).error, 1e-12,
                "swap, unentangled, " + verify::fmt_problem(prob));

    for (double p : {0.0, 1.0}) {
      const DiscriminationProblem certain{prob.channel1, prob.channel2, p};
      crit.within(error_entangled(certain), 0.0, 1e-12, "certain prior, entangled, p1=" + verify::fmt(p));
      crit.within(error_unentangled(certain).error, 0.0, 1e-12, "certain prior, unentangled, p1=" + verify::fmt(p));
    }
  }
  crit.finish();
}

}  // namespace
