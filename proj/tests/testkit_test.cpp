// Copyright 2026 The nsqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsqkd/testkit.hpp"

#include <cmath>
#include <cstdio>

#include "gtest/gtest.h"
#include "nsqkd/errors.hpp"
#include "nsqkd/lp_builder.hpp"
#include "nsqkd/lp_solver.hpp"
#include "nsqkd/sweep.hpp"

using namespace nsqkd;

namespace {

LpInstance reduced(double p) { return build_reduced(werner_correlations(WernerParameter(p))); }

double table_entry(const std::string& quantity, double p) {
  int a, b, x, y;
  if (std::sscanf(quantity.c_str(), "P(%d,%d|%d,%d)", &a, &b, &x, &y) != 4) {
    ADD_FAILURE() << "unknown fixture quantity " << quantity;
    return std::nan("");
  }
  return werner_correlations(WernerParameter(p))(x, y, a, b);
}

}  // namespace

TEST(SampleFeasible, PointsAreFeasibleAndBelowOptimum) {
  const LpInstance inst = reduced(0.8);
  const Certificate cert = certify(inst, solve(inst));
  ASSERT_TRUE(cert.passed);
  const auto points = testkit::sample_feasible(inst, 100, 8);
  ASSERT_EQ(points.size(), 100u);
  for (const auto& x : points) {
    EXPECT_LE(inst.equality_residual(x), 1e-9);
    EXPECT_LE(inst.bound_violation(x), 1e-9);
    EXPECT_LE(inst.evaluate(x), cert.bound + 1e-12);
  }
}

TEST(SampleFeasible, UniformPointHasHalfObjective) {
  for (double p : {0.0, 0.8, 1.0}) {
    const LpInstance inst = reduced(p);
    EXPECT_NEAR(inst.evaluate(uniform_point(inst)), 0.5, 1e-15);
  }
}

TEST(SampleFeasible, FirstVertexIsOptimum) {
  const LpInstance inst = reduced(1.0);
  const auto vertices = testkit::solver_vertices(inst, 1, 0);
  ASSERT_EQ(vertices.size(), 1u);
  EXPECT_NEAR(inst.evaluate(vertices[0]), solve(inst).value, 1e-15);
}

TEST(SampleFeasible, InfeasibleInstanceThrows) {
  LpInstance inst = reduced(0.5);
  inst.rhs(0) = 5.0;
  EXPECT_THROW(testkit::sample_feasible(inst, 3, 1), DomainError);
}

TEST(RandomBobEveJoint, SingleOutcomeCarriesNoInformation) {
  const BobEveJoint joint = testkit::random_bob_eve_joint(1, 77);
  EXPECT_DOUBLE_EQ(joint(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(joint(1, 0), 0.5);
  EXPECT_NEAR(verify_guessing_bound(joint).mutual_info, 0.0, 1e-15);
}

TEST(RandomBobEveJoint, DeterministicPerSeed) {
  EXPECT_EQ(testkit::random_bob_eve_joint(5, 3), testkit::random_bob_eve_joint(5, 3));
  EXPECT_NE(testkit::random_bob_eve_joint(5, 3), testkit::random_bob_eve_joint(5, 4));
}

TEST(RandomBobEveJoint, UniformBobMarginal) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const BobEveJoint joint = testkit::random_bob_eve_joint(6, seed);
    EXPECT_NEAR(joint.row(0).sum(), 0.5, 1e-15);
    EXPECT_NEAR(joint.row(1).sum(), 0.5, 1e-15);
    EXPECT_GE(joint.minCoeff(), 0.0);
  }
}

TEST(RandomBobEveJoint, PerfectCopy) {
  EXPECT_NEAR(verify_guessing_bound(testkit::perfect_copy_joint()).guessing_prob, 1.0, 1e-15);
}

TEST(GoldenFixtures, AllHold) {
  const auto fixtures = testkit::load_fixtures(std::string(NSQKD_FIXTURE_DIR) + "/golden.json");
  ASSERT_GE(fixtures.size(), 10u);
  for (const auto& f : fixtures) {
    ASSERT_FALSE(f.anchor.empty()) << f.name;
    double actual;
    if (f.quantity == "threshold") {
      actual = find_threshold(werner_model(), 1e-6).p_star;
    } else if (f.quantity.starts_with("P(")) {
      actual = table_entry(f.quantity, f.p);
    } else {
      const KeyRateReport r = solve_werner(f.p).report;
      if (f.quantity == "P_E") actual = r.guessing_prob;
      else if (f.quantity == "I_AB") actual = r.i_ab;
      else if (f.quantity == "I_BE_bound") actual = r.i_be_bound;
      else if (f.quantity == "K") actual = r.k;
      else if (f.quantity == "K_raw") actual = r.k_raw;
      else {
        ADD_FAILURE() << "unknown fixture quantity " << f.quantity;
        continue;
      }
    }
    EXPECT_LE(std::abs(actual - f.expected), f.tolerance)
        << f.name << " [" << f.anchor << "]: expected " << f.expected << ", got " << actual;
  }
}
