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

#include "nsqkd/lp_builder.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "nsqkd/errors.hpp"
#include "nsqkd/lp_solver.hpp"
#include "nsqkd/testkit.hpp"

using namespace nsqkd;

namespace {

CorrelationTable werner(double p) { return werner_correlations(WernerParameter(p)); }

Eigen::Index row_index(const LpInstance& inst, const std::string& name) {
  for (std::size_t i = 0; i < inst.row_names.size(); ++i) {
    if (inst.row_names[i] == name) return static_cast<Eigen::Index>(i);
  }
  ADD_FAILURE() << "no row " << name;
  return 0;
}

// max of c1 (x_0 + x_4) + c2 (x_2 + x_6) over a reduced instance.
double support(const LpInstance& reduced, double c1, double c2) {
  LpInstance probe = reduced;
  probe.objective.setZero();
  probe.objective_constant = 0.0;
  probe.objective(JointIndex{Block::X, 0}.reduced_column()) = c1;
  probe.objective(JointIndex{Block::X, 4}.reduced_column()) = c1;
  probe.objective(JointIndex{Block::X, 2}.reduced_column()) = c2;
  probe.objective(JointIndex{Block::X, 6}.reduced_column()) = c2;
  const Solution sol = solve(probe);
  EXPECT_EQ(sol.status, LpStatus::Optimal);
  return sol.value;
}

}  // namespace

TEST(JointIndex, BinaryEncoding) {
  const JointIndex idx = JointIndex::from_settings(0, 0, 1, 0, 1);
  EXPECT_EQ(idx.block, Block::X);
  EXPECT_EQ(idx.outcome, 5);
  EXPECT_EQ(idx.name(), "x_5");
  EXPECT_EQ(idx.full_column(), 5);
  EXPECT_THROW(idx.reduced_column(), DomainError);
}

TEST(JointIndex, BijectionWithSettingsAndOutcomes) {
  std::vector<bool> seen(kFullVars, false);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int e = 0; e < 2; ++e) {
            const JointIndex idx = JointIndex::from_settings(x, y, a, b, e);
            EXPECT_EQ(idx.x(), x);
            EXPECT_EQ(idx.y(), y);
            EXPECT_EQ(idx.a(), a);
            EXPECT_EQ(idx.b(), b);
            EXPECT_EQ(idx.e(), e);
            EXPECT_FALSE(seen[idx.full_column()]);
            seen[idx.full_column()] = true;
          }
  EXPECT_EQ(JointIndex::from_settings(2, 1, 1, 1, 0).name(), "w_6");
  EXPECT_EQ(JointIndex::from_settings(2, 1, 1, 1, 0).reduced_column(), 23);
}

TEST(BuildFull, Shape) {
  const LpInstance inst = build_full(werner(0.8));
  EXPECT_EQ(inst.form, LpForm::Full);
  EXPECT_EQ(inst.num_vars(), 48);
  EXPECT_EQ(inst.num_equalities(), 24 + 12 + 16);
  EXPECT_TRUE(inst.lower.isZero());
  EXPECT_TRUE(inst.upper.isOnes());
  EXPECT_EQ(inst.var_names.front(), "x_0");
  EXPECT_EQ(inst.var_names.back(), "w_7");
  EXPECT_NEAR(inst.p, 0.8, 1e-15);
}

TEST(BuildFull, MarginalRightHandSides) {
  const LpInstance one = build_full(werner(1.0));
  EXPECT_EQ(one.rhs(row_index(one, "marginal P(0,0|0,0)")), 0.5);
  EXPECT_EQ(one.rhs(row_index(one, "marginal P(1,1|0,0)")), 0.5);

  const LpInstance zero = build_full(werner(0.0));
  for (Eigen::Index i = 0; i < 24; ++i) EXPECT_EQ(zero.rhs(i), 0.25);
}

TEST(BuildFull, UniformSplitIsFeasible) {
  for (double p : {0.0, 0.37, 0.71, 1.0}) {
    const LpInstance inst = build_full(werner(p));
    const Eigen::VectorXd u = uniform_point(inst);
    EXPECT_LE(inst.equality_residual(u), 1e-15);
    EXPECT_LE(inst.bound_violation(u), 0.0);
    EXPECT_NEAR(inst.evaluate(u), 0.5, 1e-15);
  }
}

TEST(BuildFull, RejectsInvalidTable) {
  EXPECT_THROW(build_full(testkit::signaling_table(0.5, 0.05)), DomainError);
}

TEST(BuildReduced, ShapeAndBounds) {
  const LpInstance inst = build_reduced(werner(1.0));
  EXPECT_EQ(inst.form, LpForm::Reduced);
  EXPECT_EQ(inst.num_vars(), 24);
  EXPECT_EQ(inst.num_equalities(), 14);
  auto ub = [&](Block b, int o) { return inst.upper(JointIndex{b, o}.reduced_column()); };
  EXPECT_EQ(ub(Block::X, 0), 0.5);
  EXPECT_EQ(ub(Block::X, 6), 0.5);
  EXPECT_EQ(ub(Block::X, 2), 0.0);
  EXPECT_EQ(ub(Block::X, 4), 0.0);
  EXPECT_EQ(ub(Block::Y, 2), 0.25);
  const double alpha = (2.0 + std::numbers::sqrt2) / 8.0;
  const double beta = (2.0 - std::numbers::sqrt2) / 8.0;
  for (Block b : {Block::Z, Block::U, Block::V}) {
    EXPECT_NEAR(ub(b, 0), alpha, 1e-15);
    EXPECT_NEAR(ub(b, 2), beta, 1e-15);
  }
  EXPECT_NEAR(ub(Block::W, 0), beta, 1e-15);
  EXPECT_NEAR(ub(Block::W, 4), alpha, 1e-15);
  EXPECT_DOUBLE_EQ(inst.objective_constant, 0.5);
  EXPECT_EQ(inst.row_names[0], "x_0+x_2 = y_0+y_2");
  EXPECT_EQ(inst.row_names[6], "x_0+x_4 = z_0+z_4");
  EXPECT_EQ(inst.row_names[7], "z_0+z_4 = v_0+v_4");
}

TEST(BuildReduced, NonSymmetricTableIsRejected) {
  CorrelationTable t = werner(0.6);
  // Valid no-signaling table without P(0,0) = P(1,1): bias Alice's and
  // Bob's bits consistently in every setting.
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) {
      Eigen::Matrix2d b = t.block(x, y);
      b(0, 0) += 0.02;
      b(1, 1) -= 0.02;
      t.set_block(x, y, b);
    }
  ASSERT_TRUE(validate_table(t).passed());
  EXPECT_THROW(build_reduced(t), ReductionInapplicableError);
  EXPECT_NO_THROW(build_full(t));
}

TEST(BuildReduced, RowsAndBoundsAffineInP) {
  const LpInstance one = build_reduced(werner(1.0));
  const LpInstance zero = build_reduced(werner(0.0));
  const LpInstance full_one = build_full(werner(1.0));
  const LpInstance full_zero = build_full(werner(0.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = unit(rng);
    const LpInstance r = build_reduced(werner(p));
    EXPECT_LE((r.upper - (p * one.upper + (1 - p) * zero.upper)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((r.rhs - (p * one.rhs + (1 - p) * zero.rhs)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(r.equalities, one.equalities);
    const LpInstance f = build_full(werner(p));
    EXPECT_LE((f.rhs - (p * full_one.rhs + (1 - p) * full_zero.rhs)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BuildReduced, OptimumEqualsFullOptimum) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double p = unit(rng);
    const Solution full = solve(build_full(werner(p)));
    const Solution reduced = solve(build_reduced(werner(p)));
    ASSERT_EQ(full.status, LpStatus::Optimal);
    ASSERT_EQ(reduced.status, LpStatus::Optimal);
    EXPECT_NEAR(full.value, reduced.value, 1e-9) << "p=" << p;
  }
}

TEST(LiftSolution, UniformPointAtZero) {
  const LpInstance inst = build_reduced(werner(0.0));
  const Eigen::VectorXd lifted = lift_solution(inst, uniform_point(inst));
  EXPECT_TRUE(lifted.isApprox(Eigen::VectorXd::Constant(48, 0.125), 0.0));
}

TEST(LiftSolution, OptimumAtOneIsFullyFeasible) {
  const LpInstance reduced = build_reduced(werner(1.0));
  const LpInstance full = build_full(werner(1.0));
  const Solution sol = solve(reduced);
  const Eigen::VectorXd lifted = lift_solution(reduced, sol.primal);
  EXPECT_LE(full.equality_residual(lifted), 1e-9);
  EXPECT_LE(full.bound_violation(lifted), 1e-9);
  EXPECT_NEAR(full.evaluate(lifted), reduced.evaluate(sol.primal), 1e-12);
  EXPECT_NEAR(guessing_probability(lifted), sol.value, 1e-12);
}

TEST(LiftSolution, RejectsPointAboveBound) {
  const LpInstance inst = build_reduced(werner(0.5));
  Eigen::VectorXd point = uniform_point(inst);
  point(0) = inst.upper(0) + 1e-6;
  EXPECT_THROW(lift_solution(inst, point), DomainError);
}

TEST(GuessingObjective, MatchesBobEveMarginalOnFeasiblePoints) {
  for (double p : {0.2, 0.75, 0.93}) {
    const LpInstance reduced = build_reduced(werner(p));
    const LpInstance full = build_full(werner(p));
    for (const Eigen::VectorXd& point : testkit::sample_feasible(reduced, 50, 99)) {
      const Eigen::VectorXd lifted = lift_solution(reduced, point);
      const Eigen::Matrix2d r = bob_eve_marginal(lifted);
      const double pe = reduced.evaluate(point);
      EXPECT_NEAR(pe, r(0, 0) + r(1, 1), 1e-12);
      EXPECT_NEAR(pe, full.evaluate(lifted), 1e-12);
      EXPECT_GE(pe, -1e-12);
      EXPECT_LE(pe, 1.0 + 1e-12);
    }
  }
}

TEST(ProjectionSymmetry, SwapAndReflection) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (double p : {0.5, 0.8, 0.95, 1.0}) {
    const LpInstance inst = build_reduced(werner(p));
    for (int trial = 0; trial < 10; ++trial) {
      const double c1 = gauss(rng);
      const double c2 = gauss(rng);
      EXPECT_NEAR(support(inst, c1, c2), support(inst, c2, c1), 1e-8);
      // h(c) = c . (1/2, 1/2) + h(-c)
      EXPECT_NEAR(support(inst, c1, c2), 0.5 * (c1 + c2) + support(inst, -c1, -c2), 1e-8);
    }
  }
}

TEST(VerifyRedundancies, AllDroppedRowsCertified) {
  const RedundancyReport report = verify_redundancies(werner(0.8));
  EXPECT_TRUE(report.all_certified());
  EXPECT_LE(report.max_residual(), 1e-10);
  EXPECT_EQ(report.retained_rows, 38);
  // 6 normalization, 10 Eve-marginal, 6 Alice-Eve and 8 Bob-Eve odd rows.
  EXPECT_EQ(report.rows.size(), 30u);
  int normalization = 0;
  int eve = 0;
  for (const auto& row : report.rows) {
    normalization += row.family == "normalization";
    eve += row.family == "eve-marginal";
  }
  EXPECT_EQ(normalization, 6);
  EXPECT_EQ(eve, 10);
}

TEST(VerifyRedundancies, RetainedRank) {
  // Summing the no-signaling rows over Alice's (Bob's) bit gives Eve-marginal
  // differences along the cycle (0,0)-(0,1)-(1,1)-(1,0), and likewise for
  // x = 1, 2, so two of the 14 retained rows are still dependent.
  EXPECT_EQ(verify_redundancies(werner(0.3)).retained_rank, 36);
}

TEST(VerifyRedundancies, RejectsInvalidTable) {
  EXPECT_THROW(verify_redundancies(testkit::unnormalized_table(0.8, 1, 1, 0.99)), DomainError);
}
