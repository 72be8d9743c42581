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

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nsqkd/linear_program.hpp"
#include "nsqkd/protocol_model.hpp"

namespace nsqkd {

inline constexpr int kOutcomesPerSetting = 8;  // (a, b, e) as the binary number abe
inline constexpr int kFullVars = kSettingPairs * kOutcomesPerSetting;
inline constexpr int kReducedVars = kFullVars / 2;

/// Variable blocks in the fixed order used by every instance: one block per
/// setting pair, named x, y, z, u, v, w for (0,0), (0,1), (1,0), (1,1),
/// (2,0), (2,1).
enum class Block { X = 0, Y, Z, U, V, W };

/// One joint probability P(a,b,e|x,y), addressed as block + outcome abe.
struct JointIndex {
  Block block;
  int outcome;  // 4a + 2b + e

  static JointIndex from_settings(int x, int y, int a, int b, int e);

  int x() const;
  int y() const;
  int a() const { return (outcome >> 2) & 1; }
  int b() const { return (outcome >> 1) & 1; }
  int e() const { return outcome & 1; }

  /// Column in the 48-variable form.
  int full_column() const { return static_cast<int>(block) * kOutcomesPerSetting + outcome; }
  /// Column in the 24-variable form. Only even outcomes (e = 0) exist there.
  int reduced_column() const;
  /// Label such as "x_5" or "w_6".
  std::string name() const;

  friend bool operator==(const JointIndex&, const JointIndex&) = default;
};

char block_letter(Block block);

/// All 48 joint probabilities subject to the observed marginals and the
/// Alice-Eve / Bob-Eve no-signaling equalities. Normalization and the
/// Eve-marginal equalities are implied and left out (see verify_redundancies).
/// Objective: R(0,0) + R(1,1) summed directly from the (0,0) block.
LpInstance build_full(const CorrelationTable& t);

/// The 24-variable form over even outcomes. Odd outcomes are eliminated via
/// P(a,b,1|x,y) = t(a,b|x,y) - P(a,b,0|x,y), which turns nonnegativity of the
/// odd variables into upper bounds and leaves 14 no-signaling rows.
/// Objective: (x_0 + x_4) - (x_2 + x_6) + t(0,1|0,0) + t(1,1|0,0).
/// Throws ReductionInapplicableError unless has_pairwise_symmetry(t).
LpInstance build_reduced(const CorrelationTable& t);

/// Builds the requested form.
LpInstance build_instance(const CorrelationTable& t, LpForm form);

/// Bob-Eve joint R(b,e) = sum_a P(a,b,e|0,0) of a 48-entry point.
Eigen::Matrix2d bob_eve_marginal(const Eigen::VectorXd& full_point);

/// R(0,0) + R(1,1) of a 48-entry point.
double guessing_probability(const Eigen::VectorXd& full_point);

/// Restores the odd outcomes of a reduced point. Throws DomainError if a
/// reconstructed probability is below -1e-9.
Eigen::VectorXd lift_solution(const LpInstance& reduced, const Eigen::VectorXd& reduced_point);

/// The point that splits every marginal evenly over Eve's outcome. Feasible
/// for both forms; requires inst.source.
Eigen::VectorXd uniform_point(const LpInstance& inst);

struct RowCertification {
  std::string name;
  std::string family;  // "normalization", "eve-marginal", "alice-eve i=1,5", "bob-eve j=1,3"
  double residual = 0.0;
  bool certified = false;
};

struct RedundancyReport {
  std::vector<RowCertification> rows;
  Eigen::Index retained_rows = 0;
  Eigen::Index retained_rank = 0;

  bool all_certified() const;
  double max_residual() const;
};

/// Writes every omitted constraint (normalization, Eve marginal, and the
/// odd-index no-signaling rows dropped by the reduced form) over the 48
/// variables, and certifies each as a linear combination of the retained
/// rows: the marginal equalities plus the 14 reduced no-signaling rows.
/// Rows are augmented with their right-hand side, so the combination must
/// reproduce the constant as well. A row is certified when its least-squares
/// residual is at most `tol`.
RedundancyReport verify_redundancies(const CorrelationTable& t, double tol = 1e-10);

}  // namespace nsqkd
