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

#include <functional>

#include <Eigen/Dense>

#include "nsqkd/lp_builder.hpp"
#include "nsqkd/lp_solver.hpp"
#include "nsqkd/protocol_model.hpp"

namespace nsqkd {

/// All informations in bits.
struct KeyRateReport {
  double p = 0.0;
  double guessing_prob = 0.0;
  double i_ab = 0.0;
  double i_be_bound = 0.0;
  double k_raw = 0.0;  // i_ab - i_be_bound, may be negative
  double k = 0.0;      // max(0, k_raw)

  /// Throws DomainError naming the first violated invariant.
  void check_invariants(double tol = 1e-9) const;
};

/// Bob-Eve joint R(i, j): two rows for Bob's bit, one column per Eve outcome.
using BobEveJoint = Eigen::Matrix<double, 2, Eigen::Dynamic>;

/// -q log2 q - (1-q) log2 (1-q), zero at both endpoints.
double binary_entropy(double q);

/// Mutual information of Alice's and Bob's bits in the (0,0) block.
double mutual_info_ab(const CorrelationTable& t);

/// Upper bound 2 P_E - 1 on Bob-Eve mutual information for an Eve with any
/// number of outcomes. Rejects P_E outside [1/2, 1]; values within 1e-9 of
/// the interval are clamped onto it.
double ibe_bound(double guessing_prob);

struct GuessingBoundCheck {
  double mutual_info = 0.0;   // exact I(B:E) of the joint
  double guessing_prob = 0.0;  // sum_j max_i R(i, j)
  double bound = 0.0;          // 2 P_E - 1
  bool holds = false;
};

/// Computes I(B:E) and P_E of R exactly and checks I(B:E) <= 2 P_E - 1.
/// Requires Bob's marginal to be uniform within 1e-9.
GuessingBoundCheck verify_guessing_bound(const BobEveJoint& joint, double tol = 1e-12);

/// Assembles the report for an optimal solution of an instance built from t.
KeyRateReport report_for(double p, const CorrelationTable& t, const Solution& sol);

/// A solved and certified point of the Werner model.
struct WernerPoint {
  KeyRateReport report;
  Solution solution;
  Certificate certificate;
};

/// Builds, solves, and certifies the Werner instance at p. Throws DomainError
/// if the solve is not optimal or the certificate fails.
WernerPoint solve_werner(double p, LpForm form = LpForm::Reduced);

/// Maps p to a key rate report; the threshold search calls it repeatedly.
using KeyRateModel = std::function<KeyRateReport(double)>;

/// Werner model solved in the given form.
KeyRateModel werner_model(LpForm form = LpForm::Reduced);

struct ThresholdResult {
  double p_star = 0.0;  // midpoint of the final bracket
  double lower = 0.0;
  double upper = 0.0;
  int evaluations = 0;
};

/// Default search bracket [1/sqrt(2), 1].
struct Bracket {
  double lower;
  double upper;
};
Bracket default_threshold_bracket();

/// Bisection on k_raw(p) until the bracket is at most tol wide. Throws
/// DomainError if k_raw has the same sign at both ends.
ThresholdResult find_threshold(const KeyRateModel& model, double tol,
                               Bracket bracket = default_threshold_bracket());

}  // namespace nsqkd
