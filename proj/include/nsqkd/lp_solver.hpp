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
#include <span>
#include <string>
#include <vector>

#include "nsqkd/linear_program.hpp"
#include "nsqkd/simplex.hpp"

namespace nsqkd {

extern template class BoundedSimplex<double>;

using Solution = LpSolution<double>;

/// Solves with the default tolerances (feasibility 1e-9, optimality 1e-8).
Solution solve(const LpInstance& inst, const SimplexOptions<double>& options = {});

/// Optimality proof for a maximization, rebuilt from the instance data and
/// the equality multipliers alone.
///
/// For any multipliers y, with reduced costs d = c - A^T y, the value
///   b.y + sum_j upper_j max(d_j, 0) - sum_j lower_j max(-d_j, 0) + constant
/// bounds every feasible objective from above. The upper/lower bound
/// multipliers are the positive and negative parts of d.
struct Certificate {
  Eigen::VectorXd dual_eq;
  Eigen::VectorXd upper_multipliers;
  Eigen::VectorXd lower_multipliers;
  double bound = 0.0;         // dual objective
  double primal_value = 0.0;  // recomputed from the primal point
  double gap = 0.0;           // bound - primal_value
  double dual_residual = 0.0;
  double primal_equality_residual = 0.0;
  double primal_bound_violation = 0.0;
  bool passed = false;
  std::string diagnostic;  // names the violated condition when !passed
};

struct CertifyTolerances {
  double primal = 1e-9;
  double gap = 1e-8;
  double dual = 1e-9;
};

Certificate certify(const LpInstance& inst, const Solution& sol,
                    const CertifyTolerances& tol = {});

struct ParametricReport {
  std::vector<double> p;
  std::vector<double> value;
  bool concave = true;
  bool monotone_nonincreasing = true;
  double max_concavity_violation = 0.0;
  double max_monotonicity_violation = 0.0;
  // Largest |value - chord through the two endpoints| over interior points.
  double max_chord_deviation = 0.0;

  bool passed() const { return concave && monotone_nonincreasing; }
};

/// Checks that an optimal value sampled on an increasing grid is concave
/// (each interior point lies on or above the chord of its neighbours) and
/// nonincreasing, both to within `tol`.
ParametricReport parametric_concavity_check(std::span<const double> grid,
                                            std::span<const double> values,
                                            double tol = 1e-8);

/// Builds and solves one instance per grid point, then runs the check above.
ParametricReport parametric_concavity_check(
    std::span<const double> grid, const std::function<LpInstance(double)>& build,
    double tol = 1e-8);

}  // namespace nsqkd
