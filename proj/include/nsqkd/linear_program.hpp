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

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nsqkd/protocol_model.hpp"

namespace nsqkd {

enum class LpForm { Full, Reduced, Generic };

std::string to_string(LpForm form);
LpForm lp_form_from_string(const std::string& s);

/// maximize  objective . x + objective_constant
/// subject to  equalities * x = rhs,  lower <= x <= upper.
///
/// Row i of `equalities` together with rhs(i) is one equality constraint.
template <typename Scalar>
struct LinearProgram {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector objective;
  Scalar objective_constant = Scalar(0);
  Matrix equalities;
  Vector rhs;
  Vector lower;
  Vector upper;
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;

  LpForm form = LpForm::Generic;
  double p = std::numeric_limits<double>::quiet_NaN();
  // Table the instance was assembled from, absent for imported instances.
  std::optional<CorrelationTable> source;

  Eigen::Index num_vars() const { return objective.size(); }
  Eigen::Index num_equalities() const { return equalities.rows(); }

  Scalar evaluate(const Vector& x) const { return objective.dot(x) + objective_constant; }

  Scalar equality_residual(const Vector& x) const {
    if (equalities.rows() == 0) return Scalar(0);
    return (equalities * x - rhs).cwiseAbs().maxCoeff();
  }

  Scalar bound_violation(const Vector& x) const {
    Scalar worst(0);
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      worst = std::max({worst, lower(j) - x(j), x(j) - upper(j)});
    }
    return worst;
  }

  /// Throws DomainError on inconsistent dimensions or lower > upper.
  void check_dimensions() const;
};

using LpInstance = LinearProgram<double>;

}  // namespace nsqkd

#include "nsqkd/linear_program.ipp"
