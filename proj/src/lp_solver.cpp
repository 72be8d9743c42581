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

#include "nsqkd/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nsqkd {

template class BoundedSimplex<double>;

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

const char* to_string(VarState state) {
  switch (state) {
    case VarState::Basic: return "basic";
    case VarState::AtLower: return "at-lower";
    case VarState::AtUpper: return "at-upper";
  }
  return "unknown";
}

Solution solve(const LpInstance& inst, const SimplexOptions<double>& options) {
  return BoundedSimplex<double>(options).solve(inst);
}

Certificate certify(const LpInstance& inst, const Solution& sol,
                    const CertifyTolerances& tol) {
  Certificate cert;
  auto fail = [&cert](const std::string& why) {
    cert.passed = false;
    if (!cert.diagnostic.empty()) cert.diagnostic += "; ";
    cert.diagnostic += why;
  };

  if (sol.status != LpStatus::Optimal) {
    fail(std::string("solution status is ") + to_string(sol.status));
    return cert;
  }
  const Eigen::Index n = inst.num_vars();
  const Eigen::Index m = inst.num_equalities();
  if (sol.primal.size() != n || sol.dual_eq.size() != m) {
    fail("solution dimensions do not match the instance");
    return cert;
  }
  cert.passed = true;

  const Eigen::VectorXd& x = sol.primal;
  cert.primal_value = inst.evaluate(x);
  cert.primal_equality_residual = inst.equality_residual(x);
  cert.primal_bound_violation = std::max(0.0, inst.bound_violation(x));

  cert.dual_eq = sol.dual_eq;
  const Eigen::VectorXd reduced = inst.objective - inst.equalities.transpose() * cert.dual_eq;
  cert.upper_multipliers = reduced.cwiseMax(0.0);
  cert.lower_multipliers = (-reduced).cwiseMax(0.0);

  cert.bound = inst.rhs.dot(cert.dual_eq) + inst.objective_constant;
  bool unbounded_dual = false;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double w = cert.upper_multipliers(j);
    const double v = cert.lower_multipliers(j);
    if (w > 0.0) {
      if (std::isinf(inst.upper(j))) {
        if (w > tol.dual) unbounded_dual = true;
      } else {
        cert.bound += inst.upper(j) * w;
      }
    }
    if (v > 0.0) cert.bound -= inst.lower(j) * v;
  }

  cert.dual_residual = (inst.equalities.transpose() * cert.dual_eq + cert.upper_multipliers -
                        cert.lower_multipliers - inst.objective)
                           .cwiseAbs()
                           .maxCoeff();
  cert.gap = cert.bound - cert.primal_value;

  std::ostringstream os;
  if (cert.primal_bound_violation > tol.primal) {
    os.str("");
    os << "primal bound violation " << cert.primal_bound_violation;
    fail(os.str());
  }
  if (cert.primal_equality_residual > tol.primal) {
    os.str("");
    os << "primal equality residual " << cert.primal_equality_residual;
    fail(os.str());
  }
  if (unbounded_dual) fail("dual infeasible: positive reduced cost on a variable without upper bound");
  if (cert.dual_residual > tol.dual) {
    os.str("");
    os << "dual residual " << cert.dual_residual;
    fail(os.str());
  }
  if (std::abs(cert.primal_value - sol.value) > tol.primal) {
    os.str("");
    os << "reported value differs from recomputed objective by "
       << std::abs(cert.primal_value - sol.value);
    fail(os.str());
  }
  if (cert.gap < -tol.gap) {
    os.str("");
    os << "weak duality violated: bound below primal value by " << -cert.gap;
    fail(os.str());
  }
  if (cert.gap > tol.gap) {
    os.str("");
    os << "duality gap " << cert.gap << " exceeds " << tol.gap;
    fail(os.str());
  }
  return cert;
}

ParametricReport parametric_concavity_check(std::span<const double> grid,
                                            std::span<const double> values, double tol) {
  if (grid.size() < 3) throw DomainError("parametric check needs at least 3 grid points");
  if (grid.size() != values.size()) throw DomainError("grid and values differ in length");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");
  }

  ParametricReport report;
  report.p.assign(grid.begin(), grid.end());
  report.value.assign(values.begin(), values.end());

  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double w = (grid[i + 1] - grid[i]) / (grid[i + 1] - grid[i - 1]);
    const double chord = w * values[i - 1] + (1.0 - w) * values[i + 1];
    report.max_concavity_violation =
        std::max(report.max_concavity_violation, chord - values[i]);
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    report.max_monotonicity_violation =
        std::max(report.max_monotonicity_violation, values[i] - values[i - 1]);
  }
  const double span = grid.back() - grid.front();
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double w = (grid.back() - grid[i]) / span;
    const double chord = w * values.front() + (1.0 - w) * values.back();
    report.max_chord_deviation =
        std::max(report.max_chord_deviation, std::abs(values[i] - chord));
  }
  report.concave = report.max_concavity_violation <= tol;
  report.monotone_nonincreasing = report.max_monotonicity_violation <= tol;
  return report;
}

ParametricReport parametric_concavity_check(std::span<const double> grid,
                                            const std::function<LpInstance(double)>& build,
                                            double tol) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double p : grid) {
    const LpInstance inst = build(p);
    const Solution sol = solve(inst);
    if (sol.status != LpStatus::Optimal) {
      std::ostringstream os;
      os << "instance at p=" << p << " is " << to_string(sol.status);
      throw DomainError(os.str());
    }
    values.push_back(sol.value);
  }
  return parametric_concavity_check(grid, values, tol);
}

}  // namespace nsqkd
