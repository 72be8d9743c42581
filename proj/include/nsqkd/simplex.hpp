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
#include <vector>

#include <Eigen/Dense>

#include "nsqkd/errors.hpp"
#include "nsqkd/linear_program.hpp"

namespace nsqkd {

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class VarState { Basic, AtLower, AtUpper };

const char* to_string(LpStatus status);
const char* to_string(VarState state);

template <typename Scalar>
struct SimplexOptions {
  Scalar feasibility_tol = Scalar(1e-9);
  Scalar optimality_tol = Scalar(1e-8);
  // Tableau entries below this magnitude are never pivoted on.
  Scalar pivot_tol = Scalar(1e-10);
  long max_iterations = 100000;
};

template <typename Scalar>
struct LpSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  LpStatus status = LpStatus::Infeasible;
  Scalar value = Scalar(0);  // includes the objective constant
  Vector primal;
  Vector dual_eq;
  Vector reduced_costs;
  std::vector<VarState> basis;  // one entry per structural variable
  long iterations = 0;
};

/// Two-phase primal simplex on a dense tableau with bounded variables.
///
/// Nonbasic variables sit at their lower or upper bound. Phase one starts
/// from every variable at its lower bound with one artificial per row and
/// drives the artificials to zero. Artificials still basic afterwards are
/// pinned to [0, 0], which absorbs redundant equality rows without a rank
/// reduction step. Entering and leaving choices follow Bland's rule, so the
/// pivot sequence depends only on the instance.
template <typename Scalar>
class BoundedSimplex {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BoundedSimplex(SimplexOptions<Scalar> options = {}) : opt_(options) {}

  LpSolution<Scalar> solve(const LinearProgram<Scalar>& lp);

 private:
  enum class PhaseResult { Optimal, Unbounded };

  void initialize(const LinearProgram<Scalar>& lp);
  PhaseResult run_phase(const Vector& cost);
  void pivot(Eigen::Index row, Eigen::Index col);
  void refresh_basic_values();
  Matrix basis_matrix() const;

  SimplexOptions<Scalar> opt_;
  Eigen::Index m_ = 0;  // rows
  Eigen::Index n_ = 0;  // structural variables
  Matrix columns_;      // [A | diag(sign)], the original extended columns
  Vector rhs_;
  Vector lo_, up_, x_;
  Matrix tableau_;      // B^{-1} columns_
  std::vector<Eigen::Index> basic_;  // variable basic in each row
  std::vector<VarState> state_;
  long iterations_ = 0;
};

template <typename Scalar>
LpSolution<Scalar> BoundedSimplex<Scalar>::solve(const LinearProgram<Scalar>& lp) {
  lp.check_dimensions();
  initialize(lp);
  const Eigen::Index total = n_ + m_;

  LpSolution<Scalar> sol;

  Vector phase_one = Vector::Zero(total);
  phase_one.tail(m_).setConstant(Scalar(-1));
  run_phase(phase_one);
  refresh_basic_values();

  const Scalar infeasibility = x_.tail(m_).sum();
  const Scalar scale = Scalar(1) + rhs_.template lpNorm<1>();
  if (infeasibility > opt_.feasibility_tol * scale) {
    sol.status = LpStatus::Infeasible;
    sol.iterations = iterations_;
    return sol;
  }

  for (Eigen::Index i = n_; i < total; ++i) {
    up_(i) = Scalar(0);
    x_(i) = Scalar(0);
  }
  refresh_basic_values();

  Vector phase_two = Vector::Zero(total);
  phase_two.head(n_) = lp.objective;
  if (run_phase(phase_two) == PhaseResult::Unbounded) {
    sol.status = LpStatus::Unbounded;
    sol.iterations = iterations_;
    return sol;
  }
  refresh_basic_values();

  // Duals from the final basis: B^T y = c_B.
  Vector basic_cost(m_);
  for (Eigen::Index i = 0; i < m_; ++i) basic_cost(i) = phase_two(basic_[i]);
  const Matrix basis = basis_matrix();
  Vector y = basis.transpose().partialPivLu().solve(basic_cost);

  sol.status = LpStatus::Optimal;
  sol.primal = x_.head(n_);
  sol.dual_eq = y;
  sol.reduced_costs = lp.objective - lp.equalities.transpose() * y;
  sol.value = lp.evaluate(sol.primal);
  sol.basis.assign(state_.begin(), state_.begin() + n_);
  sol.iterations = iterations_;
  return sol;
}

template <typename Scalar>
void BoundedSimplex<Scalar>::initialize(const LinearProgram<Scalar>& lp) {
  m_ = lp.num_equalities();
  n_ = lp.num_vars();
  const Eigen::Index total = n_ + m_;
  iterations_ = 0;

  lo_.resize(total);
  up_.resize(total);
  x_.resize(total);
  lo_.head(n_) = lp.lower;
  up_.head(n_) = lp.upper;
  for (Eigen::Index j = 0; j < n_; ++j) {
    if (!std::isfinite(static_cast<double>(lo_(j)))) {
      throw DomainError("simplex requires finite lower bounds");
    }
  }
  x_.head(n_) = lo_.head(n_);

  rhs_ = lp.rhs;
  const Vector residual = rhs_ - lp.equalities * x_.head(n_);

  columns_ = Matrix::Zero(m_, total);
  columns_.leftCols(n_) = lp.equalities;
  for (Eigen::Index i = 0; i < m_; ++i) {
    const Scalar sign = residual(i) >= Scalar(0) ? Scalar(1) : Scalar(-1);
    columns_(i, n_ + i) = sign;
    lo_(n_ + i) = Scalar(0);
    up_(n_ + i) = std::numeric_limits<Scalar>::infinity();
    x_(n_ + i) = std::abs(residual(i));
  }

  // The starting basis is diag(sign), its own inverse.
  tableau_ = columns_;
  for (Eigen::Index i = 0; i < m_; ++i) tableau_.row(i) *= columns_(i, n_ + i);

  state_.assign(total, VarState::AtLower);
  basic_.resize(m_);
  for (Eigen::Index i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    state_[n_ + i] = VarState::Basic;
  }
}

template <typename Scalar>
typename BoundedSimplex<Scalar>::PhaseResult BoundedSimplex<Scalar>::run_phase(
    const Vector& cost) {
  const Eigen::Index total = n_ + m_;
  const Scalar inf = std::numeric_limits<Scalar>::infinity();

  while (true) {
    Vector basic_cost(m_);
    for (Eigen::Index i = 0; i < m_; ++i) basic_cost(i) = cost(basic_[i]);
    const Vector reduced = cost - tableau_.transpose() * basic_cost;

    // Bland: lowest-index improving variable enters.
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < total; ++j) {
      if (state_[j] == VarState::Basic || !(up_(j) > lo_(j))) continue;
      if ((state_[j] == VarState::AtLower && reduced(j) > opt_.optimality_tol) ||
          (state_[j] == VarState::AtUpper && reduced(j) < -opt_.optimality_tol)) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return PhaseResult::Optimal;

    if (++iterations_ > opt_.max_iterations) {
      throw IterationLimitError("simplex exceeded the iteration cap of " +
                                std::to_string(opt_.max_iterations));
    }

    const Scalar dir = state_[entering] == VarState::AtLower ? Scalar(1) : Scalar(-1);
    const auto column = tableau_.col(entering);

    Scalar step = up_(entering) - lo_(entering);
    Eigen::Index leaving_row = -1;
    bool leaves_at_lower = true;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar rate = dir * column(i);
      const Eigen::Index var = basic_[i];
      Scalar limit;
      bool at_lower;
      if (rate > opt_.pivot_tol) {
        limit = (x_(var) - lo_(var)) / rate;
        at_lower = true;
      } else if (rate < -opt_.pivot_tol && up_(var) < inf) {
        limit = (up_(var) - x_(var)) / -rate;
        at_lower = false;
      } else {
        continue;
      }
      limit = std::max(limit, Scalar(0));
      // Ties go to the lowest-index basic variable.
      if (limit < step ||
          (limit == step && leaving_row >= 0 && var < basic_[leaving_row])) {
        step = limit;
        leaving_row = i;
        leaves_at_lower = at_lower;
      }
    }

    if (step == inf) return PhaseResult::Unbounded;

    x_(entering) += dir * step;
    for (Eigen::Index i = 0; i < m_; ++i) x_(basic_[i]) -= dir * step * column(i);

    if (leaving_row < 0) {
      state_[entering] =
          state_[entering] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
      x_(entering) = state_[entering] == VarState::AtLower ? lo_(entering) : up_(entering);
      continue;
    }

    const Eigen::Index leaving = basic_[leaving_row];
    state_[leaving] = leaves_at_lower ? VarState::AtLower : VarState::AtUpper;
    x_(leaving) = leaves_at_lower ? lo_(leaving) : up_(leaving);
    pivot(leaving_row, entering);
  }
}

template <typename Scalar>
void BoundedSimplex<Scalar>::pivot(Eigen::Index row, Eigen::Index col) {
  const Scalar pivot_value = tableau_(row, col);
  tableau_.row(row) /= pivot_value;
  for (Eigen::Index i = 0; i < m_; ++i) {
    if (i == row) continue;
    const Scalar factor = tableau_(i, col);
    if (factor != Scalar(0)) tableau_.row(i) -= factor * tableau_.row(row);
  }
  basic_[row] = col;
  state_[col] = VarState::Basic;
}

template <typename Scalar>
typename BoundedSimplex<Scalar>::Matrix BoundedSimplex<Scalar>::basis_matrix() const {
  Matrix basis(m_, m_);
  for (Eigen::Index i = 0; i < m_; ++i) basis.col(i) = columns_.col(basic_[i]);
  return basis;
}

// Recomputes basic values from the original data to shed tableau drift.
template <typename Scalar>
void BoundedSimplex<Scalar>::refresh_basic_values() {
  if (m_ == 0) return;
  for (Eigen::Index i = 0; i < m_; ++i) x_(basic_[i]) = Scalar(0);
  const Vector rest = rhs_ - columns_ * x_;
  const Vector basic_values = basis_matrix().partialPivLu().solve(rest);
  for (Eigen::Index i = 0; i < m_; ++i) x_(basic_[i]) = basic_values(i);
}

}  // namespace nsqkd
