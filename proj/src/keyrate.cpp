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

#include "nsqkd/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsqkd/errors.hpp"

namespace nsqkd {

namespace {

double entropy_term(double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; }

}  // namespace

void KeyRateReport::check_invariants(double tol) const {
  std::ostringstream os;
  os << "key rate report at p=" << p << ": ";
  if (std::abs(i_be_bound - (2.0 * guessing_prob - 1.0)) > tol) {
    throw DomainError(os.str() + "I_BE bound differs from 2 P_E - 1");
  }
  if (guessing_prob < 0.5 - tol || guessing_prob > 1.0 + tol) {
    throw DomainError(os.str() + "P_E outside [1/2, 1]");
  }
  if (i_ab < -tol || i_ab > 1.0 + tol) throw DomainError(os.str() + "I_AB outside [0, 1]");
  if (i_be_bound < -tol || i_be_bound > 1.0 + tol) {
    throw DomainError(os.str() + "I_BE bound outside [0, 1]");
  }
  if (std::abs(k_raw - (i_ab - i_be_bound)) > tol) {
    throw DomainError(os.str() + "K_raw differs from I_AB - I_BE bound");
  }
  if (k != std::max(0.0, k_raw)) throw DomainError(os.str() + "K is not max(0, K_raw)");
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << "binary entropy argument must lie in [0, 1], got " << q;
    throw DomainError(os.str());
  }
  return entropy_term(q) + entropy_term(1.0 - q);
}

double mutual_info_ab(const CorrelationTable& t) {
  const Eigen::Matrix2d& joint = t.block(0, 0);
  const Eigen::Vector2d alice = joint.rowwise().sum();
  const Eigen::RowVector2d bob = joint.colwise().sum();
  double info = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double pab = joint(a, b);
      if (pab > 0.0) info += pab * std::log2(pab / (alice(a) * bob(b)));
    }
  }
  return std::max(0.0, info);
}

double ibe_bound(double guessing_prob) {
  constexpr double kSlack = 1e-9;
  if (!(guessing_prob >= 0.5 - kSlack && guessing_prob <= 1.0 + kSlack)) {
    std::ostringstream os;
    os << "guessing probability must lie in [1/2, 1], got " << guessing_prob;
    throw DomainError(os.str());
  }
  return 2.0 * std::clamp(guessing_prob, 0.5, 1.0) - 1.0;
}

GuessingBoundCheck verify_guessing_bound(const BobEveJoint& joint, double tol) {
  if (joint.cols() == 0 || (joint.array() < 0.0).any()) {
    throw DomainError("Bob-Eve joint must be a nonnegative 2 x m matrix with m >= 1");
  }
  const Eigen::Vector2d bob = joint.rowwise().sum();
  if (std::abs(bob(0) - 0.5) > 1e-9 || std::abs(bob(1) - 0.5) > 1e-9) {
    throw DomainError("Bob's marginal must be uniform");
  }
  const Eigen::RowVectorXd eve = joint.colwise().sum();

  GuessingBoundCheck check;
  // I(B:E) = H(B) - sum_j P(j) H[P(0|j)]
  double conditional = 0.0;
  for (Eigen::Index j = 0; j < joint.cols(); ++j) {
    if (eve(j) <= 0.0) continue;
    const double p0 = std::clamp(joint(0, j) / eve(j), 0.0, 1.0);
    conditional += eve(j) * binary_entropy(p0);
    check.guessing_prob += joint.col(j).maxCoeff();
  }
  check.mutual_info = binary_entropy(std::clamp(bob(0), 0.0, 1.0)) - conditional;
  check.bound = 2.0 * check.guessing_prob - 1.0;
  check.holds = check.mutual_info <= check.bound + tol;
  return check;
}

KeyRateReport report_for(double p, const CorrelationTable& t, const Solution& sol) {
  if (sol.status != LpStatus::Optimal) throw DomainError("report_for needs an optimal solution");
  KeyRateReport r;
  r.p = p;
  r.guessing_prob = std::clamp(sol.value, 0.5, 1.0);
  r.i_ab = mutual_info_ab(t);
  r.i_be_bound = ibe_bound(sol.value);
  r.k_raw = r.i_ab - r.i_be_bound;
  r.k = std::max(0.0, r.k_raw);
  return r;
}

WernerPoint solve_werner(double p, LpForm form) {
  const CorrelationTable t = werner_correlations(WernerParameter(p));
  const LpInstance inst = build_instance(t, form);
  WernerPoint point;
  point.solution = solve(inst);
  if (point.solution.status != LpStatus::Optimal) {
    std::ostringstream os;
    os << "LP at p=" << p << " is " << to_string(point.solution.status);
    throw DomainError(os.str());
  }
  point.certificate = certify(inst, point.solution);
  if (!point.certificate.passed) {
    std::ostringstream os;
    os << "certificate failed at p=" << p << ": " << point.certificate.diagnostic;
    throw DomainError(os.str());
  }
  point.report = report_for(p, t, point.solution);
  return point;
}

KeyRateModel werner_model(LpForm form) {
  return [form](double p) { return solve_werner(p, form).report; };
}

Bracket default_threshold_bracket() { return {1.0 / std::numbers::sqrt2, 1.0}; }

ThresholdResult find_threshold(const KeyRateModel& model, double tol, Bracket bracket) {
  if (!(tol > 0.0)) throw DomainError("threshold tolerance must be positive");
  if (!(bracket.lower < bracket.upper)) throw DomainError("threshold bracket is empty");

  ThresholdResult result;
  double lo = bracket.lower;
  double hi = bracket.upper;
  const double k_lo = model(lo).k_raw;
  const double k_hi = model(hi).k_raw;
  result.evaluations = 2;
  if ((k_lo < 0.0) == (k_hi < 0.0)) {
    std::ostringstream os;
    os << "no sign change of K_raw in [" << lo << ", " << hi << "] (" << k_lo << ", " << k_hi
       << ")";
    throw DomainError(os.str());
  }
  const bool rising = k_lo < 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double k_mid = model(mid).k_raw;
    ++result.evaluations;
    if ((k_mid < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.lower = lo;
  result.upper = hi;
  result.p_star = 0.5 * (lo + hi);
  return result;
}

}  // namespace nsqkd
