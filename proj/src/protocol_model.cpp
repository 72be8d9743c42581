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

#include "nsqkd/protocol_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsqkd/errors.hpp"

namespace nsqkd {

namespace {

std::string pair_name(int x, int y) {
  std::ostringstream os;
  os << "(x=" << x << ",y=" << y << ")";
  return os.str();
}

void check_pair(int x, int y) {
  if (x < 0 || x >= kAliceSettings || y < 0 || y >= kBobSettings) {
    throw DomainError("setting pair out of range: " + pair_name(x, y));
  }
}

// Records the worst residual of one check family.
class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tol) : tol_(tol) { check_.name = std::move(name); }

  void observe(double residual, const std::string& where) {
    if (residual > check_.residual) {
      check_.residual = residual;
      worst_ = where;
    }
  }

  ValidationCheck finish() {
    check_.passed = check_.residual <= tol_;
    if (!check_.passed) {
      std::ostringstream os;
      os << check_.name << " violated at " << worst_ << " by " << check_.residual;
      check_.detail = os.str();
    }
    return check_;
  }

 private:
  ValidationCheck check_;
  double tol_;
  std::string worst_;
};

}  // namespace

WernerParameter::WernerParameter(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "Werner parameter p must lie in [0, 1], got " << p;
    throw DomainError(os.str());
  }
}

MeasurementSetting alice_setting(int x) {
  constexpr double kQuarter = std::numbers::pi / 4;
  switch (x) {
    case 0: return {Party::Alice, 0, 0.0};
    case 1: return {Party::Alice, 1, kQuarter};
    case 2: return {Party::Alice, 2, -kQuarter};
    default: throw DomainError("Alice setting must be 0, 1 or 2");
  }
}

MeasurementSetting bob_setting(int y) {
  switch (y) {
    case 0: return {Party::Bob, 0, 0.0};
    case 1: return {Party::Bob, 1, std::numbers::pi / 2};
    default: throw DomainError("Bob setting must be 0 or 1");
  }
}

void ProtocolConfig::validate() const {
  if (!(q > 0.0 && q <= 1.0) || !(q_prime > 0.0 && q_prime <= 1.0)) {
    throw DomainError("sifting weights q, q' must lie in (0, 1]");
  }
}

const Eigen::Matrix2d& CorrelationTable::block(int x, int y) const {
  check_pair(x, y);
  return blocks_[setting_index(x, y)];
}

void CorrelationTable::set_block(int x, int y, const Eigen::Matrix2d& probs) {
  check_pair(x, y);
  blocks_[setting_index(x, y)] = probs;
  present_.set(setting_index(x, y));
}

Eigen::Matrix2d born_joint(double angle_a, double angle_b, WernerParameter p) {
  const double corr = p.value() * std::cos(angle_a - angle_b);
  Eigen::Matrix2d out;
  out << 1.0 + corr, 1.0 - corr,
         1.0 - corr, 1.0 + corr;
  return 0.25 * out;
}

CorrelationTable werner_correlations(WernerParameter p) {
  const double v = p.value();
  const double noise = (1.0 - v) / 4.0;
  // cos^2(pi/8) in closed form
  const double c = (2.0 + std::numbers::sqrt2) / 4.0;
  const double alpha = c * v / 2.0 + noise;
  const double beta = (1.0 - c) * v / 2.0 + noise;

  auto symmetric = [](double diag, double off) {
    Eigen::Matrix2d m;
    m << diag, off,
         off, diag;
    return m;
  };

  CorrelationTable t;
  t.source = CorrelationTable::Source::WernerModel;
  t.set_block(0, 0, symmetric(v / 2.0 + noise, noise));
  t.set_block(0, 1, symmetric(0.25, 0.25));
  t.set_block(1, 0, symmetric(alpha, beta));
  t.set_block(1, 1, symmetric(alpha, beta));
  t.set_block(2, 0, symmetric(alpha, beta));
  t.set_block(2, 1, symmetric(beta, alpha));
  return t;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

double ValidationReport::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks) r = std::max(r, c.residual);
  return r;
}

std::string ValidationReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += '\n';
    out += c.detail;
  }
  return out;
}

ValidationReport validate_table(const CorrelationTable& t, double tol) {
  for (int x = 0; x < kAliceSettings; ++x) {
    for (int y = 0; y < kBobSettings; ++y) {
      if (!t.has(x, y)) {
        throw MalformedTableError("correlation table is missing setting pair " +
                                  pair_name(x, y));
      }
    }
  }

  CheckAccumulator nonneg("nonnegativity", tol);
  CheckAccumulator norm("normalization", tol);
  CheckAccumulator alice("Alice-marginal no-signaling", tol);
  CheckAccumulator bob("Bob-marginal no-signaling", tol);

  for (int x = 0; x < kAliceSettings; ++x) {
    for (int y = 0; y < kBobSettings; ++y) {
      const Eigen::Matrix2d& b = t.block(x, y);
      if (!b.allFinite()) {
        throw MalformedTableError("non-finite probability at " + pair_name(x, y));
      }
      nonneg.observe(std::max(0.0, -b.minCoeff()), pair_name(x, y));
      norm.observe(std::abs(b.sum() - 1.0), pair_name(x, y));
    }
  }

  // Alice's marginal may not depend on y.
  for (int x = 0; x < kAliceSettings; ++x) {
    const Eigen::Vector2d diff =
        t.block(x, 0).rowwise().sum() - t.block(x, 1).rowwise().sum();
    alice.observe(diff.cwiseAbs().maxCoeff(), "x=" + std::to_string(x));
  }
  // Bob's marginal may not depend on x.
  for (int y = 0; y < kBobSettings; ++y) {
    const Eigen::RowVector2d ref = t.block(0, y).colwise().sum();
    for (int x = 1; x < kAliceSettings; ++x) {
      const Eigen::RowVector2d diff = t.block(x, y).colwise().sum() - ref;
      bob.observe(diff.cwiseAbs().maxCoeff(),
                  "y=" + std::to_string(y) + " between x=0 and x=" + std::to_string(x));
    }
  }

  ValidationReport report;
  report.checks = {nonneg.finish(), norm.finish(), alice.finish(), bob.finish()};
  return report;
}

bool has_pairwise_symmetry(const CorrelationTable& t, double tol) {
  for (int x = 0; x < kAliceSettings; ++x) {
    for (int y = 0; y < kBobSettings; ++y) {
      const Eigen::Matrix2d& b = t.block(x, y);
      if (std::abs(b(0, 0) - b(1, 1)) > tol || std::abs(b(0, 1) - b(1, 0)) > tol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace nsqkd
