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

#include <array>
#include <bitset>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nsqkd {

inline constexpr int kAliceSettings = 3;
inline constexpr int kBobSettings = 2;
inline constexpr int kSettingPairs = kAliceSettings * kBobSettings;

/// Visibility of the Werner state, p in [0, 1].
class WernerParameter {
 public:
  explicit WernerParameter(double p);
  double value() const { return p_; }

 private:
  double p_;
};

enum class Party { Alice, Bob };

struct MeasurementSetting {
  Party party;
  int index;
  double angle;  // radians, rotation of |+> about z
};

/// Alice measures at {0, pi/4, -pi/4} for x = 0, 1, 2.
MeasurementSetting alice_setting(int x);
/// Bob measures at {0, pi/2} for y = 0, 1.
MeasurementSetting bob_setting(int y);

/// Sifting weights. Carried into reports only; they never enter a computation
/// because the key rate is asymptotic.
struct ProtocolConfig {
  double q = 1.0;
  double q_prime = 1.0;

  void validate() const;
};

/// Position of setting pair (x, y) in every per-setting array:
/// (0,0), (0,1), (1,0), (1,1), (2,0), (2,1).
constexpr int setting_index(int x, int y) { return x * kBobSettings + y; }

/// Alice-Bob marginals P(a,b|x,y), one 2x2 block per setting pair with
/// rows indexed by a and columns by b.
class CorrelationTable {
 public:
  enum class Source { WernerModel, Ingested };

  CorrelationTable() { blocks_.fill(Eigen::Matrix2d::Zero()); }

  const Eigen::Matrix2d& block(int x, int y) const;
  void set_block(int x, int y, const Eigen::Matrix2d& probs);

  double operator()(int x, int y, int a, int b) const { return block(x, y)(a, b); }

  bool has(int x, int y) const { return present_.test(setting_index(x, y)); }
  bool complete() const { return present_.all(); }

  Source source = Source::WernerModel;

 private:
  std::array<Eigen::Matrix2d, kSettingPairs> blocks_;
  std::bitset<kSettingPairs> present_;
};

/// Two-outcome joint for a Werner state measured at the given angles:
/// P(a,b) = (1 + (-1)^(a xor b) p cos(angle_a - angle_b)) / 4.
Eigen::Matrix2d born_joint(double angle_a, double angle_b, WernerParameter p);

/// The six marginal tables of the protocol on a Werner state of visibility p.
CorrelationTable werner_correlations(WernerParameter p);

struct ValidationCheck {
  std::string name;
  double residual = 0.0;  // worst violation over the family
  bool passed = true;
  std::string detail;     // names the worst setting when failed
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const;
  double max_residual() const;
  /// Newline separated list of failed checks, empty when passed.
  std::string failures() const;
};

inline constexpr double kTableTolerance = 1e-12;

/// Checks nonnegativity, normalization and both marginal no-signaling
/// conditions. Throws MalformedTableError if a setting pair is missing.
ValidationReport validate_table(const CorrelationTable& t,
                                double tol = kTableTolerance);

/// True when every block has P(0,0) = P(1,1) and P(0,1) = P(1,0).
bool has_pairwise_symmetry(const CorrelationTable& t, double tol = kTableTolerance);

}  // namespace nsqkd
