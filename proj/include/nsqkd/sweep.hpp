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
#include <optional>
#include <string>
#include <vector>

#include "nsqkd/io.hpp"
#include "nsqkd/keyrate.hpp"

namespace nsqkd {

struct GridSpec {
  double p_min = 0.0;
  double p_max = 1.0;
  int steps = 101;

  void validate() const;
  /// Evenly spaced points; the last one is exactly p_max.
  std::vector<double> points() const;
};

enum class SweepForm { Full, Reduced, Both };

SweepForm sweep_form_from_string(const std::string& s);

/// Maps the grid parameter to the correlation table that is analysed there.
using TableFamily = std::function<CorrelationTable(double)>;

/// werner_correlations(p).
TableFamily werner_family();

/// An externally supplied table mixed with white noise:
/// p * t + (1 - p) / 4. At p = 1 this is the table itself.
TableFamily noisy_family(const CorrelationTable& t);

struct SweepOptions {
  GridSpec grid;
  SweepForm form = SweepForm::Reduced;
  int jobs = 1;
  // Grid quantiles re-solved in full form when form == Reduced.
  int spot_checks = 5;
  double cross_check_tol = 1e-9;
  std::string provenance = "werner";
};

struct CrossCheck {
  double p = 0.0;
  double full_value = 0.0;
  double reduced_value = 0.0;
};

struct SweepResult {
  std::vector<KeyRateReport> records;  // ascending p
  GridSpec grid;
  // Linear interpolation of the first sign change of K_raw on the grid.
  std::optional<double> threshold;
  std::vector<CrossCheck> cross_checks;
  std::string provenance;
  std::string version = NSQKD_VERSION;
  ProtocolConfig protocol;
};

/// Solves and certifies every grid point on `jobs` worker threads. Results
/// are stored by grid index, so the output does not depend on scheduling.
/// Throws DomainError naming the first failing p, including full/reduced
/// disagreements above cross_check_tol.
SweepResult run_sweep(const SweepOptions& options, const TableFamily& family = werner_family());

/// Header plus one row per record; re-checks every record's invariants.
std::string sweep_csv(const SweepResult& result);
io::json sweep_json(const SweepResult& result);

/// Solves the table in the reduced form if it has the required symmetry,
/// otherwise in the full form.
LpForm preferred_form(const CorrelationTable& t);

}  // namespace nsqkd
