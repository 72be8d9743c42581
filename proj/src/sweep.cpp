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

#include "nsqkd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "nsqkd/errors.hpp"

namespace nsqkd {

namespace {

struct PointOutcome {
  KeyRateReport report;
  std::optional<CrossCheck> cross_check;
  std::exception_ptr error;
};

double solve_certified(const LpInstance& inst, double p) {
  const Solution sol = solve(inst);
  if (sol.status != LpStatus::Optimal) {
    std::ostringstream os;
    os << "LP at p=" << p << " is " << to_string(sol.status);
    throw DomainError(os.str());
  }
  const Certificate cert = certify(inst, sol);
  if (!cert.passed) {
    std::ostringstream os;
    os << "certificate failed at p=" << p << ": " << cert.diagnostic;
    throw DomainError(os.str());
  }
  return sol.value;
}

PointOutcome evaluate_point(double p, const TableFamily& family, SweepForm form,
                            bool cross_check, double tol) {
  PointOutcome out;
  try {
    const CorrelationTable t = family(p);
    const LpForm primary = form == SweepForm::Full ? LpForm::Full : preferred_form(t);
    const LpInstance inst = build_instance(t, primary);
    const Solution sol = solve(inst);
    if (sol.status != LpStatus::Optimal) {
      std::ostringstream os;
      os << "LP at p=" << p << " is " << to_string(sol.status);
      throw DomainError(os.str());
    }
    const Certificate cert = certify(inst, sol);
    if (!cert.passed) {
      std::ostringstream os;
      os << "certificate failed at p=" << p << ": " << cert.diagnostic;
      throw DomainError(os.str());
    }
    out.report = report_for(p, t, sol);

    if (cross_check && primary == LpForm::Reduced) {
      CrossCheck check{p, solve_certified(build_full(t), p), sol.value};
      if (std::abs(check.full_value - check.reduced_value) > tol) {
        std::ostringstream os;
        os.precision(15);
        os << "full and reduced optima disagree at p=" << p << ": " << check.full_value
           << " vs " << check.reduced_value;
        throw DomainError(os.str());
      }
      out.cross_check = check;
    }
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (!(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max)) {
    throw DomainError("grid must satisfy 0 <= p_min <= p_max <= 1");
  }
  if (steps < 1 || (steps == 1 && p_min != p_max) || (steps > 1 && p_min == p_max)) {
    throw DomainError("grid needs steps >= 2, or steps == 1 with p_min == p_max");
  }
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[i] = steps == 1 ? p_min : p_min + (p_max - p_min) * i / (steps - 1);
  }
  out.back() = p_max;
  return out;
}

SweepForm sweep_form_from_string(const std::string& s) {
  if (s == "full") return SweepForm::Full;
  if (s == "reduced") return SweepForm::Reduced;
  if (s == "both") return SweepForm::Both;
  throw DomainError("unknown sweep form '" + s + "'");
}

TableFamily werner_family() {
  return [](double p) { return werner_correlations(WernerParameter(p)); };
}

TableFamily noisy_family(const CorrelationTable& t) {
  return [t](double p) {
    const WernerParameter checked(p);
    CorrelationTable mixed;
    mixed.source = CorrelationTable::Source::Ingested;
    for (int x = 0; x < kAliceSettings; ++x) {
      for (int y = 0; y < kBobSettings; ++y) {
        mixed.set_block(x, y,
                        checked.value() * t.block(x, y) +
                            Eigen::Matrix2d::Constant((1.0 - checked.value()) / 4.0));
      }
    }
    return mixed;
  };
}

LpForm preferred_form(const CorrelationTable& t) {
  return has_pairwise_symmetry(t) ? LpForm::Reduced : LpForm::Full;
}

SweepResult run_sweep(const SweepOptions& options, const TableFamily& family) {
  const std::vector<double> grid = options.grid.points();
  const std::size_t n = grid.size();

  std::vector<bool> cross(n, options.form == SweepForm::Both);
  if (options.form == SweepForm::Reduced && options.spot_checks > 0) {
    const int k = std::min<int>(options.spot_checks, static_cast<int>(n));
    for (int q = 0; q < k; ++q) {
      const double frac = k == 1 ? 0.5 : static_cast<double>(q) / (k - 1);
      cross[static_cast<std::size_t>(std::lround(frac * (n - 1)))] = true;
    }
  }

  std::vector<PointOutcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      outcomes[i] =
          evaluate_point(grid[i], family, options.form, cross[i], options.cross_check_tol);
    }
  };
  const int jobs = std::clamp(options.jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
  }

  SweepResult result;
  result.grid = options.grid;
  result.provenance = options.provenance;
  for (std::size_t i = 0; i < n; ++i) {
    if (outcomes[i].error) std::rethrow_exception(outcomes[i].error);
    result.records.push_back(outcomes[i].report);
    if (outcomes[i].cross_check) result.cross_checks.push_back(*outcomes[i].cross_check);
  }

  for (std::size_t i = 1; i < n; ++i) {
    const double k0 = result.records[i - 1].k_raw;
    const double k1 = result.records[i].k_raw;
    if ((k0 < 0.0) != (k1 < 0.0)) {
      result.threshold = grid[i - 1] + (grid[i] - grid[i - 1]) * (-k0) / (k1 - k0);
      break;
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = std::string(io::kCsvHeader) + "\n";
  for (const KeyRateReport& r : result.records) {
    r.check_invariants();
    out += io::report_csv_row(r);
    out += '\n';
  }
  return out;
}

io::json sweep_json(const SweepResult& result) {
  io::json records = io::json::array();
  for (const KeyRateReport& r : result.records) {
    r.check_invariants();
    records.push_back(io::report_to_json(r));
  }
  io::json checks = io::json::array();
  for (const CrossCheck& c : result.cross_checks) {
    checks.push_back({{"p", io::round_sig12(c.p)},
                      {"full", io::round_sig12(c.full_value)},
                      {"reduced", io::round_sig12(c.reduced_value)}});
  }
  io::json doc = {
      {"grid", {{"p_min", result.grid.p_min}, {"p_max", result.grid.p_max}, {"steps", result.grid.steps}}},
      {"records", records},
      {"cross_checks", checks},
      {"provenance", result.provenance},
      {"version", result.version},
      {"protocol", {{"q", result.protocol.q}, {"q_prime", result.protocol.q_prime}}}};
  doc["threshold"] = result.threshold ? io::json(io::round_sig12(*result.threshold)) : io::json(nullptr);
  return doc;
}

}  // namespace nsqkd
