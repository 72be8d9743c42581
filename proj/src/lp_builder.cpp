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

#include "nsqkd/lp_builder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "nsqkd/errors.hpp"

namespace nsqkd {

namespace {

constexpr std::array<Block, kSettingPairs> kBlocks = {Block::X, Block::Y, Block::Z,
                                                       Block::U, Block::V, Block::W};

// Accumulates equality rows over a fixed number of columns.
class RowSet {
 public:
  explicit RowSet(int cols) : cols_(cols) {}

  void add(std::string name, const std::vector<std::pair<int, double>>& terms, double rhs) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(cols_);
    for (const auto& [col, coeff] : terms) row(col) += coeff;
    rows_.push_back(std::move(row));
    rhs_.push_back(rhs);
    names_.push_back(std::move(name));
  }

  void append(const RowSet& other) {
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
    rhs_.insert(rhs_.end(), other.rhs_.begin(), other.rhs_.end());
    names_.insert(names_.end(), other.names_.begin(), other.names_.end());
  }

  Eigen::MatrixXd matrix() const {
    Eigen::MatrixXd m(rows_.size(), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) m.row(i) = rows_[i];
    return m;
  }

  // Rows with the right-hand side appended as the last column.
  Eigen::MatrixXd augmented() const {
    Eigen::MatrixXd m(rows_.size(), cols_ + 1);
    m.leftCols(cols_) = matrix();
    for (std::size_t i = 0; i < rows_.size(); ++i) m(i, cols_) = rhs_[i];
    return m;
  }

  Eigen::VectorXd rhs() const { return Eigen::Map<const Eigen::VectorXd>(rhs_.data(), rhs_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return rows_.size(); }

 private:
  int cols_;
  std::vector<Eigen::RowVectorXd> rows_;
  std::vector<double> rhs_;
  std::vector<std::string> names_;
};

int full_col(int x, int y, int a, int b, int e) {
  return JointIndex::from_settings(x, y, a, b, e).full_column();
}

std::string settings_label(int x, int y) {
  std::ostringstream os;
  os << "x=" << x << ",y=" << y;
  return os.str();
}

void require_valid(const CorrelationTable& t) {
  const ValidationReport report = validate_table(t);
  if (!report.passed()) throw DomainError("invalid correlation table: " + report.failures());
}

// Sum_e P(a,b,e|x,y) = t(a,b|x,y) for all 24 (x,y,a,b).
RowSet marginal_rows(const CorrelationTable& t) {
  RowSet rows(kFullVars);
  for (int x = 0; x < kAliceSettings; ++x) {
    for (int y = 0; y < kBobSettings; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          std::ostringstream name;
          name << "marginal P(" << a << "," << b << "|" << x << "," << y << ")";
          rows.add(name.str(), {{full_col(x, y, a, b, 0), 1.0}, {full_col(x, y, a, b, 1), 1.0}},
                   t(x, y, a, b));
        }
      }
    }
  }
  return rows;
}

// Alice-Eve marginal independent of y, for the given Eve outcomes.
RowSet alice_eve_rows(std::initializer_list<int> eve_outcomes) {
  RowSet rows(kFullVars);
  for (int e : eve_outcomes) {
    for (int a = 0; a < 2; ++a) {
      for (int x = 0; x < kAliceSettings; ++x) {
        std::ostringstream name;
        name << "alice-eve a=" << a << ",e=" << e << ",x=" << x;
        std::vector<std::pair<int, double>> terms;
        for (int b = 0; b < 2; ++b) {
          terms.emplace_back(full_col(x, 0, a, b, e), 1.0);
          terms.emplace_back(full_col(x, 1, a, b, e), -1.0);
        }
        rows.add(name.str(), terms, 0.0);
      }
    }
  }
  return rows;
}

// Bob-Eve marginal independent of x, as a chain over the listed pairs of
// Alice settings. The reduced form uses the chain x,z,v for y=0 and y,u,w
// for y=1 in block letters; both are (0,1),(1,2) in x.
RowSet bob_eve_rows(std::initializer_list<int> eve_outcomes) {
  RowSet rows(kFullVars);
  for (int e : eve_outcomes) {
    for (int b = 0; b < 2; ++b) {
      for (int y = 0; y < kBobSettings; ++y) {
        for (int x = 0; x + 1 < kAliceSettings; ++x) {
          std::ostringstream name;
          name << "bob-eve b=" << b << ",e=" << e << ",y=" << y << ",x=" << x << "~" << x + 1;
          std::vector<std::pair<int, double>> terms;
          for (int a = 0; a < 2; ++a) {
            terms.emplace_back(full_col(x, y, a, b, e), 1.0);
            terms.emplace_back(full_col(x + 1, y, a, b, e), -1.0);
          }
          rows.add(name.str(), terms, 0.0);
        }
      }
    }
  }
  return rows;
}

std::vector<std::string> full_names() {
  std::vector<std::string> names;
  for (Block block : kBlocks) {
    for (int o = 0; o < kOutcomesPerSetting; ++o) names.push_back(JointIndex{block, o}.name());
  }
  return names;
}

}  // namespace

std::string to_string(LpForm form) {
  switch (form) {
    case LpForm::Full: return "full";
    case LpForm::Reduced: return "reduced";
    case LpForm::Generic: return "generic";
  }
  return "generic";
}

LpForm lp_form_from_string(const std::string& s) {
  if (s == "full") return LpForm::Full;
  if (s == "reduced") return LpForm::Reduced;
  if (s == "generic") return LpForm::Generic;
  throw DomainError("unknown LP form '" + s + "'");
}

char block_letter(Block block) { return "xyzuvw"[static_cast<int>(block)]; }

JointIndex JointIndex::from_settings(int x, int y, int a, int b, int e) {
  if (x < 0 || x >= kAliceSettings || y < 0 || y >= kBobSettings ||
      (a | b | e) & ~1) {
    throw DomainError("joint index out of range");
  }
  return {kBlocks[setting_index(x, y)], 4 * a + 2 * b + e};
}

int JointIndex::x() const { return static_cast<int>(block) / kBobSettings; }
int JointIndex::y() const { return static_cast<int>(block) % kBobSettings; }

int JointIndex::reduced_column() const {
  if (e() != 0) throw DomainError("odd outcome " + name() + " has no reduced column");
  return static_cast<int>(block) * (kOutcomesPerSetting / 2) + outcome / 2;
}

std::string JointIndex::name() const {
  return std::string(1, block_letter(block)) + "_" + std::to_string(outcome);
}

LpInstance build_full(const CorrelationTable& t) {
  require_valid(t);
  RowSet rows = marginal_rows(t);
  rows.append(alice_eve_rows({0, 1}));
  rows.append(bob_eve_rows({0, 1}));

  LpInstance inst;
  inst.form = LpForm::Full;
  inst.equalities = rows.matrix();
  inst.rhs = rows.rhs();
  inst.row_names = rows.names();
  inst.lower = Eigen::VectorXd::Zero(kFullVars);
  inst.upper = Eigen::VectorXd::Ones(kFullVars);
  inst.var_names = full_names();

  // R(0,0) + R(1,1) = x_0 + x_4 + x_3 + x_7
  inst.objective = Eigen::VectorXd::Zero(kFullVars);
  for (int a = 0; a < 2; ++a) {
    inst.objective(full_col(0, 0, a, 0, 0)) = 1.0;
    inst.objective(full_col(0, 0, a, 1, 1)) = 1.0;
  }
  inst.objective_constant = 0.0;

  if (t.source == CorrelationTable::Source::WernerModel) {
    // Recover p from the (0,0) block: P(0,0) - P(0,1) = p/2.
    inst.p = 2.0 * (t(0, 0, 0, 0) - t(0, 0, 0, 1));
  }
  inst.source = t;
  return inst;
}

LpInstance build_reduced(const CorrelationTable& t) {
  require_valid(t);
  if (!has_pairwise_symmetry(t)) {
    throw ReductionInapplicableError(
        "reduction inapplicable: table lacks P(0,0)=P(1,1), P(0,1)=P(1,0) symmetry; "
        "use the full form");
  }

  auto col = [](Block block, int outcome) { return JointIndex{block, outcome}.reduced_column(); };

  RowSet rows(kReducedVars);
  // Alice-Eve no-signaling for a = 0, 1 at e = 0 (outcomes i, i+2 with i = 0, 4).
  const std::array<std::pair<Block, Block>, 3> alice_pairs = {
      {{Block::X, Block::Y}, {Block::Z, Block::U}, {Block::V, Block::W}}};
  for (int i : {0, 4}) {
    for (const auto& [lhs, rhs] : alice_pairs) {
      std::ostringstream name;
      name << block_letter(lhs) << "_" << i << "+" << block_letter(lhs) << "_" << i + 2 << " = "
           << block_letter(rhs) << "_" << i << "+" << block_letter(rhs) << "_" << i + 2;
      rows.add(name.str(),
               {{col(lhs, i), 1.0}, {col(lhs, i + 2), 1.0}, {col(rhs, i), -1.0},
                {col(rhs, i + 2), -1.0}},
               0.0);
    }
  }
  // Bob-Eve no-signaling for b = 0, 1 at e = 0 (outcomes j, j+4 with j = 0, 2).
  const std::array<std::pair<Block, Block>, 4> bob_pairs = {{{Block::X, Block::Z},
                                                             {Block::Z, Block::V},
                                                             {Block::Y, Block::U},
                                                             {Block::U, Block::W}}};
  for (int j : {0, 2}) {
    for (const auto& [lhs, rhs] : bob_pairs) {
      std::ostringstream name;
      name << block_letter(lhs) << "_" << j << "+" << block_letter(lhs) << "_" << j + 4 << " = "
           << block_letter(rhs) << "_" << j << "+" << block_letter(rhs) << "_" << j + 4;
      rows.add(name.str(),
               {{col(lhs, j), 1.0}, {col(lhs, j + 4), 1.0}, {col(rhs, j), -1.0},
                {col(rhs, j + 4), -1.0}},
               0.0);
    }
  }

  LpInstance inst;
  inst.form = LpForm::Reduced;
  inst.equalities = rows.matrix();
  inst.rhs = rows.rhs();
  inst.row_names = rows.names();
  inst.lower = Eigen::VectorXd::Zero(kReducedVars);
  inst.upper.resize(kReducedVars);
  for (Block block : kBlocks) {
    for (int o = 0; o < kOutcomesPerSetting; o += 2) {
      const JointIndex idx{block, o};
      inst.upper(idx.reduced_column()) = t(idx.x(), idx.y(), idx.a(), idx.b());
      inst.var_names.push_back(idx.name());
    }
  }

  inst.objective = Eigen::VectorXd::Zero(kReducedVars);
  inst.objective(col(Block::X, 0)) = 1.0;
  inst.objective(col(Block::X, 4)) = 1.0;
  inst.objective(col(Block::X, 2)) = -1.0;
  inst.objective(col(Block::X, 6)) = -1.0;
  inst.objective_constant = t(0, 0, 0, 1) + t(0, 0, 1, 1);

  if (t.source == CorrelationTable::Source::WernerModel) {
    inst.p = 2.0 * (t(0, 0, 0, 0) - t(0, 0, 0, 1));
  }
  inst.source = t;
  return inst;
}

LpInstance build_instance(const CorrelationTable& t, LpForm form) {
  switch (form) {
    case LpForm::Full: return build_full(t);
    case LpForm::Reduced: return build_reduced(t);
    case LpForm::Generic: break;
  }
  throw DomainError("only full and reduced instances can be built from a table");
}

Eigen::Matrix2d bob_eve_marginal(const Eigen::VectorXd& full_point) {
  if (full_point.size() != kFullVars) throw DomainError("expected a 48-entry point");
  Eigen::Matrix2d r = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int e = 0; e < 2; ++e) r(b, e) += full_point(full_col(0, 0, a, b, e));
    }
  }
  return r;
}

double guessing_probability(const Eigen::VectorXd& full_point) {
  const Eigen::Matrix2d r = bob_eve_marginal(full_point);
  return r(0, 0) + r(1, 1);
}

Eigen::VectorXd lift_solution(const LpInstance& reduced, const Eigen::VectorXd& reduced_point) {
  if (reduced.form != LpForm::Reduced || reduced_point.size() != kReducedVars) {
    throw DomainError("lift_solution expects a point of a reduced instance");
  }
  Eigen::VectorXd full(kFullVars);
  for (Block block : kBlocks) {
    for (int o = 0; o < kOutcomesPerSetting; o += 2) {
      const JointIndex even{block, o};
      const int rc = even.reduced_column();
      // The upper bound of an even variable is the pair total t(a,b|x,y).
      const double odd = reduced.upper(rc) - reduced_point(rc);
      if (odd < -1e-9) {
        throw DomainError("lifted probability " + JointIndex{block, o + 1}.name() +
                          " is negative; reduced point is infeasible");
      }
      full(even.full_column()) = reduced_point(rc);
      full(even.full_column() + 1) = odd;
    }
  }
  return full;
}

Eigen::VectorXd uniform_point(const LpInstance& inst) {
  if (!inst.source) throw DomainError("uniform_point needs the source correlation table");
  const CorrelationTable& t = *inst.source;
  const Eigen::Index n = inst.form == LpForm::Reduced ? kReducedVars : kFullVars;
  if (inst.form == LpForm::Generic || inst.num_vars() != n) {
    throw DomainError("uniform_point needs a full or reduced instance");
  }
  Eigen::VectorXd point(n);
  for (Block block : kBlocks) {
    for (int o = 0; o < kOutcomesPerSetting; ++o) {
      const JointIndex idx{block, o};
      const double half = t(idx.x(), idx.y(), idx.a(), idx.b()) / 2.0;
      if (inst.form == LpForm::Full) {
        point(idx.full_column()) = half;
      } else if (idx.e() == 0) {
        point(idx.reduced_column()) = half;
      }
    }
  }
  return point;
}

bool RedundancyReport::all_certified() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.certified; });
}

double RedundancyReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.residual);
  return worst;
}

RedundancyReport verify_redundancies(const CorrelationTable& t, double tol) {
  require_valid(t);

  RowSet retained = marginal_rows(t);
  retained.append(alice_eve_rows({0}));
  retained.append(bob_eve_rows({0}));

  RowSet normalization(kFullVars);
  RowSet eve_marginal(kFullVars);
  for (int x = 0; x < kAliceSettings; ++x) {
    for (int y = 0; y < kBobSettings; ++y) {
      std::vector<std::pair<int, double>> terms;
      for (int o = 0; o < kOutcomesPerSetting; ++o) {
        terms.emplace_back(JointIndex{kBlocks[setting_index(x, y)], o}.full_column(), 1.0);
      }
      normalization.add("normalization " + settings_label(x, y), terms, 1.0);

      if (x == 0 && y == 0) continue;
      for (int e = 0; e < 2; ++e) {
        std::vector<std::pair<int, double>> eve;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            eve.emplace_back(full_col(x, y, a, b, e), 1.0);
            eve.emplace_back(full_col(0, 0, a, b, e), -1.0);
          }
        }
        eve_marginal.add("eve-marginal e=" + std::to_string(e) + " " + settings_label(x, y), eve,
                         0.0);
      }
    }
  }
  const RowSet alice_odd = alice_eve_rows({1});
  const RowSet bob_odd = bob_eve_rows({1});

  const Eigen::MatrixXd basis = retained.augmented().transpose();
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(basis);

  RedundancyReport report;
  report.retained_rows = static_cast<Eigen::Index>(retained.size());
  report.retained_rank = cod.rank();

  auto certify_family = [&](const RowSet& family, const std::string& label) {
    const Eigen::MatrixXd rows = family.augmented();
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const Eigen::VectorXd target = rows.row(i).transpose();
      const Eigen::VectorXd coeffs = cod.solve(target);
      RowCertification cert;
      cert.name = family.names()[i];
      cert.family = label;
      cert.residual = (basis * coeffs - target).norm();
      cert.certified = cert.residual <= tol;
      report.rows.push_back(std::move(cert));
    }
  };
  certify_family(normalization, "normalization");
  certify_family(eve_marginal, "eve-marginal");
  certify_family(alice_odd, "alice-eve i=1,5");
  certify_family(bob_odd, "bob-eve j=1,3");
  return report;
}

}  // namespace nsqkd
