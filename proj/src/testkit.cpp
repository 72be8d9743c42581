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

#include "nsqkd/testkit.hpp"

#include <random>

#include "nsqkd/errors.hpp"
#include "nsqkd/io.hpp"
#include "nsqkd/lp_builder.hpp"
#include "nsqkd/lp_solver.hpp"

namespace nsqkd::testkit {

std::vector<Eigen::VectorXd> solver_vertices(const LpInstance& inst, int count,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Eigen::VectorXd> vertices;
  LpInstance probe = inst;
  for (int k = 0; k < count; ++k) {
    if (k > 0) {
      for (Eigen::Index j = 0; j < probe.num_vars(); ++j) probe.objective(j) = gauss(rng);
    }
    const Solution sol = solve(probe);
    if (sol.status == LpStatus::Infeasible) throw DomainError("instance is infeasible");
    if (sol.status != LpStatus::Optimal) continue;
    vertices.push_back(sol.primal);
  }
  return vertices;
}

std::vector<Eigen::VectorXd> sample_feasible(const LpInstance& inst, int n, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> anchors = solver_vertices(inst, 6, seed);
  anchors.push_back(uniform_point(inst));

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Eigen::VectorXd> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd weights(anchors.size());
    for (Eigen::Index k = 0; k < weights.size(); ++k) weights(k) = expo(rng);
    weights /= weights.sum();
    Eigen::VectorXd point = Eigen::VectorXd::Zero(inst.num_vars());
    for (std::size_t k = 0; k < anchors.size(); ++k) point += weights(k) * anchors[k];
    points.push_back(std::move(point));
  }
  return points;
}

BobEveJoint random_bob_eve_joint(int m, std::uint64_t seed) {
  if (m < 1) throw DomainError("Eve needs at least one outcome");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> sparsity(0.0, 1.0);
  BobEveJoint joint(2, m);
  for (int i = 0; i < 2; ++i) {
    // Occasionally zero out outcomes so that deterministic columns appear.
    for (int j = 0; j < m; ++j) joint(i, j) = sparsity(rng) < 0.15 ? 0.0 : expo(rng);
    if (joint.row(i).sum() == 0.0) joint(i, 0) = 1.0;
    joint.row(i) *= 0.5 / joint.row(i).sum();
  }
  return joint;
}

BobEveJoint perfect_copy_joint() {
  BobEveJoint joint(2, 2);
  joint << 0.5, 0.0,
           0.0, 0.5;
  return joint;
}

CorrelationTable signaling_table(double p, double delta) {
  CorrelationTable t = werner_correlations(WernerParameter(p));
  Eigen::Matrix2d block = t.block(0, 0);
  // Move mass from a=1 to a=0 keeping the sum at one.
  block(0, 0) += delta;
  block(1, 1) -= delta;
  t.set_block(0, 0, block);
  t.source = CorrelationTable::Source::Ingested;
  return t;
}

CorrelationTable unnormalized_table(double p, int x, int y, double total) {
  CorrelationTable t = werner_correlations(WernerParameter(p));
  t.set_block(x, y, t.block(x, y) * total);
  t.source = CorrelationTable::Source::Ingested;
  return t;
}

std::vector<GoldenFixture> load_fixtures(const std::filesystem::path& path) {
  const io::json doc = io::json::parse(io::read_file(path));
  std::vector<GoldenFixture> out;
  for (const auto& rec : doc) {
    GoldenFixture f;
    f.name = rec.at("name").get<std::string>();
    f.quantity = rec.at("quantity").get<std::string>();
    f.p = rec.at("p").get<double>();
    f.expected = rec.at("expected").get<double>();
    f.tolerance = rec.at("tolerance").get<double>();
    f.anchor = rec.at("anchor").get<std::string>();
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace nsqkd::testkit
