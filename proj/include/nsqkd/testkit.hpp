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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nsqkd/keyrate.hpp"
#include "nsqkd/linear_program.hpp"
#include "nsqkd/protocol_model.hpp"

namespace nsqkd::testkit {

/// Vertices of the feasible set found by maximizing random directions. The
/// first vertex is always the optimum of the instance's own objective.
std::vector<Eigen::VectorXd> solver_vertices(const LpInstance& inst, int count,
                                             std::uint64_t seed);

/// n random convex combinations of uniform_point(inst) and a handful of
/// solver vertices. Every point is feasible up to round-off. Throws
/// DomainError if the instance is infeasible.
std::vector<Eigen::VectorXd> sample_feasible(const LpInstance& inst, int n, std::uint64_t seed);

/// Uniform Bob marginal, Eve's outcome drawn from a random conditional
/// distribution over m outcomes for each of Bob's bits. Deterministic per seed.
BobEveJoint random_bob_eve_joint(int m, std::uint64_t seed);

/// Eve holds an exact copy of Bob's bit.
BobEveJoint perfect_copy_joint();

/// Werner table at p with `delta` moved inside P(.|0,0) so that Alice's
/// marginal for a = 0 changes by delta while normalization is kept.
CorrelationTable signaling_table(double p, double delta);

/// Werner table at p with block (x, y) scaled to sum to `total`.
CorrelationTable unnormalized_table(double p, int x, int y, double total);

struct GoldenFixture {
  std::string name;
  // What is compared: P_E, I_AB, I_BE_bound, K, K_raw, threshold, or a
  // table entry written as P(a,b|x,y), e.g. "P(0,0|1,0)".
  std::string quantity;
  double p = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string anchor;  // short quoted formula or number the value comes from
};

std::vector<GoldenFixture> load_fixtures(const std::filesystem::path& path);

}  // namespace nsqkd::testkit
