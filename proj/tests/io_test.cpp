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

#include "nsqkd/io.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "nsqkd/errors.hpp"
#include "nsqkd/lp_builder.hpp"

using namespace nsqkd;

namespace {

CorrelationTable werner(double p) { return werner_correlations(WernerParameter(p)); }

void expect_same_instance(const LpInstance& a, const LpInstance& b) {
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.objective_constant, b.objective_constant);
  EXPECT_EQ(a.equalities, b.equalities);
  EXPECT_EQ(a.rhs, b.rhs);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(a.var_names, b.var_names);
  EXPECT_EQ(a.form, b.form);
  EXPECT_EQ(a.p, b.p);
}

}  // namespace

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(io::format_number(0.7928932188134524), "0.792893218813");
  EXPECT_EQ(io::format_number(1.0), "1");
  EXPECT_EQ(io::format_number(0.0), "0");
  EXPECT_EQ(io::round_sig12(0.4142135623730951), 0.414213562373);
}

TEST(TableJson, RoundTrip) {
  const CorrelationTable t = werner(0.95);
  const CorrelationTable back = io::parse_table(io::table_to_json(t).dump());
  EXPECT_EQ(back.source, CorrelationTable::Source::Ingested);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) EXPECT_EQ(back.block(x, y), t.block(x, y));
}

TEST(TableJson, DuplicatePairRejected) {
  io::json doc = io::table_to_json(werner(0.5));
  doc["settings"][3] = doc["settings"][0];
  EXPECT_THROW(io::parse_table(doc.dump()), MalformedTableError);
}

TEST(TableJson, MissingPairRejected) {
  io::json doc = io::table_to_json(werner(0.5));
  doc["settings"].erase(5);
  try {
    io::parse_table(doc.dump());
    FAIL() << "expected MalformedTableError";
  } catch (const MalformedTableError& e) {
    EXPECT_NE(std::string(e.what()).find("(x=2,y=1)"), std::string::npos);
  }
}

TEST(TableJson, FieldDiagnostics) {
  io::json doc = io::table_to_json(werner(0.5));
  doc["settings"][2]["probs"][1] = {0.25};
  try {
    io::parse_table(doc.dump());
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("settings[2].probs[1]"), std::string::npos);
  }

  doc = io::table_to_json(werner(0.5));
  doc["settings"][4]["probs"][0][1] = "half";
  EXPECT_THROW(io::parse_table(doc.dump()), SchemaError);

  doc = io::table_to_json(werner(0.5));
  doc["settings"][0].erase("y");
  EXPECT_THROW(io::parse_table(doc.dump()), SchemaError);
}

TEST(TableJson, MalformedJsonReportsLine) {
  try {
    io::parse_table("{\n  \"settings\": [\n    {\"x\": 0,, }\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(LpJson, ExportShapeAtOne) {
  const io::json doc = io::lp_to_json(build_reduced(werner(1.0)));
  EXPECT_EQ(doc["num_vars"], 24);
  EXPECT_EQ(doc["equalities"].size(), 14u);
  EXPECT_EQ(doc["var_names"][0], "x_0");
  EXPECT_EQ(doc["metadata"]["form"], "reduced");
  EXPECT_EQ(doc["metadata"]["p"], 1.0);
  EXPECT_EQ(doc["objective"]["constant"], 0.5);
}

TEST(LpJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double p = unit(rng);
    for (LpForm form : {LpForm::Full, LpForm::Reduced}) {
      const LpInstance inst = build_instance(werner(p), form);
      expect_same_instance(inst, io::parse_lp(io::lp_to_json(inst).dump(2)));
    }
  }
}

TEST(LpJson, InfiniteUpperBoundAsNull) {
  LpInstance lp;
  lp.objective = Eigen::VectorXd::Ones(1);
  lp.equalities.resize(0, 1);
  lp.rhs.resize(0);
  lp.lower = Eigen::VectorXd::Zero(1);
  lp.upper = Eigen::VectorXd::Constant(1, std::numeric_limits<double>::infinity());
  const io::json doc = io::lp_to_json(lp);
  EXPECT_TRUE(doc["bounds"]["upper"][0].is_null());
  EXPECT_TRUE(doc["metadata"]["p"].is_null());
  const LpInstance back = io::lp_from_json(doc);
  EXPECT_TRUE(std::isinf(back.upper(0)));
  EXPECT_TRUE(std::isnan(back.p));
}

TEST(LpJson, SchemaViolations) {
  io::json doc = io::lp_to_json(build_reduced(werner(0.9)));
  doc["equalities"][3]["coeffs"].erase(0);
  try {
    io::lp_from_json(doc);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("lp.equalities[3].coeffs"), std::string::npos);
  }
  doc = io::lp_to_json(build_reduced(werner(0.9)));
  doc["metadata"]["form"] = "sparse";
  EXPECT_THROW(io::lp_from_json(doc), SchemaError);
  doc = io::lp_to_json(build_reduced(werner(0.9)));
  doc["bounds"]["lower"][0] = 2.0;
  EXPECT_THROW(io::lp_from_json(doc), SchemaError);
}

TEST(SolutionJson, Schema) {
  Solution sol;
  sol.status = LpStatus::Optimal;
  sol.value = 0.5;
  sol.primal = Eigen::Vector2d(0.25, 0.25);
  sol.dual_eq = Eigen::VectorXd::Ones(1);
  sol.reduced_costs = Eigen::Vector2d::Zero();
  sol.basis = {VarState::Basic, VarState::AtUpper};
  sol.iterations = 3;
  const io::json doc = io::solution_to_json(sol);
  for (const char* key :
       {"status", "value", "primal", "dual_eq", "reduced_costs", "basis", "iterations"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["status"], "optimal");
  EXPECT_EQ(doc["basis"][1], "at-upper");
}

TEST(ReportCsv, RowFormat) {
  KeyRateReport r{1.0, 0.7928932188134524, 1.0, 0.5857864376269049, 0.4142135623730951,
                  0.4142135623730951};
  EXPECT_EQ(io::report_csv_row(r), "1,0.792893218813,1,0.585786437627,0.414213562373,0.414213562373");
}
