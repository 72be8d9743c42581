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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "nsqkd/keyrate.hpp"
#include "nsqkd/linear_program.hpp"
#include "nsqkd/lp_solver.hpp"
#include "nsqkd/protocol_model.hpp"

namespace nsqkd::io {

using json = nlohmann::json;

/// Rounds to 12 significant digits, the precision of every report file.
double round_sig12(double v);
/// Formats with 12 significant digits.
std::string format_number(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// Correlation table schema:
//   {"settings": [{"x": 0, "y": 0, "probs": [[P00, P01], [P10, P11]]}, ... 6 records]}
// Duplicate or missing (x, y) pairs are rejected with MalformedTableError.
// Other schema problems raise SchemaError naming the offending field.
CorrelationTable parse_table(const std::string& text);
CorrelationTable read_table(const std::filesystem::path& path);
json table_to_json(const CorrelationTable& t);

// LP schema (var_names may be empty):
//   {"num_vars", "var_names", "objective": {"coeffs", "constant"},
//    "equalities": [{"coeffs", "rhs"}], "bounds": {"lower", "upper"},
//    "metadata": {"p", "form"}}
// Numbers are written with shortest round-trip precision, so an exported
// instance re-imports bit for bit. Infinite upper bounds are written as null.
json lp_to_json(const LpInstance& inst);
LpInstance lp_from_json(const json& j);
LpInstance parse_lp(const std::string& text);

// Solution dump: {status, value, primal, dual_eq, reduced_costs, basis, iterations}.
json solution_to_json(const Solution& sol);
json certificate_to_json(const Certificate& cert);
json report_to_json(const KeyRateReport& r);

inline constexpr const char* kCsvHeader = "p,P_E,I_AB,I_BE_bound,K_raw,K";
std::string report_csv_row(const KeyRateReport& r);

}  // namespace nsqkd::io
