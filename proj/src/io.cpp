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

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "nsqkd/errors.hpp"

namespace nsqkd::io {

namespace {

std::string line_col_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("malformed JSON at " + line_col_of(text, e.byte) + ": " + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + " is missing field '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + " must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + " must be an integer");
  return v.get<int>();
}

Eigen::VectorXd number_array(const json& v, const std::string& where, bool null_is_inf = false) {
  if (!v.is_array()) throw SchemaError(where + " must be an array");
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (null_is_inf && v[i].is_null()) {
      out(i) = std::numeric_limits<double>::infinity();
    } else {
      out(i) = number(v[i], at);
    }
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v, bool inf_as_null = false) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (inf_as_null && std::isinf(v(i))) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(v(i));
    }
  }
  return arr;
}

json rounded_vector(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(round_sig12(v(i)));
  return arr;
}

}  // namespace

double round_sig12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", v);
  return buf.data();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + path.string());
  out << contents;
  if (!out) throw DomainError("failed writing " + path.string());
}

CorrelationTable parse_table(const std::string& text) {
  const json doc = parse_json(text);
  const json& settings = field(doc, "settings", "table");
  if (!settings.is_array()) throw SchemaError("table.settings must be an array");

  CorrelationTable t;
  t.source = CorrelationTable::Source::Ingested;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const std::string where = "settings[" + std::to_string(i) + "]";
    const json& rec = settings[i];
    const int x = integer(field(rec, "x", where), where + ".x");
    const int y = integer(field(rec, "y", where), where + ".y");
    if (x < 0 || x >= kAliceSettings || y < 0 || y >= kBobSettings) {
      throw SchemaError(where + " has setting pair out of range");
    }
    if (t.has(x, y)) {
      throw MalformedTableError(where + " duplicates setting pair (x=" + std::to_string(x) +
                                ",y=" + std::to_string(y) + ")");
    }
    const json& probs = field(rec, "probs", where);
    if (!probs.is_array() || probs.size() != 2) {
      throw SchemaError(where + ".probs must be a 2x2 array");
    }
    Eigen::Matrix2d block;
    for (int a = 0; a < 2; ++a) {
      const std::string row_at = where + ".probs[" + std::to_string(a) + "]";
      if (!probs[a].is_array() || probs[a].size() != 2) {
        throw SchemaError(row_at + " must have two entries");
      }
      for (int b = 0; b < 2; ++b) {
        block(a, b) = number(probs[a][b], row_at + "[" + std::to_string(b) + "]");
      }
    }
    t.set_block(x, y, block);
  }
  for (int x = 0; x < kAliceSettings; ++x) {
    for (int y = 0; y < kBobSettings; ++y) {
      if (!t.has(x, y)) {
        throw MalformedTableError("table is missing setting pair (x=" + std::to_string(x) +
                                  ",y=" + std::to_string(y) + ")");
      }
    }
  }
  return t;
}

CorrelationTable read_table(const std::filesystem::path& path) {
  return parse_table(read_file(path));
}

json table_to_json(const CorrelationTable& t) {
  json settings = json::array();
  for (int x = 0; x < kAliceSettings; ++x) {
    for (int y = 0; y < kBobSettings; ++y) {
      const Eigen::Matrix2d& b = t.block(x, y);
      settings.push_back({{"x", x},
                          {"y", y},
                          {"probs", {{b(0, 0), b(0, 1)}, {b(1, 0), b(1, 1)}}}});
    }
  }
  return {{"settings", settings}};
}

json lp_to_json(const LpInstance& inst) {
  json equalities = json::array();
  for (Eigen::Index i = 0; i < inst.num_equalities(); ++i) {
    equalities.push_back({{"coeffs", vector_json(inst.equalities.row(i).transpose())},
                          {"rhs", inst.rhs(i)}});
  }
  json metadata = {{"form", to_string(inst.form)}};
  metadata["p"] = std::isnan(inst.p) ? json(nullptr) : json(inst.p);
  return {{"num_vars", inst.num_vars()},
          {"var_names", inst.var_names},
          {"objective",
           {{"coeffs", vector_json(inst.objective)}, {"constant", inst.objective_constant}}},
          {"equalities", equalities},
          {"bounds", {{"lower", vector_json(inst.lower)}, {"upper", vector_json(inst.upper, true)}}},
          {"metadata", metadata}};
}

LpInstance lp_from_json(const json& j) {
  LpInstance inst;
  const int n = integer(field(j, "num_vars", "lp"), "lp.num_vars");
  if (n < 0) throw SchemaError("lp.num_vars must be nonnegative");

  const json& objective = field(j, "objective", "lp");
  inst.objective = number_array(field(objective, "coeffs", "lp.objective"), "lp.objective.coeffs");
  inst.objective_constant =
      number(field(objective, "constant", "lp.objective"), "lp.objective.constant");
  if (inst.objective.size() != n) throw SchemaError("lp.objective.coeffs must have num_vars entries");

  const json& eqs = field(j, "equalities", "lp");
  if (!eqs.is_array()) throw SchemaError("lp.equalities must be an array");
  inst.equalities.resize(static_cast<Eigen::Index>(eqs.size()), n);
  inst.rhs.resize(static_cast<Eigen::Index>(eqs.size()));
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const std::string where = "lp.equalities[" + std::to_string(i) + "]";
    const Eigen::VectorXd coeffs = number_array(field(eqs[i], "coeffs", where), where + ".coeffs");
    if (coeffs.size() != n) throw SchemaError(where + ".coeffs must have num_vars entries");
    inst.equalities.row(static_cast<Eigen::Index>(i)) = coeffs.transpose();
    inst.rhs(static_cast<Eigen::Index>(i)) = number(field(eqs[i], "rhs", where), where + ".rhs");
  }

  const json& bounds = field(j, "bounds", "lp");
  inst.lower = number_array(field(bounds, "lower", "lp.bounds"), "lp.bounds.lower");
  inst.upper = number_array(field(bounds, "upper", "lp.bounds"), "lp.bounds.upper", true);
  if (inst.lower.size() != n || inst.upper.size() != n) {
    throw SchemaError("lp.bounds vectors must have num_vars entries");
  }

  if (auto it = j.find("var_names"); it != j.end()) {
    if (!it->is_array() || (!it->empty() && it->size() != static_cast<std::size_t>(n))) {
      throw SchemaError("lp.var_names must list num_vars names");
    }
    for (const auto& name : *it) {
      if (!name.is_string()) throw SchemaError("lp.var_names entries must be strings");
      inst.var_names.push_back(name.get<std::string>());
    }
  }
  if (auto it = j.find("metadata"); it != j.end()) {
    if (auto p = it->find("p"); p != it->end() && !p->is_null()) {
      inst.p = number(*p, "lp.metadata.p");
    }
    if (auto form = it->find("form"); form != it->end()) {
      if (!form->is_string()) throw SchemaError("lp.metadata.form must be a string");
      try {
        inst.form = lp_form_from_string(form->get<std::string>());
      } catch (const DomainError& e) {
        throw SchemaError(std::string("lp.metadata.form: ") + e.what());
      }
    }
  }
  try {
    inst.check_dimensions();
  } catch (const DomainError& e) {
    throw SchemaError(std::string("lp: ") + e.what());
  }
  return inst;
}

LpInstance parse_lp(const std::string& text) { return lp_from_json(parse_json(text)); }

json solution_to_json(const Solution& sol) {
  json basis = json::array();
  for (VarState s : sol.basis) basis.push_back(to_string(s));
  return {{"status", to_string(sol.status)},
          {"value", round_sig12(sol.value)},
          {"primal", rounded_vector(sol.primal)},
          {"dual_eq", rounded_vector(sol.dual_eq)},
          {"reduced_costs", rounded_vector(sol.reduced_costs)},
          {"basis", basis},
          {"iterations", sol.iterations}};
}

json certificate_to_json(const Certificate& cert) {
  return {{"passed", cert.passed},
          {"diagnostic", cert.diagnostic},
          {"bound", round_sig12(cert.bound)},
          {"primal_value", round_sig12(cert.primal_value)},
          {"gap", cert.gap},
          {"dual_residual", cert.dual_residual},
          {"primal_equality_residual", cert.primal_equality_residual},
          {"dual_eq", rounded_vector(cert.dual_eq)},
          {"upper_multipliers", rounded_vector(cert.upper_multipliers)},
          {"lower_multipliers", rounded_vector(cert.lower_multipliers)}};
}

json report_to_json(const KeyRateReport& r) {
  return {{"p", round_sig12(r.p)},
          {"P_E", round_sig12(r.guessing_prob)},
          {"I_AB", round_sig12(r.i_ab)},
          {"I_BE_bound", round_sig12(r.i_be_bound)},
          {"K_raw", round_sig12(r.k_raw)},
          {"K", round_sig12(r.k)}};
}

std::string report_csv_row(const KeyRateReport& r) {
  return format_number(r.p) + "," + format_number(r.guessing_prob) + "," +
         format_number(r.i_ab) + "," + format_number(r.i_be_bound) + "," +
         format_number(r.k_raw) + "," + format_number(r.k);
}

}  // namespace nsqkd::io
