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

// Command-line front end: sweeps, single-point solves with certificates,
// threshold search, LP export and correlation-table ingestion.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.
// Log verbosity: NSQKD_LOG=error|warn|info|debug (default warn), on stderr.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nsqkd/errors.hpp"
#include "nsqkd/io.hpp"
#include "nsqkd/keyrate.hpp"
#include "nsqkd/lp_builder.hpp"
#include "nsqkd/lp_solver.hpp"
#include "nsqkd/sweep.hpp"

namespace {

using nsqkd::io::json;

enum class LogLevel { Error = 0, Warn, Info, Debug };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("NSQKD_LOG");
    const std::string v = env ? env : "warn";
    if (v == "error") return LogLevel::Error;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= log_level()) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    nsqkd::io::write_file(out_path, text);
    log(LogLevel::Info, "wrote " + out_path);
  }
}

struct SweepArgs {
  double p_min = 0.0;
  double p_max = 1.0;
  int steps = 101;
  std::string form = "reduced";
  std::string out;
  std::string format = "csv";
  int jobs = 1;
};

struct SolveArgs {
  std::optional<double> p;
  std::string table;
  std::string lp;
  std::string form = "auto";
  std::string out;
};

struct ThresholdArgs {
  double tol = 1e-6;
  std::vector<double> bracket;
  std::string form = "reduced";
  std::string out;
};

struct ExportArgs {
  double p = 1.0;
  std::string table;
  std::string form = "reduced";
  std::string out;
};

struct IngestArgs {
  std::string table;
  std::string run = "solve";
};

void add_sweep_options(CLI::App* cmd, SweepArgs& a) {
  cmd->add_option("--p-min", a.p_min, "Smallest p")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--p-max", a.p_max, "Largest p")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--steps", a.steps, "Number of grid points")->check(CLI::PositiveNumber);
  cmd->add_option("--form", a.form, "LP form")->check(CLI::IsMember({"full", "reduced", "both"}));
  cmd->add_option("--out", a.out, "Output file (stdout if omitted)");
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

void run_sweep_command(const SweepArgs& a, const nsqkd::TableFamily& family,
                       const std::string& provenance) {
  nsqkd::SweepOptions options;
  options.grid = {a.p_min, a.p_max, a.steps};
  options.form = nsqkd::sweep_form_from_string(a.form);
  options.jobs = a.jobs;
  options.provenance = provenance;
  log(LogLevel::Info, "sweeping " + std::to_string(a.steps) + " points with " +
                          std::to_string(a.jobs) + " workers");
  const nsqkd::SweepResult result = nsqkd::run_sweep(options, family);
  for (const auto& c : result.cross_checks) {
    log(LogLevel::Debug, "cross-check p=" + nsqkd::io::format_number(c.p) +
                             " full=" + nsqkd::io::format_number(c.full_value) +
                             " reduced=" + nsqkd::io::format_number(c.reduced_value));
  }
  if (a.format == "csv") {
    emit(nsqkd::sweep_csv(result), a.out);
  } else {
    emit(nsqkd::sweep_json(result).dump(2) + "\n", a.out);
  }
}

nsqkd::LpForm resolve_form(const nsqkd::CorrelationTable& t, const std::string& requested) {
  if (requested == "full") return nsqkd::LpForm::Full;
  const nsqkd::LpForm preferred = nsqkd::preferred_form(t);
  if (requested == "reduced" && preferred != nsqkd::LpForm::Reduced) {
    log(LogLevel::Warn, "table lacks the symmetry needed for the reduced form; using full form");
  }
  return preferred;
}

void require_valid(const nsqkd::CorrelationTable& t) {
  const nsqkd::ValidationReport report = nsqkd::validate_table(t);
  if (!report.passed()) {
    throw nsqkd::DomainError("correlation table rejected: " + report.failures());
  }
}

json solve_table(const nsqkd::CorrelationTable& t, double p, const std::string& form_name) {
  require_valid(t);
  const nsqkd::LpForm form = resolve_form(t, form_name);
  const nsqkd::LpInstance inst = nsqkd::build_instance(t, form);
  const nsqkd::Solution sol = nsqkd::solve(inst);
  if (sol.status != nsqkd::LpStatus::Optimal) {
    throw nsqkd::DomainError(std::string("LP is ") + nsqkd::to_string(sol.status));
  }
  const nsqkd::Certificate cert = nsqkd::certify(inst, sol);
  if (!cert.passed) throw nsqkd::DomainError("certificate failed: " + cert.diagnostic);

  const Eigen::VectorXd full =
      form == nsqkd::LpForm::Reduced ? nsqkd::lift_solution(inst, sol.primal) : sol.primal;
  json distribution = json::array();
  for (int j = 0; j < nsqkd::kFullVars; ++j) {
    const nsqkd::JointIndex idx{static_cast<nsqkd::Block>(j / nsqkd::kOutcomesPerSetting),
                                j % nsqkd::kOutcomesPerSetting};
    distribution.push_back({{"name", idx.name()},
                            {"x", idx.x()},
                            {"y", idx.y()},
                            {"a", idx.a()},
                            {"b", idx.b()},
                            {"e", idx.e()},
                            {"prob", nsqkd::io::round_sig12(full(j))}});
  }
  const nsqkd::KeyRateReport report = nsqkd::report_for(p, t, sol);
  report.check_invariants();

  json out = {{"form", nsqkd::to_string(form)},
              {"P_E", nsqkd::io::round_sig12(sol.value)},
              {"report", nsqkd::io::report_to_json(report)},
              {"distribution", distribution},
              {"solution", nsqkd::io::solution_to_json(sol)},
              {"certificate", nsqkd::io::certificate_to_json(cert)},
              {"certificate_gap", cert.gap}};
  out["p"] = std::isnan(p) ? json(nullptr) : json(nsqkd::io::round_sig12(p));
  return out;
}

json solve_lp_file(const std::string& path) {
  const nsqkd::LpInstance inst = nsqkd::io::parse_lp(nsqkd::io::read_file(path));
  const nsqkd::Solution sol = nsqkd::solve(inst);
  json out = {{"solution", nsqkd::io::solution_to_json(sol)}};
  if (sol.status == nsqkd::LpStatus::Optimal) {
    const nsqkd::Certificate cert = nsqkd::certify(inst, sol);
    out["certificate"] = nsqkd::io::certificate_to_json(cert);
    out["certificate_gap"] = cert.gap;
    if (!cert.passed) throw nsqkd::DomainError("certificate failed: " + cert.diagnostic);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Device-independent key rates for no-signaling QKD via linear programming"};
  app.set_version_flag("--version", NSQKD_VERSION);
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Key rate over a grid of Werner visibilities");
  add_sweep_options(sweep_cmd, sweep);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print its certificate");
  auto* p_opt = solve_cmd->add_option("--p", solve.p, "Werner visibility")->check(CLI::Range(0.0, 1.0));
  auto* table_opt = solve_cmd->add_option("--table", solve.table, "Correlation table JSON");
  auto* lp_opt = solve_cmd->add_option("--lp", solve.lp, "LP instance JSON (export-lp schema)");
  p_opt->excludes(table_opt)->excludes(lp_opt);
  table_opt->excludes(lp_opt);
  solve_cmd->add_option("--form", solve.form, "LP form")
      ->check(CLI::IsMember({"auto", "full", "reduced"}));
  solve_cmd->add_option("--out", solve.out, "Output file (stdout if omitted)");

  ThresholdArgs threshold;
  auto* threshold_cmd = app.add_subcommand("threshold", "Smallest p with a positive key rate");
  threshold_cmd->add_option("--tol", threshold.tol, "Bracket width")->check(CLI::PositiveNumber);
  threshold_cmd->add_option("--bracket", threshold.bracket, "Search interval LO HI")
      ->expected(2)
      ->check(CLI::Range(0.0, 1.0));
  threshold_cmd->add_option("--form", threshold.form, "LP form")
      ->check(CLI::IsMember({"full", "reduced"}));
  threshold_cmd->add_option("--out", threshold.out, "JSON record file");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-lp", "Write the LP instance as JSON");
  auto* export_p = export_cmd->add_option("--p", exp.p, "Werner visibility")->check(CLI::Range(0.0, 1.0));
  export_cmd->add_option("--table", exp.table, "Correlation table JSON")->excludes(export_p);
  export_cmd->add_option("--form", exp.form, "LP form")->check(CLI::IsMember({"full", "reduced"}));
  export_cmd->add_option("--out", exp.out, "Output file (stdout if omitted)");

  IngestArgs ingest;
  SweepArgs ingest_sweep;
  ingest_sweep.form = "reduced";
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate and analyse an external table");
  ingest_cmd->add_option("--table", ingest.table, "Correlation table JSON")->required();
  ingest_cmd->add_option("--run", ingest.run, "Analysis to run")
      ->check(CLI::IsMember({"solve", "sweep"}));
  add_sweep_options(ingest_cmd, ingest_sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sweep_cmd) {
      run_sweep_command(sweep, nsqkd::werner_family(), "werner");
    } else if (*solve_cmd) {
      json out;
      if (!solve.lp.empty()) {
        out = solve_lp_file(solve.lp);
      } else if (!solve.table.empty()) {
        out = solve_table(nsqkd::io::read_table(solve.table), std::nan(""), solve.form);
        out["provenance"] = "ingested:" + solve.table;
      } else if (solve.p) {
        out = solve_table(nsqkd::werner_correlations(nsqkd::WernerParameter(*solve.p)), *solve.p,
                          solve.form);
        out["provenance"] = "werner";
      } else {
        std::cerr << "solve needs one of --p, --table, --lp\n";
        return 2;
      }
      emit(out.dump(2) + "\n", solve.out);
    } else if (*threshold_cmd) {
      nsqkd::Bracket bracket = nsqkd::default_threshold_bracket();
      if (!threshold.bracket.empty()) bracket = {threshold.bracket[0], threshold.bracket[1]};
      const auto result = nsqkd::find_threshold(
          nsqkd::werner_model(nsqkd::lp_form_from_string(threshold.form)), threshold.tol, bracket);
      std::cout << "p* = " << nsqkd::io::format_number(result.p_star) << " in ["
                << nsqkd::io::format_number(result.lower) << ", "
                << nsqkd::io::format_number(result.upper) << "]\n";
      const json record = {{"p_star", result.p_star},
                           {"lower", result.lower},
                           {"upper", result.upper},
                           {"tol", threshold.tol},
                           {"evaluations", result.evaluations},
                           {"form", threshold.form}};
      if (!threshold.out.empty()) nsqkd::io::write_file(threshold.out, record.dump(2) + "\n");
    } else if (*export_cmd) {
      const nsqkd::CorrelationTable t =
          exp.table.empty() ? nsqkd::werner_correlations(nsqkd::WernerParameter(exp.p))
                            : nsqkd::io::read_table(exp.table);
      const nsqkd::LpInstance inst =
          nsqkd::build_instance(t, nsqkd::lp_form_from_string(exp.form));
      emit(nsqkd::io::lp_to_json(inst).dump(2) + "\n", exp.out);
    } else if (*ingest_cmd) {
      const nsqkd::CorrelationTable t = nsqkd::io::read_table(ingest.table);
      require_valid(t);
      log(LogLevel::Info, "table " + ingest.table + " passed validation");
      if (ingest.run == "solve") {
        json out = solve_table(t, std::nan(""), "auto");
        out["provenance"] = "ingested:" + ingest.table;
        emit(out.dump(2) + "\n", ingest_sweep.out);
      } else {
        run_sweep_command(ingest_sweep, nsqkd::noisy_family(t), "ingested:" + ingest.table);
      }
    }
  } catch (const nsqkd::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
