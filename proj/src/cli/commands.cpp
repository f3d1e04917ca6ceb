#include "toto/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "toto/analytic_solver.hpp"
#include "toto/cli/report.hpp"
#include "toto/errors.hpp"
#include "toto/oracle.hpp"
#include "toto/parallel.hpp"
#include "toto/trajectory.hpp"

namespace toto::cli {

double GridRange::at(int i) const {
  if (steps <= 1) return first;
  return first + (last - first) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

GridRange parse_range(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("range must look like a:b:steps, got '" + text + "'");
  GridRange r;
  std::size_t used = 0;
  try {
    const std::string a = text.substr(0, c1), b = text.substr(c1 + 1, c2 - c1 - 1), n = text.substr(c2 + 1);
    r.first = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument("trailing characters");
    r.last = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument("trailing characters");
    r.steps = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("range must look like a:b:steps, got '" + text + "'");
  }
  if (r.steps < 1) throw std::invalid_argument("range needs at least one step, got '" + text + "'");
  return r;
}

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct ProblemArgs {
  double gamma = kUnset, u1 = kUnset, u2 = kUnset;
  double omega0 = kUnset, omegaf = kUnset, omega1 = kUnset, omega2 = kUnset;
  bool seconds = false;
  int n_max = SolverConfig{}.n_max;

  void attach(CLI::App* app) {
    app->add_option("--gamma", gamma, "Target ratio sqrt(omega0/omegaf); sqrt(3) is 1.7320508");
    app->add_option("--u1", u1, "Lower control bound (omega1/omega0)^2");
    app->add_option("--u2", u2, "Upper control bound (omega2/omega0)^2");
    app->add_option("--omega0", omega0, "Initial angular frequency [rad/s]");
    app->add_option("--omegaf", omegaf, "Final angular frequency [rad/s]");
    app->add_option("--omega1", omega1, "Lower frequency bound [rad/s]");
    app->add_option("--omega2", omega2, "Upper frequency bound [rad/s]");
    app->add_flag("--seconds", seconds, "Report times in seconds (physical input only)");
    app->add_option("--nmax", n_max, "Largest turn count to enumerate")->check(CLI::NonNegativeNumber);
  }

  bool physical() const {
    return !std::isnan(omega0) || !std::isnan(omegaf) || !std::isnan(omega1) || !std::isnan(omega2);
  }

  /// Throws InvalidProblem for missing, mixed or out-of-order inputs.
  ProblemSpec resolve(double& time_scale) const {
    const bool scaled = !std::isnan(gamma) || !std::isnan(u1) || !std::isnan(u2);
    if (scaled && physical()) throw InvalidProblem("give either --gamma/--u1/--u2 or the --omega* set, not both");
    time_scale = 1.0;
    if (physical()) {
      if (std::isnan(omega0) || std::isnan(omegaf) || std::isnan(omega1) || std::isnan(omega2))
        throw InvalidProblem("--omega0, --omegaf, --omega1 and --omega2 are all required");
      const ProblemSpec spec = scale_problem({omega0, omegaf, omega1, omega2});
      if (seconds) time_scale = omega0;
      return spec;
    }
    if (std::isnan(gamma) || std::isnan(u1) || std::isnan(u2))
      throw InvalidProblem("--gamma, --u1 and --u2 are all required");
    if (seconds) throw InvalidProblem("--seconds needs physical (--omega*) input");
    return make_problem(gamma, u1, u2);
  }

  SolverConfig solver_config() const {
    SolverConfig cfg;
    cfg.n_max = n_max;
    return cfg;
  }
};

void warn_if_at_n_max(const OptimalProtocol& opt, int n_max, std::ostream& err) {
  if (opt.at_n_max)
    err << "warning: the minimum occurs at the largest enumerated turn count n=" << n_max
        << "; rerun with a larger --nmax to rule out faster extremals\n";
}

int cmd_solve(const ProblemArgs& pa, bool json, bool oracle, int oracle_restarts, std::ostream& out,
              std::ostream& err) {
  double scale = 1.0;
  const ProblemSpec spec = pa.resolve(scale);
  SolveReport report = build_solve_report(spec, pa.solver_config());
  report.time_scale = scale;
  report.seconds = scale != 1.0 || pa.seconds;
  warn_if_at_n_max(report.optimal, pa.n_max, err);

  if (oracle) {
    OracleConfig ocfg;
    ocfg.restarts = oracle_restarts;
    ocfg.max_switchings = std::max(ocfg.max_switchings, report.optimal.solution.switch_count());
    report.oracle = confirm_minimum(spec, report.optimal.solution, ocfg);
  }

  if (json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    out << render_text(report);
  }

  if (!report.validation.passed) {
    err << "error: optimal protocol failed validation: " << report.validation.failure << "\n";
    return kExitValidation;
  }
  if (report.oracle && !report.oracle->passed) {
    err << "error: brute-force search "
        << (report.oracle->falsified ? "found a faster protocol" : "could not reproduce the optimal durations")
        << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_table(int n_max, double tolerance, bool compare, std::ostream& out) {
  SolverConfig cfg;
  cfg.n_max = n_max;
  const TableGrid grid = build_reference_table(cfg);
  out << render_table(grid);
  if (!compare) return kExitOk;

  const TableComparison cmp = compare_with_reference(grid, tolerance);
  for (const std::string& m : cmp.mismatches) out << "mismatch: " << m << "\n";
  out << "max deviation: " << format_sig(cmp.max_deviation) << " (tolerance " << format_sig(tolerance) << ")\n";
  out << (cmp.passed ? "regression: pass\n" : "regression: FAIL\n");
  return cmp.passed ? kExitOk : kExitRegression;
}

int cmd_simulate(const ProblemArgs& pa, std::size_t samples, const std::string& path, std::ostream& out,
                 std::ostream& err) {
  double scale = 1.0;
  const ProblemSpec spec = pa.resolve(scale);
  const OptimalProtocol opt = optimal_protocol(spec, pa.solver_config());
  warn_if_at_n_max(opt, pa.n_max, err);

  Trajectory traj = simulate_protocol({1.0, 0.0}, opt.protocol, samples);
  if (scale != 1.0)
    for (TrajectorySample& s : traj.samples) s.t /= scale;

  if (path.empty() || path == "-") {
    write_trajectory_csv(out, traj);
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kExitIo;
  }
  write_trajectory_csv(file, traj);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& gamma_text, const std::string& u2_text, double u1, int n_max,
              const std::string& path, std::ostream& out, std::ostream& err) {
  GridRange gammas, u2s;
  try {
    gammas = parse_range(gamma_text);
    u2s = parse_range(u2_text);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  SolverConfig cfg;
  cfg.n_max = n_max;

  const std::size_t count = static_cast<std::size_t>(gammas.steps) * static_cast<std::size_t>(u2s.steps);
  std::vector<std::string> rows(count);
  parallel_for(count, [&](std::size_t idx) {
    const double g = gammas.at(static_cast<int>(idx / static_cast<std::size_t>(u2s.steps)));
    const double u2 = u2s.at(static_cast<int>(idx % static_cast<std::size_t>(u2s.steps)));
    std::string row = format_sig(g) + "," + format_sig(u2) + ",";
    const ProblemSpec spec{g, u1, u2};
    if (!is_valid(spec)) {
      rows[idx] = row + ",,,,,invalid\n";
      return;
    }
    try {
      const OptimalProtocol opt = optimal_protocol(spec, cfg);
      const ExtremalSolution& s = opt.solution;
      row += std::string(to_string(s.family)) + "," + std::to_string(s.n) + "," + to_string(s.branch) + "," +
             std::to_string(s.switch_count()) + "," + format_sig(s.total_time) + "," +
             (opt.at_n_max ? "at_nmax" : "ok") + "\n";
    } catch (const std::exception&) {
      row += ",,,,,failed\n";
    }
    rows[idx] = row;
  });

  std::ostringstream buffer;
  buffer << "gamma,u2,optimal_family,n,branch,switch_count,total_time,status\n";
  for (const std::string& r : rows) buffer << r;

  if (path.empty() || path == "-") {
    out << buffer.str();
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << buffer.str()) || !file.flush()) {
    err << "error: cannot write '" << path << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-time bang-bang frequency protocols for the quantum parametric oscillator", "toto"};
  app.require_subcommand(1);

  ProblemArgs solve_args;
  bool json = false, oracle = false;
  int oracle_restarts = OracleConfig{}.restarts;
  CLI::App* solve = app.add_subcommand("solve", "Enumerate extremals and report the minimum-time protocol");
  solve_args.attach(solve);
  solve->add_flag("--json", json, "Emit the report as JSON");
  solve->add_flag("--oracle", oracle, "Confirm the minimum by brute-force search over switching durations");
  solve->add_option("--oracle-restarts", oracle_restarts, "Random restarts per oracle configuration")
      ->check(CLI::PositiveNumber);

  int table_nmax = SolverConfig{}.n_max;
  double tolerance = 1e-3;
  CLI::App* table = app.add_subcommand("table", "Extremal times for the four built-in reference cases");
  table->add_option("--nmax", table_nmax, "Largest turn count to enumerate")->check(CLI::NonNegativeNumber);
  CLI::Option* tol_opt =
      table->add_option("--tolerance", tolerance, "Compare against the embedded reference values")
          ->check(CLI::PositiveNumber);

  ProblemArgs sim_args;
  std::size_t samples = 200;
  std::string sim_out;
  CLI::App* simulate = app.add_subcommand("simulate", "Write the optimal trajectory as CSV");
  sim_args.attach(simulate);
  simulate->add_option("--samples-per-segment", samples, "Samples per control segment")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim_out, "Output file (default: stdout)");

  std::string gamma_range, u2_range, sweep_out;
  double sweep_u1 = 0.0;
  int sweep_nmax = SolverConfig{}.n_max;
  CLI::App* sweep = app.add_subcommand("sweep", "Optimal structure over a (gamma, u2) grid as CSV");
  sweep->add_option("--gamma-range", gamma_range, "a:b:steps")->required();
  sweep->add_option("--u2-range", u2_range, "a:b:steps")->required();
  sweep->add_option("--u1", sweep_u1, "Lower control bound")->required();
  sweep->add_option("--nmax", sweep_nmax, "Largest turn count to enumerate")->check(CLI::NonNegativeNumber);
  sweep->add_option("--out", sweep_out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*solve) return cmd_solve(solve_args, json, oracle, oracle_restarts, out, err);
    if (*table) return cmd_table(table_nmax, tolerance, tol_opt->count() > 0, out);
    if (*simulate) return cmd_simulate(sim_args, samples, sim_out, out, err);
    if (*sweep) return cmd_sweep(gamma_range, u2_range, sweep_u1, sweep_nmax, sweep_out, out, err);
  } catch (const InvalidProblem& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitInvalidInput;
}

}  // namespace toto::cli
