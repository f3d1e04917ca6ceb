#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "toto/analytic_solver.hpp"
#include "toto/oracle.hpp"
#include "toto/validation.hpp"

namespace toto::cli {

using Json = nlohmann::ordered_json;

/// "%.10g"
std::string format_sig(double v);
/// v rounded to 10 significant digits, so that JSON output survives a
/// parse/serialize round trip byte for byte.
double round_sig(double v);
/// "%.4f"
std::string format_fixed4(double v);

/// Canonical row order: odd family Plus, odd Minus, even Plus, even Minus,
/// each by ascending switch count.
bool row_order_less(const ExtremalSolution& a, const ExtremalSolution& b);
int row_rank(ExtremalFamily family, int n, Branch branch);

struct SolveReport {
  ProblemSpec spec;
  std::vector<ExtremalSolution> candidates;  // canonical row order
  OptimalProtocol optimal;
  ValidationReport validation;
  std::optional<ConfirmationReport> oracle;
  /// Divide scaled times by this for output (omega0 when --seconds).
  double time_scale = 1.0;
  bool seconds = false;
};

SolveReport build_solve_report(const ProblemSpec& spec, const SolverConfig& cfg);

Json to_json(const SolveReport& report);
std::string render_text(const SolveReport& report);

/// Reference extremal times for the built-in cases, keyed by row label.
struct ReferenceCase {
  double gamma;
  double u2;
  std::vector<std::pair<std::string, double>> cells;
};
inline constexpr double kReferenceU1 = 0.0002;
const std::vector<ReferenceCase>& reference_cases();
/// Row labels of the reference table, in display order.
const std::vector<std::string>& reference_row_labels();

struct TableCell {
  std::string label;
  std::optional<double> time;
  bool optimal = false;
  std::optional<double> reference;
};

struct TableColumn {
  ProblemSpec spec;
  std::vector<TableCell> cells;  // same order as TableGrid::labels
};

struct TableGrid {
  std::vector<std::string> labels;
  std::vector<TableColumn> columns;
};

TableGrid build_reference_table(const SolverConfig& cfg);
std::string render_table(const TableGrid& grid);

struct TableComparison {
  double max_deviation = 0.0;
  std::vector<std::string> mismatches;
  bool passed = true;
};

/// Populated cells must agree with the reference within tol, and cells
/// without a reference value must have no validated root.
TableComparison compare_with_reference(const TableGrid& grid, double tol);

}  // namespace toto::cli
