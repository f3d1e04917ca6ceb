#include "toto/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "toto/errors.hpp"

namespace toto::cli {

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_sig(v));
}

std::string format_fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

int row_rank(ExtremalFamily family, int n, Branch branch) {
  const int group = (family == ExtremalFamily::OddStartsWithX ? 0 : 2) + (branch == Branch::Plus ? 0 : 1);
  return group * 1000 + switch_count(family, n);
}

bool row_order_less(const ExtremalSolution& a, const ExtremalSolution& b) {
  return std::tuple(row_rank(a.family, a.n, a.branch), a.total_time) <
         std::tuple(row_rank(b.family, b.n, b.branch), b.total_time);
}

SolveReport build_solve_report(const ProblemSpec& spec, const SolverConfig& cfg) {
  SolveReport report;
  report.spec = spec;
  report.candidates = enumerate_candidates(spec, cfg);
  report.optimal = select_optimal(report.candidates, spec, cfg);
  report.validation = validate_solution(report.optimal.solution, spec, cfg.validate_tol);
  std::sort(report.candidates.begin(), report.candidates.end(), row_order_less);
  return report;
}

namespace {

bool same_extremal(const ExtremalSolution& a, const ExtremalSolution& b) {
  return a.family == b.family && a.n == b.n && a.branch == b.branch && a.s == b.s;
}

std::string word(const ExtremalSolution& sol) {
  std::string w = sol.family == ExtremalFamily::OddStartsWithX ? "X" : "Y";
  for (int i = 0; i < sol.switch_count(); ++i) w += (w.back() == 'X') ? 'Y' : 'X';
  return w;
}

}  // namespace

Json to_json(const SolveReport& r) {
  const double scale = r.time_scale;
  Json j;
  j["problem"] = {{"gamma", round_sig(r.spec.gamma)}, {"u1", round_sig(r.spec.u1)}, {"u2", round_sig(r.spec.u2)}};
  j["time_unit"] = r.seconds ? "seconds" : "scaled";

  Json cands = Json::array();
  for (const ExtremalSolution& c : r.candidates) {
    Json e;
    e["label"] = c.label();
    e["family"] = to_string(c.family);
    e["n"] = c.n;
    e["branch"] = to_string(c.branch);
    e["switch_count"] = c.switch_count();
    e["s"] = round_sig(c.s);
    e["t_initial"] = round_sig(c.times.t_initial / scale);
    e["t_x"] = round_sig(c.times.t_x / scale);
    e["t_y"] = round_sig(c.times.t_y / scale);
    e["t_final"] = round_sig(c.times.t_final / scale);
    e["total_time"] = round_sig(c.total_time / scale);
    e["optimal"] = same_extremal(c, r.optimal.solution);
    cands.push_back(std::move(e));
  }
  j["candidates"] = std::move(cands);

  const ExtremalSolution& best = r.optimal.solution;
  Json segs = Json::array();
  for (const Segment& s : r.optimal.protocol.segments())
    segs.push_back({{"u", round_sig(s.u)}, {"duration", round_sig(s.duration / scale)}});
  Json pts = Json::array();
  for (const PhaseState& p : best.switching_points) pts.push_back({{"x1", round_sig(p.x1)}, {"x2", round_sig(p.x2)}});
  j["optimal"] = {{"label", best.label()},
                  {"sequence", word(best)},
                  {"switch_count", best.switch_count()},
                  {"total_time", round_sig(best.total_time / scale)},
                  {"at_n_max", r.optimal.at_n_max},
                  {"protocol", std::move(segs)},
                  {"switching_points", std::move(pts)}};

  const ValidationReport& v = r.validation;
  j["validation"] = {{"passed", v.passed},
                     {"endpoint_error", round_sig(v.endpoint_error)},
                     {"max_first_integral_drift", round_sig(v.max_first_integral_drift)},
                     {"max_casimir_drift", round_sig(v.max_casimir_drift)},
                     {"max_ratio_residual", round_sig(v.max_ratio_residual)},
                     {"max_switching_point_error", round_sig(v.max_switching_point_error)}};

  if (r.oracle) {
    const ConfirmationReport& o = *r.oracle;
    Json runs = Json::array();
    for (const OracleResult& run : o.runs) {
      Json e;
      e["starts_with"] = to_string(run.starts_with);
      e["k_switchings"] = run.k_switchings;
      e["feasible"] = run.feasible;
      if (run.feasible) {
        e["best_time"] = round_sig(run.best_time / scale);
      } else {
        e["best_time"] = nullptr;
      }
      e["endpoint_error"] = round_sig(run.endpoint_error);
      runs.push_back(std::move(e));
    }
    j["oracle"] = {{"passed", o.passed},
                   {"falsified", o.falsified},
                   {"best_time", round_sig(o.best_oracle_time / scale)},
                   {"best_k", o.best_oracle_k},
                   {"durations_match", o.durations_match},
                   {"max_duration_mismatch", round_sig(o.max_duration_mismatch / scale)},
                   {"runs", std::move(runs)}};
  }
  return j;
}

std::string render_text(const SolveReport& r) {
  const double scale = r.time_scale;
  const char* unit = r.seconds ? "s" : "scaled";
  std::ostringstream os;
  os << "problem: gamma=" << format_sig(r.spec.gamma) << " u1=" << format_sig(r.spec.u1)
     << " u2=" << format_sig(r.spec.u2) << "  (times in " << unit << " units)\n";
  os << std::left << std::setw(7) << "label" << std::setw(10) << "sequence" << std::right << std::setw(14) << "s"
     << std::setw(12) << "t_initial" << std::setw(12) << "t_x" << std::setw(12) << "t_y" << std::setw(12)
     << "t_final" << std::setw(12) << "total" << "\n";
  for (const ExtremalSolution& c : r.candidates) {
    std::string seq = word(c);
    if (seq.size() > 9) seq = seq.substr(0, 3) + "..." + seq.substr(seq.size() - 2);
    os << std::left << std::setw(7) << c.label() << std::setw(10) << seq << std::right << std::setw(14)
       << format_sig(c.s) << std::setw(12) << format_fixed4(c.times.t_initial / scale) << std::setw(12)
       << format_fixed4(c.times.t_x / scale) << std::setw(12) << format_fixed4(c.times.t_y / scale)
       << std::setw(12) << format_fixed4(c.times.t_final / scale) << std::setw(12)
       << format_fixed4(c.total_time / scale) << (same_extremal(c, r.optimal.solution) ? "  *" : "") << "\n";
  }
  const ExtremalSolution& best = r.optimal.solution;
  os << "optimal: " << best.label() << " " << format_fixed4(best.total_time / scale) << " (" << word(best) << ", "
     << best.switch_count() << (best.switch_count() == 1 ? " switching" : " switchings") << ")\n";
  os << "validation: " << (r.validation.passed ? "pass" : "FAIL")
     << " endpoint_error=" << format_sig(r.validation.endpoint_error)
     << " max_casimir_drift=" << format_sig(r.validation.max_casimir_drift) << "\n";
  if (r.oracle) {
    const ConfirmationReport& o = *r.oracle;
    os << "oracle: " << (o.passed ? "confirmed" : (o.falsified ? "FALSIFIED" : "inconclusive"))
       << " best=" << format_fixed4(o.best_oracle_time / scale) << " k=" << o.best_oracle_k
       << " duration_mismatch=" << format_sig(o.max_duration_mismatch / scale) << "\n";
  }
  return os.str();
}

const std::vector<ReferenceCase>& reference_cases() {
  static const std::vector<ReferenceCase> cases = {
      {std::sqrt(3.0), 1.0, {{"T1+", 1.6784}}},
      {std::sqrt(3.0), 6.5, {{"T1+", 1.4513}, {"T2+", 1.8320}, {"T4+", 2.5858}, {"T2-", 1.3888}, {"T4-", 2.5387}}},
      {8.0, 1.0, {{"T1+", 8.0159}, {"T3+", 7.3863}, {"T5+", 9.5568}, {"T3-", 9.7758}, {"T5-", 9.5735}}},
      {8.0,
       4.0,
       {{"T1+", 7.9707},
        {"T3+", 4.6189},
        {"T3-", 4.9845},
        {"T2+", 8.0452},
        {"T4+", 4.9982},
        {"T6+", 5.7987},
        {"T8+", 7.0651},
        {"T2-", 4.8098},
        {"T4-", 4.5458},
        {"T6-", 5.6884},
        {"T8-", 7.0496}}},
  };
  return cases;
}

const std::vector<std::string>& reference_row_labels() {
  static const std::vector<std::string> labels = {"T1+", "T3+", "T5+", "T3-", "T5-", "T2+", "T4+",
                                                  "T6+", "T8+", "T2-", "T4-", "T6-", "T8-"};
  return labels;
}

TableGrid build_reference_table(const SolverConfig& cfg) {
  TableGrid grid;
  struct Row {
    int rank;
    std::string label;
  };
  std::vector<Row> rows;
  auto add_row = [&](int rank, const std::string& label) {
    if (std::none_of(rows.begin(), rows.end(), [&](const Row& r) { return r.label == label; }))
      rows.push_back({rank, label});
  };

  std::vector<std::vector<ExtremalSolution>> solved;
  for (const ReferenceCase& rc : reference_cases()) {
    const ProblemSpec spec = make_problem(rc.gamma, kReferenceU1, rc.u2);
    solved.push_back(enumerate_candidates(spec, cfg));
    for (const ExtremalSolution& s : solved.back()) add_row(row_rank(s.family, s.n, s.branch), s.label());
  }
  // Reference rows keep their place even if nothing was found for them.
  for (const std::string& label : reference_row_labels()) {
    const int count = std::stoi(label.substr(1, label.size() - 2));
    const bool odd = count % 2 == 1;
    const Branch b = label.back() == '+' ? Branch::Plus : Branch::Minus;
    const ExtremalFamily f = odd ? ExtremalFamily::OddStartsWithX : ExtremalFamily::EvenStartsWithY;
    add_row(row_rank(f, odd ? (count - 1) / 2 : count / 2, b), label);
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
  for (const Row& r : rows) grid.labels.push_back(r.label);

  for (std::size_t c = 0; c < reference_cases().size(); ++c) {
    const ReferenceCase& rc = reference_cases()[c];
    TableColumn col;
    col.spec = make_problem(rc.gamma, kReferenceU1, rc.u2);
    const ExtremalSolution& best = solved[c].front();
    for (const std::string& label : grid.labels) {
      TableCell cell;
      cell.label = label;
      for (const ExtremalSolution& s : solved[c]) {
        if (s.label() != label) continue;
        // Several roots for one label would be reported as the fastest.
        if (!cell.time || s.total_time < *cell.time) {
          cell.time = s.total_time;
          cell.optimal = &s == &best;
        }
      }
      for (const auto& [ref_label, value] : rc.cells)
        if (ref_label == label) cell.reference = value;
      col.cells.push_back(cell);
    }
    grid.columns.push_back(std::move(col));
  }
  return grid;
}

std::string render_table(const TableGrid& grid) {
  std::ostringstream os;
  os << "Extremal times (u1=" << format_sig(kReferenceU1) << ", * marks the minimum)\n";
  os << std::left << std::setw(6) << "";
  for (const TableColumn& col : grid.columns) {
    const std::string head = "g=" + format_fixed4(col.spec.gamma).substr(0, 6);
    os << std::right << std::setw(15) << head;
  }
  os << "\n" << std::left << std::setw(6) << "";
  for (const TableColumn& col : grid.columns) os << std::right << std::setw(15) << ("u2=" + format_sig(col.spec.u2));
  os << "\n";
  for (std::size_t r = 0; r < grid.labels.size(); ++r) {
    os << std::left << std::setw(6) << grid.labels[r];
    for (const TableColumn& col : grid.columns) {
      const TableCell& cell = col.cells[r];
      const std::string text = cell.time ? format_fixed4(*cell.time) + (cell.optimal ? "*" : " ") : "- ";
      os << std::right << std::setw(15) << text;
    }
    os << "\n";
  }
  return os.str();
}

TableComparison compare_with_reference(const TableGrid& grid, double tol) {
  TableComparison cmp;
  for (const TableColumn& col : grid.columns) {
    for (const TableCell& cell : col.cells) {
      std::ostringstream where;
      where << cell.label << " (gamma=" << format_sig(col.spec.gamma) << ", u2=" << format_sig(col.spec.u2) << ")";
      if (cell.reference && cell.time) {
        const double dev = std::abs(*cell.time - *cell.reference);
        cmp.max_deviation = std::max(cmp.max_deviation, dev);
        if (dev > tol) {
          cmp.mismatches.push_back(where.str() + ": computed " + format_fixed4(*cell.time) + ", reference " +
                                   format_fixed4(*cell.reference) + ", deviation " + format_sig(dev));
        }
      } else if (cell.reference) {
        cmp.mismatches.push_back(where.str() + ": no validated root, reference " + format_fixed4(*cell.reference));
      } else if (cell.time) {
        cmp.mismatches.push_back(where.str() + ": computed " + format_fixed4(*cell.time) + ", reference has none");
      }
    }
  }
  cmp.passed = cmp.mismatches.empty();
  return cmp;
}

}  // namespace toto::cli
