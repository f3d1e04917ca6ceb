#pragma once

#include <cstdint>
#include <vector>

#include "toto/extremal.hpp"
#include "toto/problem.hpp"

namespace toto {

enum class ControlBound { Lower, Upper };

inline double control_value(ControlBound b, const ProblemSpec& spec) {
  return b == ControlBound::Lower ? spec.u1 : spec.u2;
}
const char* to_string(ControlBound b);

/// Settings for the direct search over bang-bang switching durations.
struct OracleConfig {
  int max_switchings = 8;
  int restarts = 32;
  std::vector<double> penalty_weight_schedule{1e2, 1e4, 1e6};
  /// Non-positive means: 4x the analytic minimum when one is known, else 40.
  double duration_upper_bound = 0.0;
  std::uint64_t seed = 20170321;
  /// End states closer than this to (gamma, 0) count as feasible.
  double feasibility_tol = 1e-5;
  int max_evaluations = 6000;

  void validate() const;
};

struct OracleResult {
  ControlBound starts_with = ControlBound::Lower;
  int k_switchings = 0;
  bool feasible = false;
  double best_time = 0.0;
  std::vector<double> durations;
  double endpoint_error = 0.0;
  /// Number of restarts that ended feasible.
  int feasible_restarts = 0;
  /// Feasible times of every restart, in restart order (NaN if infeasible).
  std::vector<double> restart_times;
};

/// Minimizes the total duration of a (k_switchings + 1)-segment alternating
/// protocol starting with the given control, subject to reaching (gamma, 0).
/// Works on square-root durations with a multi-start simplex search and an
/// increasing quadratic endpoint penalty. Deterministic for a given seed.
OracleResult optimize_durations(const ProblemSpec& spec, ControlBound starts_with, int k_switchings,
                                const OracleConfig& cfg = {});

struct ConfirmationReport {
  double analytic_time = 0.0;
  std::vector<OracleResult> runs;
  /// Fastest feasible oracle protocol over all (k, start) runs.
  double best_oracle_time = 0.0;
  int best_oracle_k = -1;
  ControlBound best_oracle_start = ControlBound::Lower;
  /// Some feasible protocol beat the analytic time by more than 1e-4.
  bool falsified = false;
  /// Elementwise gap between the analytic durations and the oracle's best
  /// protocol with the same switch count and initial control.
  double max_duration_mismatch = 0.0;
  bool durations_match = false;
  bool passed = false;
};

inline constexpr double kBeatTolerance = 1e-4;
inline constexpr double kDurationMatchTolerance = 1e-3;

ConfirmationReport confirm_minimum(const ProblemSpec& spec, const ExtremalSolution& analytic,
                                   const OracleConfig& cfg = {});

}  // namespace toto
