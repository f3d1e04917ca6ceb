#pragma once

#include <string>

#include "toto/extremal.hpp"
#include "toto/problem.hpp"
#include "toto/protocol.hpp"

namespace toto {

struct ValidationReport {
  /// Euclidean distance of the simulated end state from (gamma, 0).
  double endpoint_error = 0.0;
  /// Largest change of the first integral within any segment.
  double max_first_integral_drift = 0.0;
  /// Largest |z1 z2 - z3^2/4 - 1| over the checked samples.
  double max_casimir_drift = 0.0;
  /// Largest | |mu_j|/kappa_j - sqrt(s) |.
  double max_ratio_residual = 0.0;
  bool alternating_signs = true;
  /// Largest |kappa_{j+1}^2 kappa_j^2 (s + u) - 1|.
  double max_consecutive_residual = 0.0;
  /// |first_integral(last switching, u2) - c|.
  double final_orbit_residual = 0.0;
  /// Largest distance between simulated segment boundaries and the closed-form
  /// switching points, relative to max(1, |point|).
  double max_switching_point_error = 0.0;
  /// Largest gap between an intermediate arc duration and the time obtained
  /// from its starting switching point by angle reconstruction.
  double max_inter_switch_residual = 0.0;
  /// |sum of protocol durations - total_time|.
  double total_time_residual = 0.0;

  bool passed = false;
  std::string failure;
};

/// Simulates the protocol from (1, 0) and checks the endpoint, conservation
/// of the first integral and the Casimir. samples_per_segment interior
/// samples are audited per segment.
ValidationReport validate_protocol(const BangBangProtocol& protocol, const ProblemSpec& spec, double tol = 1e-6,
                                   int samples_per_segment = 16);

/// validate_protocol plus the switching-point geometry of the extremal.
ValidationReport validate_solution(const ExtremalSolution& solution, const ProblemSpec& spec, double tol = 1e-6);

}  // namespace toto
