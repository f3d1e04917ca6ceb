#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "toto/core_model.hpp"
#include "toto/protocol.hpp"

namespace toto {

/// Exact evolution under constant control u > 0 for time tau (tau may be
/// negative). x1^2 evolves as a harmonic of angular frequency 2 sqrt(u)
/// about I/(2u), where I is the first integral.
PhaseState propagate_closed_form(const PhaseState& state, double u, double tau);

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration of dynamics_rhs. Used as an
/// independent check on propagate_closed_form. tol is applied as both the
/// absolute and relative local error bound.
PhaseState integrate_numeric(const PhaseState& state, double u, double tau, double tol = 1e-10);

/// Time from a switching point to the next one along an arc with control u,
/// reconstructed from the sine and cosine of 2 sqrt(u) tau. Result lies in
/// (0, pi/sqrt(u)]. Throws DomainError if x2 == 0.
double inter_switch_time(const PhaseState& state, double u);

struct TrajectorySample {
  double t = 0.0;
  PhaseState state;
};

/// Samples have strictly increasing t. segment_boundaries[k] is the index of
/// the sample where segment k starts, and segment_controls[k] its control.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<std::size_t> segment_boundaries;
  std::vector<double> segment_controls;

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

/// Each segment contributes samples_per_segment uniformly spaced samples
/// starting at its switching state; the final state closes the trajectory.
Trajectory simulate_protocol(const PhaseState& start, const BangBangProtocol& protocol,
                             std::size_t samples_per_segment = 200);

/// Final state only, without sampling.
PhaseState propagate_protocol(const PhaseState& start, const BangBangProtocol& protocol);

/// States at every segment boundary, start and end included.
std::vector<PhaseState> boundary_states(const PhaseState& start, const BangBangProtocol& protocol);

/// CSV with header t,x1,x2,u,z1,z2,z3. Boundary samples appear twice, once
/// with each adjacent control value. Floats use at least 10 significant
/// digits, more where needed to round-trip exactly.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

}  // namespace toto
