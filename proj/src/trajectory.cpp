#include "toto/trajectory.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ostream>

#include <boost/numeric/odeint.hpp>

namespace toto {

namespace {

void require_control(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("control value must be positive and finite");
}

}  // namespace

// With w = sqrt(u), the width solves the Ermakov equation as
//   x1(t)^2 = y(t)^2 + (sin(wt) / (w x1(0)))^2,   y(t) = x1(0) cos(wt) + x2(0) sin(wt) / w
// which is the harmonic I/(2u) + ... form rewritten as a sum of squares, so it
// stays accurate when I/(2u) is much larger than x1^2.
PhaseState propagate_closed_form(const PhaseState& state, double u, double tau) {
  require_positive_width(state);
  require_control(u);
  const double w = std::sqrt(u);
  const double c = std::cos(w * tau);
  const double s = std::sin(w * tau);

  const double y = state.x1 * c + state.x2 * s / w;
  const double y_dot = -state.x1 * w * s + state.x2 * c;
  const double h = s / (w * state.x1);
  const double rho = y * y + h * h;
  if (!(rho > 0.0)) throw DomainError("closed-form propagation produced x1^2 <= 0");

  const double x1 = std::sqrt(rho);
  // d/dt (h^2) = 2 s c / (w x1(0)^2)
  const double half_rho_dot = y * y_dot + s * c / (w * state.x1 * state.x1);
  return {x1, half_rho_dot / x1};
}

PhaseState integrate_numeric(const PhaseState& state, double u, double tau, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;

  require_positive_width(state);
  require_control(u);
  if (!(tol > 0.0)) throw std::invalid_argument("integration tolerance must be positive");
  if (tau == 0.0) return state;

  auto rhs = [u](const State& x, State& dxdt, double) {
    const Vector2<double> f = dynamics_rhs(PhaseState{x[0], x[1]}, u);
    dxdt[0] = f(0);
    dxdt[1] = f(1);
  };

  State x{state.x1, state.x2};
  const double dt0 = std::copysign(std::min(1e-3, std::abs(tau)), tau);
  try {
    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
    odeint::integrate_adaptive(stepper, rhs, x, 0.0, tau, dt0);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception& e) {
    throw IntegrationFailure(std::string("adaptive integration failed: ") + e.what());
  }
  if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw IntegrationFailure("integration diverged");
  return {x[0], x[1]};
}

double inter_switch_time(const PhaseState& state, double u) {
  require_positive_width(state);
  require_control(u);
  if (state.x2 == 0.0) throw DomainError("inter_switch_time requires a switching point off the x1-axis");

  const double w = std::sqrt(u);
  const double denom = state.x2 * state.x2 + u * state.x1 * state.x1;
  const double sin_theta = -2.0 * w * state.x1 * state.x2 / denom;
  const double cos_theta = (state.x2 * state.x2 - u * state.x1 * state.x1) / denom;
  double theta = std::atan2(sin_theta, cos_theta);
  if (theta <= 0.0) theta += 2.0 * std::numbers::pi;
  return theta / (2.0 * w);
}

Trajectory simulate_protocol(const PhaseState& start, const BangBangProtocol& protocol,
                             std::size_t samples_per_segment) {
  require_positive_width(start);
  const std::size_t per_segment = std::max<std::size_t>(samples_per_segment, 1);

  Trajectory traj;
  traj.samples.reserve(protocol.size() * per_segment + 1);
  PhaseState current = start;
  double t0 = 0.0;
  for (const Segment& seg : protocol.segments()) {
    traj.segment_boundaries.push_back(traj.samples.size());
    traj.segment_controls.push_back(seg.u);
    traj.samples.push_back({t0, current});
    for (std::size_t k = 1; k < per_segment; ++k) {
      const double dt = seg.duration * static_cast<double>(k) / static_cast<double>(per_segment);
      traj.samples.push_back({t0 + dt, propagate_closed_form(current, seg.u, dt)});
    }
    current = propagate_closed_form(current, seg.u, seg.duration);
    t0 += seg.duration;
  }
  traj.samples.push_back({t0, current});
  if (protocol.empty()) traj.samples.resize(1);
  return traj;
}

PhaseState propagate_protocol(const PhaseState& start, const BangBangProtocol& protocol) {
  PhaseState current = start;
  for (const Segment& seg : protocol.segments()) current = propagate_closed_form(current, seg.u, seg.duration);
  return current;
}

std::vector<PhaseState> boundary_states(const PhaseState& start, const BangBangProtocol& protocol) {
  std::vector<PhaseState> states{start};
  states.reserve(protocol.size() + 1);
  for (const Segment& seg : protocol.segments())
    states.push_back(propagate_closed_form(states.back(), seg.u, seg.duration));
  return states;
}

namespace {

// Fewest digits (at least 10) that parse back to the same double, so the
// file carries the full precision of the simulation.
void put(std::ostream& os, double v) {
  char buf[32];
  for (int digits = 10; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v == 0.0 ? 0.0 : v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  os << buf;
}

void write_row(std::ostream& os, const TrajectorySample& s, const double* u) {
  const ZState z = to_z_space(s.state);
  put(os, s.t);
  os << ',';
  put(os, s.state.x1);
  os << ',';
  put(os, s.state.x2);
  os << ',';
  if (u) put(os, *u);
  for (double v : {z.z1, z.z2, z.z3}) {
    os << ',';
    put(os, v);
  }
  os << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x1,x2,u,z1,z2,z3\n";
  const auto& controls = traj.segment_controls;
  std::size_t next_boundary = 0;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const TrajectorySample& s = traj.samples[i];
    if (controls.empty()) {
      write_row(os, s, nullptr);
      continue;
    }
    if (next_boundary < traj.segment_boundaries.size() && traj.segment_boundaries[next_boundary] == i) {
      if (next_boundary > 0) write_row(os, s, &controls[next_boundary - 1]);
      write_row(os, s, &controls[next_boundary]);
      ++next_boundary;
    } else {
      write_row(os, s, &controls[next_boundary - 1]);
    }
  }
}

}  // namespace toto
