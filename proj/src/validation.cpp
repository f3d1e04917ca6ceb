#include "toto/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "toto/trajectory.hpp"

namespace toto {

namespace {

double casimir_drift(const PhaseState& s) { return std::abs(casimir(to_z_space(s)) - 1.0); }

}  // namespace

ValidationReport validate_protocol(const BangBangProtocol& protocol, const ProblemSpec& spec, double tol,
                                   int samples_per_segment) {
  ValidationReport r;
  const PhaseState start{1.0, 0.0};
  PhaseState current = start;
  r.max_casimir_drift = casimir_drift(start);

  try {
    for (const Segment& seg : protocol.segments()) {
      const double i0 = first_integral(current, seg.u);
      for (int k = 1; k <= samples_per_segment; ++k) {
        const double dt = seg.duration * k / (samples_per_segment + 1);
        const PhaseState p = propagate_closed_form(current, seg.u, dt);
        r.max_first_integral_drift = std::max(r.max_first_integral_drift, std::abs(first_integral(p, seg.u) - i0));
        r.max_casimir_drift = std::max(r.max_casimir_drift, casimir_drift(p));
      }
      current = propagate_closed_form(current, seg.u, seg.duration);
      r.max_first_integral_drift = std::max(r.max_first_integral_drift, std::abs(first_integral(current, seg.u) - i0));
      r.max_casimir_drift = std::max(r.max_casimir_drift, casimir_drift(current));
    }
  } catch (const std::exception& e) {
    r.endpoint_error = std::numeric_limits<double>::infinity();
    r.failure = std::string("propagation failed: ") + e.what();
    return r;
  }

  r.endpoint_error = std::hypot(current.x1 - spec.gamma, current.x2);
  r.passed = r.endpoint_error <= tol;
  if (!r.passed) {
    std::ostringstream os;
    os << "endpoint misses target by " << r.endpoint_error;
    r.failure = os.str();
  }
  return r;
}

ValidationReport validate_solution(const ExtremalSolution& sol, const ProblemSpec& spec, double tol) {
  BangBangProtocol protocol;
  try {
    protocol = to_protocol(sol, spec);
  } catch (const std::invalid_argument& e) {
    ValidationReport r;
    r.endpoint_error = std::numeric_limits<double>::infinity();
    r.failure = std::string("invalid protocol: ") + e.what();
    return r;
  }

  ValidationReport r = validate_protocol(protocol, spec, tol);
  if (!r.failure.empty() && !std::isfinite(r.endpoint_error)) return r;

  const auto& pts = sol.switching_points;
  const double root_s = std::sqrt(sol.s);
  const bool odd = sol.family == ExtremalFamily::OddStartsWithX;
  if (static_cast<int>(pts.size()) != sol.switch_count()) {
    r.passed = false;
    r.failure = "switching point count does not match the family";
    return r;
  }

  for (std::size_t j = 0; j < pts.size(); ++j) {
    r.max_ratio_residual = std::max(r.max_ratio_residual, std::abs(std::abs(pts[j].x2) / pts[j].x1 - root_s));
    if (j + 1 < pts.size()) {
      if (std::signbit(pts[j].x2) == std::signbit(pts[j + 1].x2)) r.alternating_signs = false;
      // Arc j -> j+1 uses u2 first for the odd family, u1 first for the even one.
      const bool upper = (j % 2 == 0) == odd;
      const double u = upper ? spec.u2 : spec.u1;
      const double k2 = pts[j].x1 * pts[j].x1, k2n = pts[j + 1].x1 * pts[j + 1].x1;
      r.max_consecutive_residual = std::max(r.max_consecutive_residual, std::abs(k2n * k2 * (sol.s + u) - 1.0));
      const double tau = inter_switch_time(pts[j], u);
      const double expected = upper ? sol.times.t_y : sol.times.t_x;
      r.max_inter_switch_residual = std::max(r.max_inter_switch_residual, std::abs(tau - expected));
    }
  }
  if (!pts.empty()) r.final_orbit_residual = std::abs(first_integral(pts.back(), spec.u2) - spec.c());

  const std::vector<PhaseState> bounds = boundary_states({1.0, 0.0}, protocol);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const PhaseState& sim = bounds[j + 1];
    const double scale = std::max(1.0, std::hypot(pts[j].x1, pts[j].x2));
    r.max_switching_point_error =
        std::max(r.max_switching_point_error, std::hypot(sim.x1 - pts[j].x1, sim.x2 - pts[j].x2) / scale);
  }
  r.total_time_residual = std::abs(protocol.total_time() - sol.total_time);

  if (r.passed && r.max_switching_point_error > tol) {
    r.passed = false;
    std::ostringstream os;
    os << "simulated switchings deviate from closed form by " << r.max_switching_point_error;
    r.failure = os.str();
  }
  if (r.passed && r.total_time_residual > 1e-8 * std::max(1.0, sol.total_time)) {
    r.passed = false;
    r.failure = "segment durations do not add up to the total time";
  }
  return r;
}

}  // namespace toto
