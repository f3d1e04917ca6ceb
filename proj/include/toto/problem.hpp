#pragma once

namespace toto {

/// Dimensionless problem instance. Time is measured in units of 1/omega0 and
/// the control is u = (omega/omega0)^2, so the start is (1, 0) and the target
/// is (gamma, 0).
struct ProblemSpec {
  double gamma = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;

  /// Constants of the first and last segments.
  double c1() const { return u1 + 1.0; }
  double c2() const { return u2 + 1.0; }
  double c() const { return u2 * gamma * gamma + 1.0 / (gamma * gamma); }
};

struct PhysicalSpec {
  double omega0 = 0.0;
  double omegaf = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

/// Checks 0 < u1 <= 1/gamma^4 < 1 <= u2 < inf and gamma > 1. Throws
/// InvalidProblem with a message naming the violated bound.
void validate(const ProblemSpec& spec);
bool is_valid(const ProblemSpec& spec) noexcept;

/// Checks 0 < omega1 <= omegaf < omega0 <= omega2 < inf.
void validate(const PhysicalSpec& phys);

/// Builds a validated ProblemSpec from validated inputs.
ProblemSpec make_problem(double gamma, double u1, double u2);

ProblemSpec scale_problem(const PhysicalSpec& phys);

/// Final over initial ensemble temperature, omegaf/omega0 = 1/gamma^2.
double temperature_ratio(const ProblemSpec& spec);

}  // namespace toto
