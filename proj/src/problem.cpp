#include "toto/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toto/errors.hpp"

namespace toto {

namespace {

std::string describe(const ProblemSpec& s) {
  std::ostringstream os;
  os.precision(10);
  os << "(gamma=" << s.gamma << ", u1=" << s.u1 << ", u2=" << s.u2 << ")";
  return os.str();
}

const char* violation(const ProblemSpec& s) noexcept {
  if (!std::isfinite(s.gamma) || !std::isfinite(s.u1) || !std::isfinite(s.u2))
    return "parameters must be finite";
  if (!(s.gamma > 1.0)) return "gamma must exceed 1";
  if (!(s.u1 > 0.0)) return "u1 must be positive";
  const double g4 = std::pow(s.gamma, 4);
  if (!(s.u1 * g4 <= 1.0)) return "u1 must not exceed 1/gamma^4";
  if (!(s.u2 >= 1.0)) return "u2 must be at least 1";
  return nullptr;
}

}  // namespace

void validate(const ProblemSpec& spec) {
  if (const char* why = violation(spec))
    throw InvalidProblem(std::string(why) + " " + describe(spec));
}

bool is_valid(const ProblemSpec& spec) noexcept { return violation(spec) == nullptr; }

void validate(const PhysicalSpec& p) {
  const bool finite = std::isfinite(p.omega0) && std::isfinite(p.omegaf) &&
                      std::isfinite(p.omega1) && std::isfinite(p.omega2);
  if (!finite || !(0.0 < p.omega1) || !(p.omega1 <= p.omegaf) || !(p.omegaf < p.omega0) ||
      !(p.omega0 <= p.omega2)) {
    std::ostringstream os;
    os.precision(10);
    os << "frequencies must satisfy 0 < omega1 <= omegaf < omega0 <= omega2 (got omega0="
       << p.omega0 << ", omegaf=" << p.omegaf << ", omega1=" << p.omega1
       << ", omega2=" << p.omega2 << ")";
    throw InvalidProblem(os.str());
  }
}

ProblemSpec make_problem(double gamma, double u1, double u2) {
  ProblemSpec spec{gamma, u1, u2};
  validate(spec);
  return spec;
}

ProblemSpec scale_problem(const PhysicalSpec& phys) {
  validate(phys);
  const double r1 = phys.omega1 / phys.omega0;
  const double r2 = phys.omega2 / phys.omega0;
  ProblemSpec spec{std::sqrt(phys.omega0 / phys.omegaf), r1 * r1, r2 * r2};
  // The frequency ordering implies the scaled one up to rounding in gamma^4;
  // pin u1 to 1/gamma^4 when omega1 == omegaf.
  if (phys.omega1 == phys.omegaf) spec.u1 = std::min(spec.u1, 1.0 / std::pow(spec.gamma, 4));
  validate(spec);
  return spec;
}

double temperature_ratio(const ProblemSpec& spec) {
  validate(spec);
  return 1.0 / (spec.gamma * spec.gamma);
}

}  // namespace toto
