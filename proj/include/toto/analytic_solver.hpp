#pragma once

#include <vector>

#include "toto/extremal.hpp"
#include "toto/problem.hpp"
#include "toto/protocol.hpp"

namespace toto {

struct SolverConfig {
  int n_max = 8;
  int scan_points = 20000;
  double root_tol = 1e-12;
  double validate_tol = 1e-6;

  void validate() const;
};

/// Square-root arguments in [-1e-12, 0) are rounding noise and clamp to 0;
/// anything more negative throws DomainError.
inline constexpr double kSqrtClamp = 1e-12;
/// Inverse-cosine arguments within this distance of [-1, 1] are clamped;
/// beyond it they throw InconsistentRoot.
inline constexpr double kAcosClamp = 1e-9;

/// Upper end of the admissible ratio interval (0, s_max]. Zero for the even
/// family when u2 == 1, meaning the interval is empty.
double admissible_s_max(ExtremalFamily family, const ProblemSpec& spec);

/// Mismatch of the transcendental equation for the XY...XY family:
///   (c + sqrt(c^2 - 4(s+u2))) / (c1 +- sqrt(c1^2 - 4(s+u1))) - ((s+u2)/(s+u1))^(n+1)
double residual_odd(double s, int n, Branch branch, const ProblemSpec& spec);

/// Mismatch for the YX...XY family (n >= 1):
///   (c + sqrt(c^2 - 4(s+u2))) / (c2 -+ sqrt(c2^2 - 4(s+u2))) - ((s+u2)/(s+u1))^n
double residual_even(double s, int n, Branch branch, const ProblemSpec& spec);

double residual(ExtremalFamily family, double s, int n, Branch branch, const ProblemSpec& spec);

/// Every sign change of the residual on a uniform grid of cfg.scan_points
/// subintervals of (0, s_max], refined by bisection to cfg.root_tol.
/// Empty when the family is not admissible (even family with u2 == 1).
std::vector<double> solve_s(ExtremalFamily family, int n, Branch branch, const ProblemSpec& spec,
                            const SolverConfig& cfg = {});

SegmentTimes segment_times(double s, ExtremalFamily family, int n, Branch branch, const ProblemSpec& spec);

/// kappa_j from the first-switching root and kappa_{j+1}^2 = 1/(kappa_j^2 (s+u)),
/// mu_j = +-sqrt(s) kappa_j with alternating sign. The last switching always
/// has mu > 0; the first has mu > 0 for the odd family and mu < 0 for the
/// even family.
std::vector<PhaseState> switching_points(double s, ExtremalFamily family, int n, Branch branch,
                                         const ProblemSpec& spec);

/// Assembles the full candidate for a root s.
ExtremalSolution make_solution(double s, ExtremalFamily family, int n, Branch branch, const ProblemSpec& spec);

/// All validated extremals for n = 0..cfg.n_max, both families and branches,
/// sorted by total_time (ties: fewer switchings, then Plus).
std::vector<ExtremalSolution> enumerate_candidates(const ProblemSpec& spec, const SolverConfig& cfg = {});

struct OptimalProtocol {
  ExtremalSolution solution;
  BangBangProtocol protocol;
  /// Whether the minimum was attained at the largest enumerated turn count.
  bool at_n_max = false;
};

OptimalProtocol optimal_protocol(const ProblemSpec& spec, const SolverConfig& cfg = {});

/// Picks the optimum from an already enumerated, sorted list.
OptimalProtocol select_optimal(const std::vector<ExtremalSolution>& candidates, const ProblemSpec& spec,
                               const SolverConfig& cfg = {});

/// Strict ordering used for the candidate list.
bool candidate_less(const ExtremalSolution& a, const ExtremalSolution& b);

}  // namespace toto
