#include "toto/analytic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "toto/errors.hpp"
#include "toto/parallel.hpp"
#include "toto/validation.hpp"

namespace toto {

void SolverConfig::validate() const {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  if (scan_points < 100) throw std::invalid_argument("scan_points must be at least 100");
  if (!(root_tol > 0.0) || !(validate_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
}

namespace {

template <typename Error>
double clamped_sqrt(double arg, const char* what) {
  if (arg < -kSqrtClamp) throw Error(std::string("negative square-root argument in ") + what);
  return std::sqrt(std::max(arg, 0.0));
}

double clamped_acos(double arg, const char* what) {
  if (!(std::abs(arg) <= 1.0 + kAcosClamp))
    throw InconsistentRoot(std::string("inverse-cosine argument outside [-1, 1] in ") + what);
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

void require_ratio(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("ratio s must be non-negative and finite");
}

void require_even_admissible(int n, const ProblemSpec& spec) {
  if (n < 1) throw std::invalid_argument("even family needs n >= 1");
  if (!(spec.u2 > 1.0)) throw std::invalid_argument("even family is empty when u2 == 1");
}

}  // namespace

double admissible_s_max(ExtremalFamily family, const ProblemSpec& spec) {
  if (family == ExtremalFamily::OddStartsWithX) {
    const double a = (1.0 - spec.u1) * (1.0 - spec.u1) / 4.0;
    const double g2 = spec.gamma * spec.gamma;
    const double d = spec.u2 * g2 - 1.0 / g2;
    return std::min(a, d * d / 4.0);
  }
  const double d = spec.u2 - 1.0;
  return d * d / 4.0;
}

double residual_odd(double s, int n, Branch branch, const ProblemSpec& spec) {
  require_ratio(s);
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  const double c = spec.c(), c1 = spec.c1();
  const double dc = clamped_sqrt<DomainError>(c * c - 4.0 * (s + spec.u2), "residual_odd");
  const double d1 = clamped_sqrt<DomainError>(c1 * c1 - 4.0 * (s + spec.u1), "residual_odd");
  const double lhs = (c + dc) / (c1 + sign_of(branch) * d1);
  return lhs - std::pow((s + spec.u2) / (s + spec.u1), n + 1);
}

double residual_even(double s, int n, Branch branch, const ProblemSpec& spec) {
  require_ratio(s);
  require_even_admissible(n, spec);
  const double c = spec.c(), c2 = spec.c2();
  const double dc = clamped_sqrt<DomainError>(c * c - 4.0 * (s + spec.u2), "residual_even");
  const double d2 = clamped_sqrt<DomainError>(c2 * c2 - 4.0 * (s + spec.u2), "residual_even");
  const double lhs = (c + dc) / (c2 - sign_of(branch) * d2);
  return lhs - std::pow((s + spec.u2) / (s + spec.u1), n);
}

double residual(ExtremalFamily family, double s, int n, Branch branch, const ProblemSpec& spec) {
  return family == ExtremalFamily::OddStartsWithX ? residual_odd(s, n, branch, spec)
                                                  : residual_even(s, n, branch, spec);
}

std::vector<double> solve_s(ExtremalFamily family, int n, Branch branch, const ProblemSpec& spec,
                            const SolverConfig& cfg) {
  cfg.validate();
  std::vector<double> roots;
  if (family == ExtremalFamily::EvenStartsWithY && (n < 1 || !(spec.u2 > 1.0))) return roots;
  const double s_max = admissible_s_max(family, spec);
  if (!(s_max > 0.0)) return roots;

  auto f = [&](double s) { return residual(family, s, n, branch, spec); };
  const int count = cfg.scan_points;
  auto grid = [&](int i) { return i == count ? s_max : s_max * static_cast<double>(i) / count; };

  // s = 0 is outside the interval but the residual extends continuously to
  // it, so it serves as the left end of the first bracket.
  double s_prev = 0.0;
  double f_prev = f(s_prev);
  for (int i = 1; i <= count; ++i) {
    const double s_cur = grid(i);
    const double f_cur = f(s_cur);
    if (f_cur == 0.0) {
      roots.push_back(s_cur);
    } else if (f_prev != 0.0 && std::signbit(f_prev) != std::signbit(f_cur)) {
      double a = s_prev, b = s_cur, fa = f_prev;
      double m = 0.5 * (a + b);
      for (int it = 0; it < 400; ++it) {
        m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) break;
        if (b - a <= cfg.root_tol && std::abs(fm) < 1e-11) break;
        if (std::signbit(fm) == std::signbit(fa)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(m);
    }
    s_prev = s_cur;
    f_prev = f_cur;
  }
  return roots;
}

SegmentTimes segment_times(double s, ExtremalFamily family, int n, Branch branch, const ProblemSpec& spec) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("ratio s must be positive");
  const double u1 = spec.u1, u2 = spec.u2;
  const double w1 = std::sqrt(u1), w2 = std::sqrt(u2);
  const double pm = sign_of(branch);
  SegmentTimes t;

  if (family == ExtremalFamily::OddStartsWithX) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    const double c1 = spec.c1();
    const double d1 = clamped_sqrt<InconsistentRoot>(c1 * c1 - 4.0 * (s + u1), "initial X arc");
    const double arg = (s * c1 - pm * u1 * d1) / ((s + u1) * (1.0 - u1));
    t.t_initial = clamped_acos(arg, "initial X arc") / (2.0 * w1);
  } else {
    require_even_admissible(n, spec);
    const double c2 = spec.c2();
    const double d2 = clamped_sqrt<InconsistentRoot>(c2 * c2 - 4.0 * (s + u2), "initial Y arc");
    const double arg = (-s * c2 + pm * u2 * d2) / ((s + u2) * (u2 - 1.0));
    t.t_initial = clamped_acos(arg, "initial Y arc") / (2.0 * w2);
  }

  t.t_x = clamped_acos((s - u1) / (s + u1), "X arc") / (2.0 * w1);
  t.t_y = (2.0 * std::numbers::pi - clamped_acos((s - u2) / (s + u2), "Y arc")) / (2.0 * w2);

  const double c = spec.c();
  const double g2 = spec.gamma * spec.gamma;
  const double dc = clamped_sqrt<InconsistentRoot>(c * c - 4.0 * (s + u2), "final Y arc");
  const double arg_f = (-s * c + u2 * dc) / ((s + u2) * (u2 * g2 - 1.0 / g2));
  t.t_final = clamped_acos(arg_f, "final Y arc") / (2.0 * w2);
  return t;
}

std::vector<PhaseState> switching_points(double s, ExtremalFamily family, int n, Branch branch,
                                         const ProblemSpec& spec) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("ratio s must be positive");
  const bool odd = family == ExtremalFamily::OddStartsWithX;
  if (odd && n < 0) throw std::invalid_argument("n must be non-negative");
  if (!odd) require_even_admissible(n, spec);

  // The first switching lies on the initial arc from (1, 0); kappa_1^2 is a
  // root of (s + u) k^4 - (u + 1) k^2 + 1 = 0.
  const double u_first = odd ? spec.u1 : spec.u2;
  const double c_first = u_first + 1.0;
  const double disc = clamped_sqrt<InconsistentRoot>(c_first * c_first - 4.0 * (s + u_first), "first switching");
  double kappa2 = (c_first + sign_of(branch) * disc) / (2.0 * (s + u_first));

  const int count = switch_count(family, n);
  const double root_s = std::sqrt(s);
  std::vector<PhaseState> points;
  points.reserve(static_cast<std::size_t>(count));
  double sign = odd ? 1.0 : -1.0;
  // Arcs between consecutive switchings alternate, starting with the control
  // opposite to the initial one.
  bool next_is_upper = odd;
  for (int j = 0; j < count; ++j) {
    if (!(kappa2 > 0.0) || !std::isfinite(kappa2)) throw InconsistentRoot("non-positive kappa^2 at a switching");
    const double kappa = std::sqrt(kappa2);
    points.push_back({kappa, sign * root_s * kappa});
    const double u = next_is_upper ? spec.u2 : spec.u1;
    kappa2 = 1.0 / (kappa2 * (s + u));
    sign = -sign;
    next_is_upper = !next_is_upper;
  }
  return points;
}

ExtremalSolution make_solution(double s, ExtremalFamily family, int n, Branch branch, const ProblemSpec& spec) {
  ExtremalSolution sol;
  sol.family = family;
  sol.n = n;
  sol.branch = branch;
  sol.s = s;
  sol.times = segment_times(s, family, n, branch, spec);
  sol.total_time = assemble_total_time(family, n, sol.times);
  sol.switching_points = switching_points(s, family, n, branch, spec);
  return sol;
}

bool candidate_less(const ExtremalSolution& a, const ExtremalSolution& b) {
  return std::tuple(a.total_time, a.switch_count(), a.branch == Branch::Plus ? 0 : 1, a.s) <
         std::tuple(b.total_time, b.switch_count(), b.branch == Branch::Plus ? 0 : 1, b.s);
}

std::vector<ExtremalSolution> enumerate_candidates(const ProblemSpec& spec, const SolverConfig& cfg) {
  validate(spec);
  cfg.validate();

  struct Job {
    ExtremalFamily family;
    int n;
    Branch branch;
  };
  std::vector<Job> jobs;
  for (int n = 0; n <= cfg.n_max; ++n)
    for (Branch b : {Branch::Plus, Branch::Minus}) jobs.push_back({ExtremalFamily::OddStartsWithX, n, b});
  if (spec.u2 > 1.0)
    for (int n = 1; n <= cfg.n_max; ++n)
      for (Branch b : {Branch::Plus, Branch::Minus}) jobs.push_back({ExtremalFamily::EvenStartsWithY, n, b});

  std::vector<std::vector<ExtremalSolution>> found(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    for (double s : solve_s(job.family, job.n, job.branch, spec, cfg)) {
      if (!(s > 0.0)) continue;
      try {
        ExtremalSolution sol = make_solution(s, job.family, job.n, job.branch, spec);
        if (validate_solution(sol, spec, cfg.validate_tol).passed) found[i].push_back(std::move(sol));
      } catch (const InconsistentRoot&) {
      } catch (const DomainError&) {
      }
    }
  });

  std::vector<ExtremalSolution> all;
  for (auto& list : found)
    for (auto& sol : list) all.push_back(std::move(sol));
  std::sort(all.begin(), all.end(), candidate_less);

  const bool has_xy = std::any_of(all.begin(), all.end(), [](const ExtremalSolution& s) {
    return s.family == ExtremalFamily::OddStartsWithX && s.n == 0;
  });
  if (!has_xy) throw SolverFailure("no single-switching XY extremal was found");
  return all;
}

OptimalProtocol select_optimal(const std::vector<ExtremalSolution>& candidates, const ProblemSpec& spec,
                               const SolverConfig& cfg) {
  if (candidates.empty()) throw SolverFailure("no validated extremal");
  const auto best = std::min_element(candidates.begin(), candidates.end(), candidate_less);
  OptimalProtocol out{*best, to_protocol(*best, spec), best->n == cfg.n_max};
  return out;
}

OptimalProtocol optimal_protocol(const ProblemSpec& spec, const SolverConfig& cfg) {
  return select_optimal(enumerate_candidates(spec, cfg), spec, cfg);
}

}  // namespace toto
