#include <cmath>
#include <random>

#include "doctest.h"

#include "toto/analytic_solver.hpp"
#include "toto/errors.hpp"
#include "toto/validation.hpp"

using namespace toto;

namespace {

const double kPi = std::acos(-1.0);
const double kSqrt3 = std::sqrt(3.0);
constexpr double kU1 = 0.0002;

using F = ExtremalFamily;

const ExtremalSolution* find(const std::vector<ExtremalSolution>& c, const std::string& label) {
  for (const ExtremalSolution& s : c)
    if (s.label() == label) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("admissible interval") {
  const ProblemSpec a{kSqrt3, kU1, 1.0};
  CHECK(admissible_s_max(F::EvenStartsWithY, a) == 0.0);
  CHECK(admissible_s_max(F::OddStartsWithX, a) > 0.0);
  const ProblemSpec b{8.0, kU1, 4.0};
  CHECK(admissible_s_max(F::EvenStartsWithY, b) == doctest::Approx(9.0 / 4.0));
  const double odd = std::min((1 - kU1) * (1 - kU1) / 4, std::pow(4.0 * 64 - 1.0 / 64, 2) / 4);
  CHECK(admissible_s_max(F::OddStartsWithX, b) == doctest::Approx(odd));
}

TEST_CASE("residual outside the interval is a domain error") {
  const ProblemSpec spec{kSqrt3, kU1, 6.5};
  const double smax = admissible_s_max(F::OddStartsWithX, spec);
  CHECK_NOTHROW(residual_odd(smax, 0, Branch::Plus, spec));
  CHECK_THROWS_AS(residual_odd(smax * 1.01, 0, Branch::Plus, spec), DomainError);
  CHECK_THROWS(residual_even(0.1, 1, Branch::Plus, ProblemSpec{kSqrt3, kU1, 1.0}));
}

TEST_CASE("solve_s root counts") {
  CHECK(solve_s(F::OddStartsWithX, 0, Branch::Plus, ProblemSpec{kSqrt3, kU1, 1.0}).size() == 1);
  for (int n = 1; n <= 4; ++n)
    for (Branch b : {Branch::Plus, Branch::Minus})
      CHECK(solve_s(F::EvenStartsWithY, n, b, ProblemSpec{kSqrt3, kU1, 1.0}).empty());
  for (Branch b : {Branch::Plus, Branch::Minus})
    CHECK(solve_s(F::OddStartsWithX, 2, b, ProblemSpec{8.0, kU1, 4.0}).empty());
}

TEST_CASE("segment_times at s = u") {
  // u2 = 9 makes both s = u1 and s = u2 admissible for the even family.
  const ProblemSpec spec{8.0, kU1, 9.0};
  const SegmentTimes tx = segment_times(spec.u1, F::EvenStartsWithY, 1, Branch::Plus, spec);
  CHECK(tx.t_x == doctest::Approx(kPi / (4.0 * std::sqrt(spec.u1))).epsilon(1e-12));
  const SegmentTimes ty = segment_times(spec.u2, F::EvenStartsWithY, 1, Branch::Plus, spec);
  CHECK(ty.t_y == doctest::Approx(3.0 * kPi / (4.0 * std::sqrt(spec.u2))).epsilon(1e-12));
}

TEST_CASE("(8, 4) YXYXY minus extremal") {
  const ProblemSpec spec{8.0, kU1, 4.0};
  const std::vector<double> roots = solve_s(F::EvenStartsWithY, 2, Branch::Minus, spec);
  REQUIRE(roots.size() == 1);
  const ExtremalSolution sol = make_solution(roots.front(), F::EvenStartsWithY, 2, Branch::Minus, spec);
  CHECK(sol.total_time == doctest::Approx(4.545836).epsilon(1e-6));
  CHECK(sol.label() == "T4-");
  CHECK(sol.switching_points.size() == 4);
}

TEST_CASE("switching-point recursion has the fixed point kappa = 1 at s + u = 1") {
  const ProblemSpec spec{kSqrt3, kU1, 1.0};
  const std::vector<double> roots = solve_s(F::OddStartsWithX, 0, Branch::Plus, spec);
  REQUIRE(roots.size() == 1);
  const double s = roots.front();
  const auto pts = switching_points(s, F::OddStartsWithX, 0, Branch::Plus, spec);
  REQUIRE(pts.size() == 1);
  const double k = pts[0].x1;
  CHECK(1.0 / (k * k * (s + 1.0)) * k * k * (s + 1.0) == doctest::Approx(1.0));
  CHECK(pts[0].x2 / pts[0].x1 == doctest::Approx(std::sqrt(s)).epsilon(1e-10));
}

TEST_CASE("switching geometry of every candidate in the four reference cases") {
  for (double gamma : {kSqrt3, 8.0}) {
    for (double u2 : (gamma == 8.0 ? std::vector<double>{1.0, 4.0} : std::vector<double>{1.0, 6.5})) {
      const ProblemSpec spec{gamma, kU1, u2};
      for (const ExtremalSolution& sol : enumerate_candidates(spec)) {
        const auto& p = sol.switching_points;
        REQUIRE(static_cast<int>(p.size()) == sol.switch_count());
        const double first_sign = sol.family == F::OddStartsWithX ? 1.0 : -1.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          CHECK(std::abs(p[j].x2) / p[j].x1 == doctest::Approx(std::sqrt(sol.s)).epsilon(1e-8));
          CHECK(p[j].x2 * first_sign * (j % 2 == 0 ? 1.0 : -1.0) > 0.0);
          if (j + 1 < p.size()) {
            // The arc between j and j+1 is X when the point j has x2 > 0... in the odd family.
            const bool x_arc = (sol.family == F::OddStartsWithX) == (j % 2 == 1);
            const double u = x_arc ? spec.u1 : spec.u2;
            const double k2 = p[j].x1 * p[j].x1, k2n = p[j + 1].x1 * p[j + 1].x1;
            CHECK(std::abs(k2 * k2n * (sol.s + u) - 1.0) < 1e-9);
          }
          if (j + 2 < p.size()) {
            // Odd family: kappa_1 < kappa_3 < ..., kappa_2 > kappa_4 > ...; mirrored for the even family.
            const bool rising = (j % 2 == 0) == (sol.family == F::OddStartsWithX);
            if (rising) CHECK(p[j].x1 < p[j + 2].x1);
            else CHECK(p[j].x1 > p[j + 2].x1);
          }
        }
      }
    }
  }
}

TEST_CASE("enumerate_candidates counts and times") {
  const auto a = enumerate_candidates(ProblemSpec{kSqrt3, kU1, 1.0});
  REQUIRE(a.size() == 1);
  CHECK(a[0].total_time == doctest::Approx(1.678466).epsilon(1e-6));

  const auto b = enumerate_candidates(ProblemSpec{kSqrt3, kU1, 6.5});
  REQUIRE(b.size() == 5);
  const std::vector<std::pair<std::string, double>> expected_b{
      {"T2-", 1.388834}, {"T1+", 1.451282}, {"T2+", 1.832076}, {"T4-", 2.538667}, {"T4+", 2.585755}};
  for (std::size_t i = 0; i < expected_b.size(); ++i) {
    CHECK(b[i].label() == expected_b[i].first);
    CHECK(b[i].total_time == doctest::Approx(expected_b[i].second).epsilon(1e-6));
  }

  const auto c = enumerate_candidates(ProblemSpec{8.0, kU1, 4.0});
  CHECK(c.size() == 11);
  CHECK(c.front().label() == "T4-");
  CHECK(c.front().total_time == doctest::Approx(4.545836).epsilon(1e-6));
  REQUIRE(find(c, "T8+") != nullptr);
  CHECK(find(c, "T8+")->total_time == doctest::Approx(7.065069).epsilon(1e-6));
  CHECK(find(c, "T5+") == nullptr);
  CHECK(find(c, "T5-") == nullptr);

  for (std::size_t i = 1; i < c.size(); ++i) CHECK(candidate_less(c[i - 1], c[i]));
}

TEST_CASE("optimal_protocol selections") {
  const OptimalProtocol a = optimal_protocol(ProblemSpec{kSqrt3, kU1, 1.0});
  CHECK(a.solution.label() == "T1+");
  CHECK(a.protocol.size() == 2);
  CHECK(a.protocol.segments().front().u == kU1);

  const OptimalProtocol b = optimal_protocol(ProblemSpec{kSqrt3, kU1, 6.5});
  CHECK(b.solution.label() == "T2-");
  CHECK(b.solution.family == F::EvenStartsWithY);
  CHECK(b.protocol.size() == 3);
  CHECK(b.solution.total_time == doctest::Approx(1.388834).epsilon(1e-6));

  const OptimalProtocol c = optimal_protocol(ProblemSpec{8.0, kU1, 1.0});
  CHECK(c.solution.label() == "T3+");
  CHECK(c.protocol.switch_count() == 3);
  CHECK(c.solution.total_time == doctest::Approx(7.386384).epsilon(1e-6));
  CHECK_FALSE(c.at_n_max);

  const OptimalProtocol d = optimal_protocol(ProblemSpec{8.0, kU1, 4.0});
  CHECK(d.solution.label() == "T4-");
  CHECK(d.protocol.total_time() == doctest::Approx(d.solution.total_time).epsilon(1e-12));
}

TEST_CASE("u2 = 1 never admits the even family") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> g(1.05, 10.0), f(0.01, 1.0);
  for (int i = 0; i < 25; ++i) {
    const double gamma = g(rng);
    const ProblemSpec spec{gamma, f(rng) / std::pow(gamma, 4), 1.0};
    SolverConfig cfg;
    cfg.n_max = 4;
    cfg.scan_points = 4000;
    for (const ExtremalSolution& s : enumerate_candidates(spec, cfg)) CHECK(s.family == F::OddStartsWithX);
  }
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.n_max = -1;
  CHECK_THROWS(cfg.validate());
  cfg = SolverConfig{};
  cfg.scan_points = 0;
  CHECK_THROWS(cfg.validate());
}
