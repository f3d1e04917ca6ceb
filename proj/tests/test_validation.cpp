#include <cmath>

#include "doctest.h"

#include "toto/analytic_solver.hpp"
#include "toto/validation.hpp"

using namespace toto;

TEST_CASE("the (8, 1) optimum validates") {
  const ProblemSpec spec{8.0, 0.0002, 1.0};
  const OptimalProtocol opt = optimal_protocol(spec);
  const ValidationReport r = validate_solution(opt.solution, spec);
  CHECK(r.passed);
  CHECK(r.failure.empty());
  CHECK(r.endpoint_error < 1e-6);
  CHECK(r.max_casimir_drift < 1e-9);
  CHECK(r.alternating_signs);
  CHECK(r.max_consecutive_residual < 1e-9);
}

TEST_CASE("a perturbed duration fails validation") {
  const ProblemSpec spec{8.0, 0.0002, 1.0};
  const OptimalProtocol opt = optimal_protocol(spec);
  for (std::size_t i = 0; i < opt.protocol.size(); ++i) {
    std::vector<Segment> segs = opt.protocol.segments();
    segs[i].duration += 0.01;
    const ValidationReport r = validate_protocol(BangBangProtocol(segs), spec);
    CHECK_FALSE(r.passed);
    CHECK(r.endpoint_error > 1e-4);
  }
}

TEST_CASE("an empty protocol fails with error |gamma - 1|") {
  const ProblemSpec spec{std::sqrt(3.0), 0.0002, 1.0};
  const ValidationReport r = validate_protocol(BangBangProtocol{}, spec);
  CHECK_FALSE(r.passed);
  CHECK(r.endpoint_error == doctest::Approx(std::sqrt(3.0) - 1.0));
}

TEST_CASE("protocols reject malformed segments") {
  CHECK_THROWS(BangBangProtocol({{1.0, 0.0}}));
  CHECK_THROWS(BangBangProtocol({{1.0, 0.1}, {1.0, 0.2}}));
  CHECK_THROWS(BangBangProtocol({{-1.0, 0.1}}));
  CHECK(BangBangProtocol({{1.0, 0.1}, {2.0, 0.2}}).total_time() == doctest::Approx(0.3));
}
