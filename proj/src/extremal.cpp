#include "toto/extremal.hpp"

namespace toto {

const char* to_string(ExtremalFamily family) {
  return family == ExtremalFamily::OddStartsWithX ? "odd_starts_with_x" : "even_starts_with_y";
}

const char* to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

std::string label(ExtremalFamily family, int n, Branch branch) {
  return "T" + std::to_string(switch_count(family, n)) + symbol(branch);
}

double assemble_total_time(ExtremalFamily family, int n, const SegmentTimes& t) {
  const double ny = family == ExtremalFamily::OddStartsWithX ? n : n - 1;
  return t.t_initial + n * t.t_x + ny * t.t_y + t.t_final;
}

BangBangProtocol to_protocol(const ExtremalSolution& sol, const ProblemSpec& spec) {
  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(sol.switch_count()) + 1);
  const SegmentTimes& t = sol.times;
  if (sol.family == ExtremalFamily::OddStartsWithX) {
    segs.push_back({spec.u1, t.t_initial});
    for (int k = 0; k < sol.n; ++k) {
      segs.push_back({spec.u2, t.t_y});
      segs.push_back({spec.u1, t.t_x});
    }
  } else {
    segs.push_back({spec.u2, t.t_initial});
    for (int k = 0; k < sol.n; ++k) {
      if (k > 0) segs.push_back({spec.u2, t.t_y});
      segs.push_back({spec.u1, t.t_x});
    }
  }
  segs.push_back({spec.u2, t.t_final});
  return BangBangProtocol(std::move(segs));
}

}  // namespace toto
