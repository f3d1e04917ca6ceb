#pragma once

#include <string>
#include <vector>

#include "toto/core_model.hpp"
#include "toto/problem.hpp"
#include "toto/protocol.hpp"

namespace toto {

/// OddStartsWithX: X Y X ... X Y with 2n+1 switchings, n >= 0.
/// EvenStartsWithY: Y X Y ... X Y with 2n switchings, n >= 1.
/// X arcs use the lower control u1, Y arcs the upper control u2.
enum class ExtremalFamily { OddStartsWithX, EvenStartsWithY };

/// Root choice for the first switching point: Plus takes the larger root
/// for kappa_1^2, Minus the smaller.
enum class Branch { Plus, Minus };

inline double sign_of(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }
inline char symbol(Branch b) { return b == Branch::Plus ? '+' : '-'; }

const char* to_string(ExtremalFamily family);
const char* to_string(Branch branch);

inline int switch_count(ExtremalFamily family, int n) {
  return family == ExtremalFamily::OddStartsWithX ? 2 * n + 1 : 2 * n;
}

/// Row label such as "T3+" or "T4-".
std::string label(ExtremalFamily family, int n, Branch branch);

struct SegmentTimes {
  double t_initial = 0.0;
  double t_x = 0.0;  // every intermediate X arc
  double t_y = 0.0;  // every intermediate Y arc
  double t_final = 0.0;
};

struct ExtremalSolution {
  ExtremalFamily family = ExtremalFamily::OddStartsWithX;
  int n = 0;
  Branch branch = Branch::Plus;
  double s = 0.0;
  SegmentTimes times;
  double total_time = 0.0;
  std::vector<PhaseState> switching_points;

  int switch_count() const { return toto::switch_count(family, n); }
  std::string label() const { return toto::label(family, n, branch); }
  int intermediate_x_count() const { return n; }
  int intermediate_y_count() const { return family == ExtremalFamily::OddStartsWithX ? n : n - 1; }
};

/// Total time assembled from segment durations for the given family.
double assemble_total_time(ExtremalFamily family, int n, const SegmentTimes& times);

/// Executable schedule: [u1, u2, u1, ..., u2] for the odd family,
/// [u2, u1, ..., u2] for the even family.
BangBangProtocol to_protocol(const ExtremalSolution& solution, const ProblemSpec& spec);

}  // namespace toto
