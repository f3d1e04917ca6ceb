#pragma once

#include <cmath>

#include <Eigen/Core>

#include "toto/errors.hpp"

namespace toto {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Point (x1, x2) of the reduced system x1' = x2, x2' = -u x1 + 1/x1^3.
/// x1 is the width of the oscillator state relative to the initial
/// equilibrium, x2 its rate of change.
template <typename Scalar>
struct BasicPhaseState {
  Scalar x1{1};
  Scalar x2{0};

  Vector2<Scalar> vector() const { return {x1, x2}; }
  static BasicPhaseState from(const Vector2<Scalar>& v) { return {v(0), v(1)}; }

  friend bool operator==(const BasicPhaseState&, const BasicPhaseState&) = default;
};

/// Scaled second moments: z1 ~ <q^2>, z2 ~ <p^2>, z3 ~ <qp + pq>.
template <typename Scalar>
struct BasicZState {
  Scalar z1{1};
  Scalar z2{1};
  Scalar z3{0};
};

using PhaseState = BasicPhaseState<double>;
using ZState = BasicZState<double>;

template <typename Scalar>
inline void require_positive_width(const BasicPhaseState<Scalar>& s) {
  if (!(s.x1 > Scalar(0))) throw DomainError("phase state left the domain x1 > 0");
}

template <typename Scalar>
Vector2<Scalar> dynamics_rhs(const BasicPhaseState<Scalar>& s, Scalar u) {
  require_positive_width(s);
  const Scalar x1_3 = s.x1 * s.x1 * s.x1;
  return {s.x2, -u * s.x1 + Scalar(1) / x1_3};
}

/// x2^2 + u x1^2 + 1/x1^2, constant along any arc with fixed control u.
template <typename Scalar>
Scalar first_integral(const BasicPhaseState<Scalar>& s, Scalar u) {
  require_positive_width(s);
  const Scalar x1_2 = s.x1 * s.x1;
  return s.x2 * s.x2 + u * x1_2 + Scalar(1) / x1_2;
}

template <typename Scalar>
BasicZState<Scalar> to_z_space(const BasicPhaseState<Scalar>& s) {
  require_positive_width(s);
  const Scalar x1_2 = s.x1 * s.x1;
  return {x1_2, s.x2 * s.x2 + Scalar(1) / x1_2, Scalar(2) * s.x1 * s.x2};
}

/// z1 z2 - z3^2/4; equals 1 for every image of to_z_space.
template <typename Scalar>
Scalar casimir(const BasicZState<Scalar>& z) {
  return z.z1 * z.z2 - z.z3 * z.z3 / Scalar(4);
}

}  // namespace toto
