#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace toto {

struct NelderMeadOptions {
  int max_evaluations = 20000;
  /// Stop when the spread of simplex values falls below f_tol.
  double f_tol = 1e-13;
  /// and the simplex diameter below x_tol.
  double x_tol = 1e-10;
  double initial_step = 0.25;
};

template <typename Scalar>
struct NelderMeadResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value{};
  int evaluations = 0;
};

/// Standard simplex search (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) on an axis-aligned initial simplex around x0.
template <typename Scalar, typename Objective>
NelderMeadResult<Scalar> nelder_mead(Objective&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
                                     const NelderMeadOptions& opt = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index dim = x0.size();

  Matrix simplex(dim, dim + 1);
  Vector values(dim + 1);
  int evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    const Scalar v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<Scalar>::max();
  };

  simplex.col(0) = x0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    simplex.col(i + 1) = x0;
    simplex(i, i + 1) += opt.initial_step;
  }
  for (Eigen::Index i = 0; i <= dim; ++i) values(i) = eval(simplex.col(i));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim + 1));
  while (evals < opt.max_evaluations) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
    const Eigen::Index best = order.front(), worst = order.back(), second = order[order.size() - 2];

    const Scalar spread = values(worst) - values(best);
    Scalar diameter = 0;
    for (Eigen::Index i = 0; i <= dim; ++i)
      diameter = std::max(diameter, (simplex.col(i) - simplex.col(best)).template lpNorm<Eigen::Infinity>());
    if (spread <= opt.f_tol && diameter <= opt.x_tol) break;

    const Vector centroid = (simplex.rowwise().sum() - simplex.col(worst)) / static_cast<Scalar>(dim);
    const Vector reflected = centroid + (centroid - simplex.col(worst));
    const Scalar f_reflected = eval(reflected);

    if (f_reflected < values(best)) {
      const Vector expanded = centroid + Scalar(2) * (centroid - simplex.col(worst));
      const Scalar f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex.col(worst) = expanded;
        values(worst) = f_expanded;
      } else {
        simplex.col(worst) = reflected;
        values(worst) = f_reflected;
      }
      continue;
    }
    if (f_reflected < values(second)) {
      simplex.col(worst) = reflected;
      values(worst) = f_reflected;
      continue;
    }

    const bool outside = f_reflected < values(worst);
    const Vector contracted = outside ? Vector(centroid + Scalar(0.5) * (reflected - centroid))
                                      : Vector(centroid + Scalar(0.5) * (simplex.col(worst) - centroid));
    const Scalar f_contracted = eval(contracted);
    if (f_contracted < (outside ? f_reflected : values(worst))) {
      simplex.col(worst) = contracted;
      values(worst) = f_contracted;
      continue;
    }

    for (Eigen::Index i = 0; i <= dim; ++i) {
      if (i == best) continue;
      simplex.col(i) = simplex.col(best) + Scalar(0.5) * (simplex.col(i) - simplex.col(best));
      values(i) = eval(simplex.col(i));
    }
  }

  Eigen::Index best = 0;
  values.minCoeff(&best);
  return {simplex.col(best), values(best), evals};
}

}  // namespace toto
