#ifndef LP2_NORMS_HPP_
#define LP2_NORMS_HPP_

#include <cmath>

#include "lp2/core.hpp"

namespace lp2 {

inline constexpr double kDefaultOpNormTol = 1e-10;

// l_p norm of a vector in R^2, computed with the larger magnitude factored out.
inline double vec_norm(const Vec2& x, const Exponent& e) {
  const double ax = std::abs(x.x1);
  const double ay = std::abs(x.x2);
  if (!std::isfinite(ax) || !std::isfinite(ay)) throw DomainError("vector entries must be finite");
  const double m = std::max(ax, ay);
  if (m == 0.0) return 0.0;
  const double p = e.p();
  return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

// Maximum absolute column sum; the operator norm on l_1^2.
inline double norm_1(const Mat2& t) {
  return std::max(std::abs(t.a) + std::abs(t.c), std::abs(t.b) + std::abs(t.d));
}

// Maximum absolute row sum; the operator norm on l_inf^2.
inline double norm_inf(const Mat2& t) {
  return std::max(std::abs(t.a) + std::abs(t.b), std::abs(t.c) + std::abs(t.d));
}

// Interpolation bound |T|_1^{1/p} |T|_inf^{1/q} for the l_p operator norm.
inline double riesz_thorin_bound(const Mat2& t, const Exponent& e) {
  const double n1 = norm_1(t);
  const double ninf = norm_inf(t);
  if (n1 == 0.0 || ninf == 0.0) return 0.0;
  return std::pow(n1, 1.0 / e.p()) * std::pow(ninf, 1.0 / e.q());
}

// Unit vector on the l_p sphere encoded by a chart parameter.
//
// With swapped == false the vector is (s, sign * (1 - s^p)^{1/p}); otherwise
// the coordinates are exchanged, giving ((1 - s^p)^{1/p}, sign * s).
struct SphereChartPoint {
  double s = 0.0;
  int sign = 1;
  bool swapped = false;

  Vec2 vector(const Exponent& e) const {
    const double p = e.p();
    const double rest = s >= 1.0 ? 0.0 : std::pow(1.0 - std::pow(s, p), 1.0 / p);
    if (swapped) return {rest, sign * s};
    return {s, sign * rest};
  }
};

struct OpNormResult {
  double norm = 0.0;
  SphereChartPoint witness;
  double tol = 0.0;
};

// Operator norm of T on l_p^2 as the supremum of |Tx|_p over the unit sphere.
//
// Two overlapping charts cover the sphere; homogeneity (x -> -x) leaves only
// the relative sign of the coordinates to scan, giving four 1-D maximizations.
inline OpNormResult op_norm(const Mat2& t, const Exponent& e, double tol = kDefaultOpNormTol,
                            int grid_n = kDefaultGrid) {
  if (!(tol > 0.0)) throw DomainError("op_norm: tol must be positive");
  require_finite(t);

  OpNormResult best;
  bool first = true;
  for (const bool swapped : {false, true}) {
    for (const int sign : {1, -1}) {
      auto objective = [&](double s) {
        const SphereChartPoint pt{s, sign, swapped};
        return vec_norm(t * pt.vector(e), e);
      };
      const BracketedMax m = maximize_1d(objective, 0.0, 1.0, grid_n, tol);
      if (first || m.value > best.norm) {
        best.norm = m.value;
        best.witness = {m.argmax, sign, swapped};
        best.tol = m.tol;
        first = false;
      }
    }
  }
  return best;
}

}  // namespace lp2

#endif  // LP2_NORMS_HPP_
