#ifndef LP2_RADIUS_HPP_
#define LP2_RADIUS_HPP_

#include <cmath>

#include "lp2/core.hpp"

namespace lp2 {

enum class RadiusBranch { kFirst, kSecond };

inline const char* to_string(RadiusBranch b) {
  return b == RadiusBranch::kFirst ? "first" : "second";
}

struct RadiusResult {
  double value = 0.0;
  RadiusBranch branch = RadiusBranch::kFirst;
  double t_star = 0.0;
  double tol = 0.0;
};

namespace detail {

// (|x + y t^p| + |u t + w t^{p-1}|) / (1 + t^p), with the exact limit |x| at t = 0.
inline double radius_integrand(double x, double y, double u, double w, double t, double p) {
  if (t == 0.0) return std::abs(x);
  const double tp = std::pow(t, p);
  const double tpm1 = std::pow(t, p - 1.0);
  return (std::abs(x + y * tp) + std::abs(u * t + w * tpm1)) / (1.0 + tp);
}

}  // namespace detail

// Integrand of the first (x = (1, +-t) direction) or second branch at t.
inline double radius_branch_value(const Mat2& m, const Exponent& e, RadiusBranch branch, double t) {
  if (branch == RadiusBranch::kFirst) {
    return detail::radius_integrand(m.a, m.d, m.b, m.c, t, e.p());
  }
  return detail::radius_integrand(m.d, m.a, m.c, m.b, t, e.p());
}

// Numerical radius of a 2x2 operator on real l_p^2 from the two-branch
// closed form
//
//   v(T) = max{ max_t (|a + d t^p| + |b t + c t^{p-1}|) / (1 + t^p),
//               max_t (|d + a t^p| + |c t + b t^{p-1}|) / (1 + t^p) },  t in [0, 1].
//
// Branches whose maxima differ by at most `tol` report the first branch.
inline RadiusResult numerical_radius(const Mat2& m, const Exponent& e, double tol = kDefaultTol,
                                     int grid_n = kDefaultGrid) {
  if (!(tol > 0.0)) throw DomainError("numerical_radius: tol must be positive");
  require_finite(m);
  const BracketedMax first = maximize_1d(
      [&](double t) { return radius_branch_value(m, e, RadiusBranch::kFirst, t); }, 0.0, 1.0,
      grid_n, tol);
  const BracketedMax second = maximize_1d(
      [&](double t) { return radius_branch_value(m, e, RadiusBranch::kSecond, t); }, 0.0, 1.0,
      grid_n, tol);
  if (second.value > first.value + tol) {
    return {second.value, RadiusBranch::kSecond, second.argmax, second.tol};
  }
  return {first.value, RadiusBranch::kFirst, first.argmax, first.tol};
}

// Brute-force numerical radius straight from the definition: the supremum of
// |x*(Tx)| over the unit sphere, with x* the duality map of x.
//
// The sphere is parametrized as x = (sigma s, (1 - s^p)^{1/p}), s in [0, 1];
// the best sampled cell is polished by golden-section search. Shares no code
// with numerical_radius.
inline double radius_oracle(const Mat2& m, const Exponent& e, int grid_n = 4096) {
  if (grid_n < 16) throw DomainError("radius_oracle: grid_n must be at least 16");
  require_finite(m);
  const double p = e.p();

  auto pairing = [&](double s, double sigma) {
    const double x1 = sigma * s;
    const double x2 = s >= 1.0 ? 0.0 : std::pow(1.0 - std::pow(s, p), 1.0 / p);
    const double y1 = m.a * x1 + m.b * x2;
    const double y2 = m.c * x1 + m.d * x2;
    const double f1 = std::copysign(std::pow(std::abs(x1), p - 1.0), x1);
    const double f2 = std::pow(x2, p - 1.0);
    return std::abs(f1 * y1 + f2 * y2);
  };

  // Best sampled cell for each relative sign; both are polished because the
  // two signs meet at s = 1 and a tie there hides which side holds the peak.
  double best = -1.0;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (const double sigma : {1.0, -1.0}) {
    double cell_best = -1.0;
    int best_k = 0;
    for (int k = 0; k <= grid_n; ++k) {
      const double s = k == grid_n ? 1.0 : static_cast<double>(k) / grid_n;
      const double v = pairing(s, sigma);
      if (v > cell_best) {
        cell_best = v;
        best_k = k;
      }
    }
    double lo = static_cast<double>(std::max(best_k - 1, 0)) / grid_n;
    double hi = static_cast<double>(std::min(best_k + 1, grid_n)) / grid_n;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double u = hi - g * (hi - lo);
      const double w = lo + g * (hi - lo);
      const double fu = pairing(u, sigma);
      const double fw = pairing(w, sigma);
      cell_best = std::max({cell_best, fu, fw});
      if (fu >= fw) {
        hi = w;
      } else {
        lo = u;
      }
    }
    best = std::max(best, cell_best);
  }
  return best;
}

// S^{-1} T S for the coordinate swap S = (0 1; 1 0).
inline Mat2 conjugate_by_swap(const Mat2& m) { return {m.d, m.c, m.b, m.a}; }

// The sign-flattened operator (|a| |b|; -|c| -|d|): no smaller norm, no larger radius.
inline Mat2 sign_flatten(const Mat2& m) {
  return {std::abs(m.a), std::abs(m.b), -std::abs(m.c), -std::abs(m.d)};
}

}  // namespace lp2

#endif  // LP2_RADIUS_HPP_
