#ifndef LP2_CRITICAL_HPP_
#define LP2_CRITICAL_HPP_

#include <cmath>

#include "lp2/core.hpp"

namespace lp2 {

// Slack absorbed into every verified inequality.
inline constexpr double kSafetyMargin = 1e-9;

// |t^{p-1} - t| / (1 + t^p), the numerical-radius integrand of the rotation.
inline double rotation_profile(double t, const Exponent& e) {
  if (t == 0.0) return 0.0;
  const double p = e.p();
  return std::abs(std::pow(t, p - 1.0) - t) / (1.0 + std::pow(t, p));
}

// d/dt (t^{p-1} - t) / (1 + t^p) on the open interval (0, 1).
inline double phi_derivative(double t, const Exponent& e) {
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError(detail::Concat("phi_derivative: t must lie in (0, 1), got ", t));
  }
  const double p = e.p();
  const double tp = std::pow(t, p);
  const double tpm1 = std::pow(t, p - 1.0);
  const double tpm2 = tpm1 / t;
  const double denom = 1.0 + tp;
  return (((p - 1.0) * tpm2 - 1.0) * denom - p * tpm1 * (tpm1 - t)) / (denom * denom);
}

struct CriticalPoint {
  double p = 0.0;
  double t0 = 0.0;
  double mp = 0.0;
  double derivative_residual = 0.0;
  bool degenerate = false;  // p == 2: the profile vanishes identically
};

// M_p = max_{t in [0,1]} |t^{p-1} - t| / (1 + t^p) together with its maximizer t0.
//
// The grid maximizer is polished by bisection on the sign of phi_derivative,
// starting from the two grid cells around it (clamped away from the singular
// endpoints).
inline CriticalPoint compute_mp(const Exponent& e, double tol = kDefaultTol,
                                int grid_n = kDefaultGrid) {
  if (!(tol > 0.0)) throw DomainError("compute_mp: tol must be positive");
  CriticalPoint out;
  out.p = e.p();
  if (e.p() == 2.0) {
    out.degenerate = true;
    return out;
  }

  const BracketedMax coarse =
      maximize_1d([&](double t) { return rotation_profile(t, e); }, 0.0, 1.0, grid_n, tol);

  constexpr double kEdge = 1e-12;
  const double cell = 1.0 / grid_n;
  double lo = std::max(coarse.argmax - cell, kEdge);
  double hi = std::min(coarse.argmax + cell, 1.0 - kEdge);
  double t0 = coarse.argmax;
  double f_lo = phi_derivative(lo, e);
  const double f_hi = phi_derivative(hi, e);
  if ((f_lo > 0.0) != (f_hi > 0.0)) {
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      const double f_mid = phi_derivative(mid, e);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid > 0.0) == (f_lo > 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    t0 = 0.5 * (lo + hi);
  }
  out.t0 = t0;
  out.mp = rotation_profile(t0, e);
  if (t0 > 0.0 && t0 < 1.0) out.derivative_residual = phi_derivative(t0, e);
  return out;
}

// Bracketing of t0 and the exponent inequality t0^{2p-3} <= q/p, valid on
// 6/5 <= p <= 3/2.
struct BoundsReport {
  double p = 0.0;
  double lower = 0.0;
  double t0 = 0.0;
  double upper = 0.0;
  double exponent_check_lhs = 0.0;  // t0^{2p-3}
  double exponent_check_rhs = 0.0;  // q/p
  bool all_hold = false;
  double margin = 0.0;  // smallest raw slack of the three inequalities
  bool in_hypothesis = false;
};

inline constexpr double kLemmaPMin = 6.0 / 5.0;
inline constexpr double kLemmaPMax = 3.0 / 2.0;

inline BoundsReport lemma21_bounds(const Exponent& e, double tol = kDefaultTol) {
  const double p = e.p();
  BoundsReport r;
  r.p = p;
  r.in_hypothesis = p >= kLemmaPMin && p <= kLemmaPMax;
  r.lower = std::pow((2.0 * p - 2.0) / (4.0 - p), 1.0 / (2.0 - p));
  r.upper = std::pow((p - 1.0) / (2.0 * p + 1.0), 1.0 / p);
  r.t0 = compute_mp(e, tol).t0;
  r.exponent_check_lhs = std::pow(r.t0, 2.0 * p - 3.0);
  r.exponent_check_rhs = e.q() / p;
  r.margin = std::min({r.t0 - r.lower, r.upper - r.t0, r.exponent_check_rhs - r.exponent_check_lhs});
  r.all_hold = r.margin - kSafetyMargin > 0.0;
  return r;
}

}  // namespace lp2

#endif  // LP2_CRITICAL_HPP_
