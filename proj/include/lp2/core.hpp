#ifndef LP2_CORE_HPP_
#define LP2_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lp2 {

// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when an objective produces a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename... Args>
std::string Concat(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

}  // namespace detail

inline constexpr int kDefaultGrid = 4096;
inline constexpr double kDefaultTol = 1e-12;

// A Hoelder exponent 1 < p < inf together with its conjugate q = p/(p-1).
class Exponent {
 public:
  explicit Exponent(double p) : p_(p) {
    if (!std::isfinite(p) || !(p > 1.0)) {
      throw DomainError(detail::Concat("exponent must be finite and > 1, got ", p));
    }
    q_ = p / (p - 1.0);
  }

  double p() const { return p_; }
  double q() const { return q_; }
  Exponent conjugate() const { return Exponent(q_); }

 private:
  double p_;
  double q_;
};

inline Exponent make_exponent(double p) { return Exponent(p); }

// Real 2x2 matrix (a b; c d) acting on column vectors.
struct Mat2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  bool is_finite() const {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
  }
  bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0; }

  Mat2 transposed() const { return {a, c, b, d}; }
  Mat2 scaled(double s) const { return {s * a, s * b, s * c, s * d}; }
  double max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  }

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 rotation() { return {0.0, 1.0, -1.0, 0.0}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline void require_finite(const Mat2& m) {
  if (!m.is_finite()) throw DomainError("matrix entries must be finite");
}

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
  return {m.a * v.x1 + m.b * v.x2, m.c * v.x1 + m.d * v.x2};
}

// Result of a bracketed one-dimensional maximization.
struct BracketedMax {
  double value = 0.0;
  double argmax = 0.0;
  double tol = 0.0;  // half-width of the final bracket around argmax
  std::int64_t evaluations = 0;
};

// Maximizes `objective` on [lo, hi].
//
// The objective is first sampled on grid_n + 1 equispaced points (both
// endpoints included exactly); the best grid cell pair around the best sample
// is then refined by golden-section search until the bracket half-width is at
// most `tol`. The returned point is the best one ever evaluated, so the value
// never falls below the best grid sample. Only piecewise unimodality near the
// grid maximizer is assumed.
template <typename F>
BracketedMax maximize_1d(F&& objective, double lo, double hi, int grid_n = kDefaultGrid,
                         double tol = kDefaultTol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError(detail::Concat("invalid bracket [", lo, ", ", hi, "]"));
  }
  if (grid_n < 3) throw DomainError("grid_n must be at least 3");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");

  BracketedMax out;
  auto eval = [&](double t) {
    const double v = objective(t);
    ++out.evaluations;
    if (!std::isfinite(v)) {
      throw EvaluationError(detail::Concat("objective is not finite at t = ", t));
    }
    return v;
  };

  const double width = hi - lo;
  auto grid_point = [&](int k) {
    if (k == grid_n) return hi;
    return lo + width * (static_cast<double>(k) / grid_n);
  };

  int best_k = 0;
  double best_v = eval(lo);
  for (int k = 1; k <= grid_n; ++k) {
    const double v = eval(grid_point(k));
    if (v > best_v) {
      best_v = v;
      best_k = k;
    }
  }

  double best_t = grid_point(best_k);
  double left = grid_point(std::max(best_k - 1, 0));
  double right = grid_point(std::min(best_k + 1, grid_n));

  auto consider = [&](double t, double v) {
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  };

  static constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = right - kInvPhi * (right - left);
  double x2 = left + kInvPhi * (right - left);
  double f1 = eval(x1);
  double f2 = eval(x2);
  consider(x1, f1);
  consider(x2, f2);
  while (0.5 * (right - left) > tol) {
    if (f1 >= f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - kInvPhi * (right - left);
      if (!(x1 > left && x1 < x2)) break;  // bracket exhausted at machine precision
      f1 = eval(x1);
      consider(x1, f1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + kInvPhi * (right - left);
      if (!(x2 > x1 && x2 < right)) break;
      f2 = eval(x2);
      consider(x2, f2);
    }
  }

  // The best point can sit outside the final golden bracket when the
  // objective is not unimodal on the refined cell; report the bracket
  // that actually contains it.
  double half = 0.5 * (right - left);
  if (best_t < left || best_t > right) {
    half = width / grid_n;
  }
  out.value = best_v;
  out.argmax = best_t;
  out.tol = half;
  return out;
}

// Equispaced exponents from pmin to pmax inclusive; endpoints are exact.
inline std::vector<double> p_grid(double pmin, double pmax, int n) {
  std::vector<double> ps;
  if (n == 1) return {pmin};
  ps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ps.push_back(i == n - 1 ? pmax : pmin + (pmax - pmin) * (static_cast<double>(i) / (n - 1)));
  }
  return ps;
}

}  // namespace lp2

#endif  // LP2_CORE_HPP_
