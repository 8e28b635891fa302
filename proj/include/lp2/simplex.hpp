#ifndef LP2_SIMPLEX_HPP_
#define LP2_SIMPLEX_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace lp2 {

template <std::size_t N>
using Point = std::array<double, N>;

struct SimplexOptions {
  double initial_step = 0.05;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  int max_iterations = 400;
  double f_tol = 1e-13;  // stop once the value spread and
  double x_tol = 1e-9;   // the simplex diameter are both this small
};

template <std::size_t N>
struct SimplexResult {
  Point<N> x{};
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  long evaluations = 0;
};

// Folds a coordinate back into [0, 1] by mirror reflection at the faces.
inline double reflect_unit(double x) {
  if (x >= 0.0 && x <= 1.0) return x;
  x = std::fmod(std::abs(x), 2.0);
  return x > 1.0 ? 2.0 - x : x;
}

template <std::size_t N>
Point<N> reflect_unit(Point<N> x) {
  for (auto& v : x) v = reflect_unit(v);
  return x;
}

// Nelder-Mead minimization on the unit cube [0, 1]^N.
//
// Trial points leaving the cube are mirrored back inside. The objective may
// return +inf to mark points it rejects.
template <std::size_t N, typename F>
SimplexResult<N> nelder_mead_unit_cube(F&& f, const Point<N>& start, const SimplexOptions& opt = {}) {
  SimplexResult<N> out;
  auto eval = [&](const Point<N>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::array<Point<N>, N + 1> xs;
  std::array<double, N + 1> fs;
  xs[0] = reflect_unit(start);
  for (std::size_t i = 0; i < N; ++i) {
    xs[i + 1] = xs[0];
    xs[i + 1][i] = reflect_unit(xs[0][i] + opt.initial_step);
  }
  for (std::size_t i = 0; i <= N; ++i) fs[i] = eval(xs[i]);

  std::array<std::size_t, N + 1> order;
  auto sort_simplex = [&] {
    for (std::size_t i = 0; i <= N; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return fs[i] < fs[j]; });
    std::array<Point<N>, N + 1> xs2;
    std::array<double, N + 1> fs2;
    for (std::size_t i = 0; i <= N; ++i) {
      xs2[i] = xs[order[i]];
      fs2[i] = fs[order[i]];
    }
    xs = xs2;
    fs = fs2;
  };

  auto combine = [](const Point<N>& base, const Point<N>& toward, double coef) {
    Point<N> r;
    for (std::size_t k = 0; k < N; ++k) r[k] = base[k] + coef * (base[k] - toward[k]);
    return reflect_unit(r);
  };

  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    sort_simplex();
    double diameter = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t k = 0; k < N; ++k) diameter = std::max(diameter, std::abs(xs[i][k] - xs[0][k]));
    }
    if (std::isfinite(fs[N]) && fs[N] - fs[0] <= opt.f_tol && diameter <= opt.x_tol) break;

    Point<N> centroid{};
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) centroid[k] += xs[i][k] / static_cast<double>(N);
    }

    const Point<N> xr = combine(centroid, xs[N], opt.reflection);
    const double fr = eval(xr);
    if (fr < fs[0]) {
      const Point<N> xe = combine(centroid, xs[N], opt.expansion);
      const double fe = eval(xe);
      if (fe < fr) {
        xs[N] = xe;
        fs[N] = fe;
      } else {
        xs[N] = xr;
        fs[N] = fr;
      }
      continue;
    }
    if (fr < fs[N - 1]) {
      xs[N] = xr;
      fs[N] = fr;
      continue;
    }
    const bool outside = fr < fs[N];
    const Point<N> xc = outside ? combine(centroid, xs[N], opt.contraction * opt.reflection)
                                : combine(centroid, xs[N], -opt.contraction);
    const double fc = eval(xc);
    if (fc < std::min(fr, fs[N])) {
      xs[N] = xc;
      fs[N] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t k = 0; k < N; ++k) xs[i][k] = xs[0][k] + opt.shrink * (xs[i][k] - xs[0][k]);
      fs[i] = eval(xs[i]);
    }
  }
  sort_simplex();
  out.x = xs[0];
  out.value = fs[0];
  out.iterations = it;
  return out;
}

}  // namespace lp2

#endif  // LP2_SIMPLEX_HPP_
