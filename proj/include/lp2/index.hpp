#ifndef LP2_INDEX_HPP_
#define LP2_INDEX_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <tuple>
#include <vector>

#include "lp2/core.hpp"
#include "lp2/critical.hpp"
#include "lp2/norms.hpp"
#include "lp2/parallel.hpp"
#include "lp2/radius.hpp"
#include "lp2/simplex.hpp"

namespace lp2 {

// The canonical operator (a b; -c -d) with a, b, c, d >= 0.
struct SignPatternOp {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  Mat2 matrix() const { return {a, b, -c, -d}; }
  double max_entry() const { return std::max({a, b, c, d}); }
  bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0; }
  bool is_valid() const {
    return a >= 0.0 && b >= 0.0 && c >= 0.0 && d >= 0.0 && std::isfinite(a) && std::isfinite(b) &&
           std::isfinite(c) && std::isfinite(d);
  }
  SignPatternOp scaled(double s) const { return {s * a, s * b, s * c, s * d}; }
  SignPatternOp normalized() const {
    const double m = max_entry();
    return m > 0.0 ? scaled(1.0 / m) : *this;
  }

  static SignPatternOp rotation() { return {0.0, 1.0, 1.0, 0.0}; }
  static SignPatternOp from_point(const Point<4>& x) { return {x[0], x[1], x[2], x[3]}; }
  Point<4> point() const { return {a, b, c, d}; }

  friend bool operator==(const SignPatternOp&, const SignPatternOp&) = default;
  friend bool operator<(const SignPatternOp& l, const SignPatternOp& r) {
    return std::tie(l.a, l.b, l.c, l.d) < std::tie(r.a, r.b, r.c, r.d);
  }
};

// Powers of t0 shared by F, G and the claim constraints.
struct ProofConstants {
  double p = 0.0;
  double q = 0.0;
  double t0 = 0.0;
  double t0_p = 0.0;         // t0^p
  double t0_pm1 = 0.0;       // t0^{p-1}
  double t0_2mp = 0.0;       // t0^{2-p}
  double one_plus_t0_p = 0.0;

  ProofConstants(const Exponent& e, double t) : p(e.p()), q(e.q()), t0(t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError(detail::Concat("t0 must lie in (0, 1), got ", t));
    t0_p = std::pow(t, p);
    t0_pm1 = std::pow(t, p - 1.0);
    t0_2mp = std::pow(t, 2.0 - p);
    one_plus_t0_p = 1.0 + t0_p;
  }

  // (t0^{p-1} - t0) / (1 + t0^p): the value both claims bound (alpha) from below.
  double target() const { return (t0_pm1 - t0) / one_plus_t0_p; }

  double F(const SignPatternOp& t) const {
    return (std::abs(t.a - t.d * t0_p) + std::abs(t.b * t0 - t.c * t0_pm1)) / one_plus_t0_p;
  }
  double G(const SignPatternOp& t) const {
    return (std::abs(t.d - t.a * t0_p) + std::abs(t.c * t0 - t.b * t0_pm1)) / one_plus_t0_p;
  }
  double alpha(const SignPatternOp& t, const Exponent& e) const {
    const double bound = riesz_thorin_bound(t.matrix(), e);
    if (!(bound > 0.0)) throw DomainError("alpha_ratio: operator must be nonzero");
    return std::max(F(t), G(t)) / bound;
  }
  double balance_b(const SignPatternOp& t) const {
    return t.c - (t.d - t.a) * one_plus_t0_p / (t0_pm1 + t0);
  }
};

inline double functional_F(const SignPatternOp& t, const Exponent& e, double t0) {
  return ProofConstants(e, t0).F(t);
}

inline double functional_G(const SignPatternOp& t, const Exponent& e, double t0) {
  return ProofConstants(e, t0).G(t);
}

// max{F(T), G(T)} / (|T|_1^{1/p} |T|_inf^{1/q}): a lower bound for v(T)/|T|.
inline double alpha_ratio(const SignPatternOp& t, const Exponent& e, double t0) {
  return ProofConstants(e, t0).alpha(t, e);
}

// The b making F(T) = G(T) for fixed (a, c, d).
inline double claim3_balance_b(const SignPatternOp& t, const Exponent& e, double t0) {
  return ProofConstants(e, t0).balance_b(t);
}

// The obstruction operator exhibited for p = 1.16.
inline SignPatternOp remark_matrix() { return {0.0487295, 13.639181, 15.0, 1.0}; }

struct RemarkRecord {
  double p = 0.0;
  double t0 = 0.0;
  double mp = 0.0;
  double ratio = 0.0;
  bool is_below = false;
};

inline RemarkRecord remark_counterexample(double p = 1.16) {
  if (!(p > 1.0 && p < 2.0)) {
    throw DomainError(detail::Concat("remark_counterexample: p must lie in (1, 2), got ", p));
  }
  const Exponent e(p);
  const CriticalPoint cp = compute_mp(e);
  RemarkRecord r;
  r.p = p;
  r.t0 = cp.t0;
  r.mp = cp.mp;
  r.ratio = alpha_ratio(remark_matrix(), e, cp.t0);
  r.is_below = r.ratio < r.mp;
  return r;
}

// ---------------------------------------------------------------------------
// Global estimation of the numerical index.

struct IndexEstimate {
  double p = 0.0;
  double value = 0.0;
  Mat2 minimizer;
  double mp = 0.0;
  double gap = 0.0;  // value - mp
  int starts = 0;
  bool converged = false;
};

struct IndexSearchOptions {
  int starts = 64;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  // Cheap evaluation used inside the simplex search.
  int search_grid = 64;
  double search_tol = 1e-9;
  // Restarts re-evaluated with grid kDefaultGrid and `tol`.
  int polish_count = 8;
  SimplexOptions simplex{};
};

// v(T) / |T| for the sign-pattern operator, with the given 1-D resolution.
inline double radius_norm_ratio(const SignPatternOp& t, const Exponent& e, double tol, int grid_n) {
  const double m = t.max_entry();
  if (!(m > 0.0)) return std::numeric_limits<double>::infinity();
  const Mat2 op = t.scaled(1.0 / m).matrix();
  const double v = numerical_radius(op, e, tol, grid_n).value;
  const double n = op_norm(op, e, tol, grid_n).norm;
  return v / n;
}

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Halton point `i` in [0, 1)^4 under a seeded Cranley-Patterson rotation.
inline Point<4> halton_start(std::uint64_t i, const Point<4>& shift) {
  static constexpr std::uint64_t kBases[4] = {2, 3, 5, 7};
  Point<4> x;
  for (std::size_t k = 0; k < 4; ++k) {
    const double v = radical_inverse(i, kBases[k]) + shift[k];
    x[k] = v >= 1.0 ? v - 1.0 : v;
  }
  return x;
}

// Coordinates within `eps` of a face are moved onto it when that does not
// make the objective worse; the simplex only approaches faces asymptotically.
template <typename F>
std::pair<Point<4>, double> snap_to_faces(F&& f, Point<4> x, double fx, double eps) {
  for (std::size_t k = 0; k < 4; ++k) {
    double target = -1.0;
    if (x[k] < eps) target = 0.0;
    if (x[k] > 1.0 - eps) target = 1.0;
    if (target < 0.0 || x[k] == target) continue;
    Point<4> y = x;
    y[k] = target;
    const double fy = f(y);
    if (fy <= fx) {
      x = y;
      fx = fy;
    }
  }
  return {x, fx};
}

struct Candidate {
  SignPatternOp op;
  double value = 0.0;
  std::size_t start = 0;
};

inline bool candidate_less(const Candidate& l, const Candidate& r) {
  if (l.value != r.value) return l.value < r.value;
  return l.op < r.op;
}

}  // namespace detail

// Estimates n(l_p^2) = inf v(T)/|T| over sign-pattern operators normalized to
// max(a, b, c, d) = 1.
//
// Multi-start Nelder-Mead on [0, 1]^4: start 0 is the rotation (0, 1, 1, 0),
// the rest are Halton points rotated by a shift drawn from `seed`. The search
// runs on a coarse 1-D grid; the best `polish_count` restarts (and the
// rotation) are then re-evaluated at full resolution, and the smallest of
// those is reported. Restarts run in parallel and are reduced by index, so
// the result does not depend on the thread count.
inline IndexEstimate estimate_index(const Exponent& e, const IndexSearchOptions& opt) {
  if (opt.starts < 1) throw DomainError("estimate_index: starts must be at least 1");
  if (!(opt.tol > 0.0) || !(opt.search_tol > 0.0)) throw DomainError("estimate_index: tol must be positive");

  std::mt19937_64 rng(opt.seed);
  Point<4> shift;
  for (auto& s : shift) s = detail::unit_from_bits(rng());

  auto coarse = [&](const Point<4>& x) {
    return radius_norm_ratio(SignPatternOp::from_point(x), e, opt.search_tol, opt.search_grid);
  };

  const auto runs = parallel_map(static_cast<std::size_t>(opt.starts), [&](std::size_t i) {
    const Point<4> start = i == 0 ? SignPatternOp::rotation().point() : detail::halton_start(i, shift);
    const SimplexResult<4> r = nelder_mead_unit_cube<4>(coarse, start, opt.simplex);
    const auto [x, fx] = detail::snap_to_faces(coarse, r.x, r.value, 1e-5);
    return detail::Candidate{SignPatternOp::from_point(x), fx, i};
  });

  std::vector<detail::Candidate> ranked = runs;
  std::stable_sort(ranked.begin(), ranked.end(), detail::candidate_less);
  const std::size_t keep = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(std::max(opt.polish_count, 1)));
  std::vector<detail::Candidate> finalists(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep));
  if (std::none_of(finalists.begin(), finalists.end(), [](const auto& c) { return c.start == 0; })) {
    finalists.push_back(runs[0]);
  }
  // The deterministic start itself, as evaluated before any simplex move.
  finalists.push_back({SignPatternOp::rotation(), 0.0, 0});

  const auto tight = parallel_map(finalists.size(), [&](std::size_t i) {
    detail::Candidate c = finalists[i];
    c.op = c.op.normalized();
    c.value = radius_norm_ratio(c.op, e, opt.tol, kDefaultGrid);
    return c;
  });
  std::vector<detail::Candidate> sorted = tight;
  std::stable_sort(sorted.begin(), sorted.end(), detail::candidate_less);
  // Restart agreement is judged on simplex results only, not the bare start.
  std::vector<double> restarts;
  for (std::size_t i = 0; i + 1 < tight.size(); ++i) restarts.push_back(tight[i].value);
  std::sort(restarts.begin(), restarts.end());

  IndexEstimate out;
  out.p = e.p();
  out.value = sorted.front().value;
  out.minimizer = sorted.front().op.matrix();
  out.mp = compute_mp(e).mp;
  out.gap = out.value - out.mp;
  out.starts = opt.starts;
  out.converged = restarts.size() >= 3 && restarts[2] - restarts[0] <= 10.0 * opt.tol;
  return out;
}

inline IndexEstimate estimate_index(const Exponent& e, int starts = 64, std::uint64_t seed = 0,
                                    double tol = 1e-10) {
  IndexSearchOptions opt;
  opt.starts = starts;
  opt.seed = seed;
  opt.tol = tol;
  return estimate_index(e, opt);
}

// ---------------------------------------------------------------------------
// Numeric verification of the three constrained infimum bounds.

enum class ClaimId { kOne = 1, kTwo = 2, kThree = 3 };

// Smallest constraint slack of `t` for the claim region; >= 0 means feasible.
//
// All claims share |T|_1 = a + c (so a + c >= b + d). Claim 1 adds
// |T|_inf = a + b >= a + c; claims 2 and 3 add |T|_inf = c + d >= a + c and
// split on the sign of c t0^{2-p} - (c + a - d).
inline double claim_feasibility(ClaimId claim, const SignPatternOp& t, const ProofConstants& k) {
  double slack = std::min({t.a, t.b, t.c, t.d});
  slack = std::min(slack, (t.a + t.c) - (t.b + t.d));
  switch (claim) {
    case ClaimId::kOne:
      slack = std::min(slack, t.b - t.c);
      break;
    case ClaimId::kTwo:
      slack = std::min({slack, t.d - t.a, t.c * k.t0_2mp - (t.c + t.a - t.d)});
      break;
    case ClaimId::kThree:
      slack = std::min({slack, t.d - t.a, (t.c + t.a - t.d) - t.c * k.t0_2mp});
      break;
  }
  return slack;
}

inline bool claim_in_hypothesis(ClaimId claim, double p) {
  if (claim == ClaimId::kThree) return p >= kLemmaPMin && p <= kLemmaPMax;
  return p > 1.0 && p <= kLemmaPMax;
}

struct ClaimRegionReport {
  int claim_id = 0;
  double p = 0.0;
  double t0 = 0.0;
  // Smallest alpha ratio found: an upper bound on the true infimum, so
  // `holds` means no counterexample was found at this resolution.
  double infimum_found = std::numeric_limits<double>::infinity();
  double target = 0.0;
  bool holds = false;
  SignPatternOp worst_point;
  double feasibility_slack = 0.0;
  bool in_hypothesis = false;
  long evaluated = 0;
};

inline constexpr double kClaimTolerance = 1e-7;

struct ClaimSearchOptions {
  // Run even when p lies outside the claim's hypothesis range.
  bool force = false;
  // Additional operators checked alongside the grid (skipped if infeasible).
  std::vector<SignPatternOp> extra_points;
  bool polish = true;
  SimplexOptions simplex{};
};

inline ClaimRegionReport verify_claim_region(ClaimId claim, const Exponent& e, int grid_n,
                                             const ClaimSearchOptions& opt = {}) {
  if (grid_n < 2) throw DomainError("verify_claim_region: grid_n must be at least 2");
  const int id = static_cast<int>(claim);
  if (id < 1 || id > 3) throw DomainError("verify_claim_region: claim id must be 1, 2 or 3");
  const bool in_hyp = claim_in_hypothesis(claim, e.p());
  if (!in_hyp && !opt.force) {
    throw DomainError(detail::Concat("claim ", id, " is stated only for ",
                                     claim == ClaimId::kThree ? "6/5 <= p <= 3/2" : "1 < p <= 3/2",
                                     ", got p = ", e.p()));
  }

  const CriticalPoint cp = compute_mp(e);
  const ProofConstants k(e, cp.t0);

  ClaimRegionReport r;
  r.claim_id = id;
  r.p = e.p();
  r.t0 = cp.t0;
  r.target = k.target();
  r.in_hypothesis = in_hyp;

  auto consider = [&](const SignPatternOp& t) {
    if (t.is_zero() || claim_feasibility(claim, t, k) < 0.0) return;
    ++r.evaluated;
    const double v = k.alpha(t, e);
    if (v < r.infimum_found || (v == r.infimum_found && t < r.worst_point)) {
      r.infimum_found = v;
      r.worst_point = t;
    }
  };

  const double step = 1.0 / (grid_n - 1);
  auto level = [&](int j) { return j == grid_n - 1 ? 1.0 : j * step; };

  // Full region: one coordinate pinned to 1, the other three on the grid.
  for (int face = 0; face < 4; ++face) {
    for (int i = 0; i < grid_n; ++i) {
      for (int j = 0; j < grid_n; ++j) {
        for (int l = 0; l < grid_n; ++l) {
          const double free[3] = {level(i), level(j), level(l)};
          Point<4> x;
          for (int c = 0, f = 0; c < 4; ++c) x[c] = c == face ? 1.0 : free[f++];
          consider(SignPatternOp::from_point(x));
        }
      }
    }
  }

  // Claim 3 additionally samples the F = G manifold b = b(a, c, d).
  if (claim == ClaimId::kThree) {
    for (int face = 0; face < 3; ++face) {
      for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
          const double free[2] = {level(i), level(j)};
          double acd[3];
          for (int c = 0, f = 0; c < 3; ++c) acd[c] = c == face ? 1.0 : free[f++];
          SignPatternOp t{acd[0], 0.0, acd[1], acd[2]};
          t.b = k.balance_b(t);
          if (t.b >= 0.0) consider(t);
        }
      }
    }
  }

  for (const auto& t : opt.extra_points) {
    if (t.is_valid()) consider(t);
  }

  if (opt.polish && std::isfinite(r.infimum_found)) {
    const double scale = r.worst_point.max_entry();
    auto objective = [&](const Point<4>& x) {
      const SignPatternOp t = SignPatternOp::from_point(x);
      if (t.is_zero() || claim_feasibility(claim, t, k) < 0.0) return std::numeric_limits<double>::infinity();
      return k.alpha(t, e);
    };
    SimplexOptions sopt = opt.simplex;
    sopt.initial_step = std::min(sopt.initial_step, step);
    const SimplexResult<4> res =
        nelder_mead_unit_cube<4>(objective, r.worst_point.scaled(1.0 / scale).point(), sopt);
    r.evaluated += res.evaluations;
    if (res.value < r.infimum_found) {
      r.infimum_found = res.value;
      r.worst_point = SignPatternOp::from_point(res.x);
    }
  }

  if (std::isfinite(r.infimum_found)) {
    r.feasibility_slack = claim_feasibility(claim, r.worst_point, k);
  }
  r.holds = r.infimum_found >= r.target - kClaimTolerance;
  return r;
}

inline ClaimRegionReport verify_claim_region(int claim_id, const Exponent& e, int grid_n,
                                             const ClaimSearchOptions& opt = {}) {
  if (claim_id < 1 || claim_id > 3) throw DomainError("verify_claim_region: claim id must be 1, 2 or 3");
  return verify_claim_region(static_cast<ClaimId>(claim_id), e, grid_n, opt);
}

}  // namespace lp2

#endif  // LP2_INDEX_HPP_
