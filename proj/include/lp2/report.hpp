#ifndef LP2_REPORT_HPP_
#define LP2_REPORT_HPP_

// JSON and CSV serialization of results. Requires nlohmann/json.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lp2/core.hpp"
#include "lp2/critical.hpp"
#include "lp2/index.hpp"
#include "lp2/norms.hpp"
#include "lp2/radius.hpp"

namespace lp2 {

inline nlohmann::json to_json(const Mat2& m) { return {m.a, m.b, m.c, m.d}; }

inline nlohmann::json to_json(const SignPatternOp& t) {
  return {{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d}};
}

inline nlohmann::json to_json(const CriticalPoint& cp, const Exponent& e) {
  return {{"p", cp.p},   {"q", e.q()}, {"t0", cp.t0}, {"mp", cp.mp}, {"derivative_residual", cp.derivative_residual},
          {"degenerate", cp.degenerate}};
}

inline nlohmann::json to_json(const RadiusResult& r) {
  return {{"value", r.value}, {"branch", to_string(r.branch)}, {"t_star", r.t_star}, {"tol", r.tol}};
}

inline nlohmann::json to_json(const OpNormResult& r, const Exponent& e) {
  const Vec2 x = r.witness.vector(e);
  return {{"norm", r.norm},
          {"witness", {{"s", r.witness.s}, {"sign", r.witness.sign}, {"swapped", r.witness.swapped}, {"x", {x.x1, x.x2}}}},
          {"tol", r.tol}};
}

inline nlohmann::json to_json(const IndexEstimate& est) {
  return {{"p", est.p},     {"value", est.value}, {"minimizer", to_json(est.minimizer)},
          {"mp", est.mp},   {"gap", est.gap},     {"starts", est.starts},
          {"converged", est.converged}};
}

inline nlohmann::json to_json(const BoundsReport& r) {
  return {{"p", r.p},
          {"lower", r.lower},
          {"t0", r.t0},
          {"upper", r.upper},
          {"exponent_check_lhs", r.exponent_check_lhs},
          {"exponent_check_rhs", r.exponent_check_rhs},
          {"all_hold", r.all_hold},
          {"margin", r.margin},
          {"in_hypothesis", r.in_hypothesis}};
}

inline nlohmann::json to_json(const ClaimRegionReport& r) {
  return {{"claim_id", r.claim_id},
          {"p", r.p},
          {"t0", r.t0},
          {"infimum_found", r.infimum_found},
          {"target", r.target},
          {"margin", r.infimum_found - r.target},
          {"holds", r.holds},
          {"worst_point", to_json(r.worst_point)},
          {"feasibility_slack", r.feasibility_slack},
          {"in_hypothesis", r.in_hypothesis},
          {"evaluated", r.evaluated},
          {"note", "numeric search: no counterexample found at this resolution is not a proof"}};
}

inline nlohmann::json to_json(const RemarkRecord& r) {
  return {{"p", r.p}, {"t0", r.t0}, {"mp", r.mp}, {"ratio", r.ratio}, {"is_below", r.is_below}};
}

// One row of a p-sweep.
struct SweepRow {
  double p = 0.0;
  double q = 0.0;
  double t0 = 0.0;
  double mp = 0.0;
  double lower_bound = 0.0;  // max(2^{-1/p}, 2^{-1/q}) * mp
  double index_estimate = 0.0;
  double gap = 0.0;
  double runtime_ms = 0.0;
};

inline constexpr const char* kSweepHeader = "p,q,t0,mp,lower_bound,index_estimate,gap,runtime_ms";

inline double known_lower_bound(const Exponent& e, double mp) {
  return std::max(std::pow(2.0, -1.0 / e.p()), std::pow(2.0, -1.0 / e.q())) * mp;
}

// Every column except runtime_ms, which is filled in by the caller.
inline SweepRow compute_sweep_row(const Exponent& e, const IndexSearchOptions& opt) {
  const CriticalPoint cp = compute_mp(e);
  const IndexEstimate est = estimate_index(e, opt);
  SweepRow row;
  row.p = e.p();
  row.q = e.q();
  row.t0 = cp.t0;
  row.mp = cp.mp;
  row.lower_bound = known_lower_bound(e, cp.mp);
  row.index_estimate = est.value;
  row.gap = est.value - cp.mp;
  return row;
}

inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << format_g17(r.p) << ',' << format_g17(r.q) << ',' << format_g17(r.t0) << ',' << format_g17(r.mp) << ','
       << format_g17(r.lower_bound) << ',' << format_g17(r.index_estimate) << ',' << format_g17(r.gap) << ','
       << format_g17(r.runtime_ms) << '\n';
  }
}

inline std::vector<SweepRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSweepHeader) {
    throw std::runtime_error("sweep CSV: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(fields, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 8) throw std::runtime_error("sweep CSV: expected 8 columns in '" + line + "'");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return rows;
}

inline nlohmann::json to_json(const SweepRow& r) {
  return {{"p", r.p},
          {"q", r.q},
          {"t0", r.t0},
          {"mp", r.mp},
          {"lower_bound", r.lower_bound},
          {"index_estimate", r.index_estimate},
          {"gap", r.gap},
          {"runtime_ms", r.runtime_ms}};
}

}  // namespace lp2

#endif  // LP2_REPORT_HPP_
