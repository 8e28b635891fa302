// Command-line front end: single-point computations, p-sweeps and the
// verification battery. Single-point results go to stdout as JSON.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "lp2/lp2.hpp"
#include "lp2/report.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Raised for argument combinations rejected before any computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  double tol = 1e-10;
  int grid = lp2::kDefaultGrid;
  int starts = 64;
  std::uint64_t seed = 0;
};

json config_json(const Settings& s) {
  return {{"tol", s.tol}, {"grid", s.grid}, {"starts", s.starts}, {"seed", s.seed},
          {"threads", lp2::worker_count()}};
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

lp2::IndexSearchOptions index_options(const Settings& s) {
  lp2::IndexSearchOptions opt;
  opt.starts = s.starts;
  opt.seed = s.seed;
  opt.tol = s.tol;
  return opt;
}

int run_mp(double p, const Settings& s) {
  const lp2::Exponent e(p);
  const lp2::CriticalPoint cp = lp2::compute_mp(e, s.tol, s.grid);
  json out = {{"command", "mp"}, {"config", config_json(s)}};
  out.update(lp2::to_json(cp, e));
  emit(out);
  return 0;
}

int run_radius(double p, const lp2::Mat2& m, const Settings& s) {
  const lp2::Exponent e(p);
  lp2::require_finite(m);
  const lp2::RadiusResult r = lp2::numerical_radius(m, e, s.tol, s.grid);
  json out = {{"command", "radius"}, {"config", config_json(s)}, {"p", p}, {"matrix", lp2::to_json(m)}};
  out.update(lp2::to_json(r));
  emit(out);
  return 0;
}

int run_opnorm(double p, const lp2::Mat2& m, const Settings& s) {
  const lp2::Exponent e(p);
  lp2::require_finite(m);
  const lp2::OpNormResult r = lp2::op_norm(m, e, s.tol, s.grid);
  json out = {{"command", "opnorm"}, {"config", config_json(s)}, {"p", p}, {"matrix", lp2::to_json(m)}};
  out.update(lp2::to_json(r, e));
  out["norm_1"] = lp2::norm_1(m);
  out["norm_inf"] = lp2::norm_inf(m);
  out["riesz_thorin_bound"] = lp2::riesz_thorin_bound(m, e);
  emit(out);
  return 0;
}

int run_index(double p, const Settings& s) {
  const lp2::Exponent e(p);
  const lp2::IndexEstimate est = lp2::estimate_index(e, index_options(s));
  json out = {{"command", "index"}, {"config", config_json(s)}};
  out.update(lp2::to_json(est));
  out["known_lower_bound"] = lp2::known_lower_bound(e, est.mp);
  emit(out);
  return 0;
}

int run_verify(double pmin, double pmax, int n, int claim_grid, const Settings& s) {
  constexpr double kSlack = 1e-12;
  if (!(pmin >= lp2::kLemmaPMin - kSlack && pmax <= lp2::kLemmaPMax + kSlack && pmin <= pmax)) {
    throw UsageError("verify: need 6/5 <= pmin <= pmax <= 3/2");
  }
  if (n < 1) throw UsageError("verify: --n must be at least 1");
  if (claim_grid < 2) throw UsageError("verify: --grid must be at least 2");

  const std::vector<double> ps = lp2::p_grid(std::max(pmin, lp2::kLemmaPMin), std::min(pmax, lp2::kLemmaPMax), n);
  const auto rows = lp2::parallel_map(ps.size(), [&](std::size_t i) {
    const lp2::Exponent e(ps[i]);
    const lp2::BoundsReport lemma = lp2::lemma21_bounds(e, s.tol);
    json row = {{"p", ps[i]}, {"lemma", lp2::to_json(lemma)}};
    bool pass = lemma.all_hold;
    double claim_margin = std::numeric_limits<double>::infinity();
    for (int claim = 1; claim <= 3; ++claim) {
      const lp2::ClaimRegionReport r = lp2::verify_claim_region(claim, e, claim_grid);
      row["claims"].push_back(lp2::to_json(r));
      pass = pass && r.holds;
      claim_margin = std::min(claim_margin, r.infimum_found - r.target);
    }
    row["lemma_margin"] = lemma.margin;
    row["claim_margin"] = claim_margin;
    row["pass"] = pass;
    return row;
  });

  bool all_pass = true;
  double worst_lemma = std::numeric_limits<double>::infinity();
  double worst_claim = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    all_pass = all_pass && r["pass"].get<bool>();
    worst_lemma = std::min(worst_lemma, r["lemma_margin"].get<double>());
    worst_claim = std::min(worst_claim, r["claim_margin"].get<double>());
  }
  json cfg = config_json(s);
  cfg["claim_grid"] = claim_grid;
  cfg["safety_margin"] = lp2::kSafetyMargin;
  cfg["claim_tolerance"] = lp2::kClaimTolerance;
  emit({{"command", "verify"},
        {"config", cfg},
        {"pmin", pmin},
        {"pmax", pmax},
        {"n", n},
        {"results", rows},
        {"min_lemma_margin", worst_lemma},
        {"min_claim_margin", worst_claim},
        {"all_pass", all_pass}});
  return all_pass ? 0 : kExitFail;
}

int run_sweep(double pmin, double pmax, int n, const std::string& path, const std::string& format,
              const Settings& s) {
  if (!(pmin > 1.0) || !(pmax >= pmin)) throw UsageError("sweep: need 1 < pmin <= pmax");
  if (n < 2) throw UsageError("sweep: --n must be at least 2");

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("sweep: cannot open '" + path + "' for writing");

  const std::vector<double> ps = lp2::p_grid(pmin, pmax, n);
  const lp2::IndexSearchOptions opt = index_options(s);
  const auto rows = lp2::parallel_map(ps.size(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    lp2::SweepRow row = lp2::compute_sweep_row(lp2::Exponent(ps[i]), opt);
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
  });

  if (format == "csv") {
    lp2::write_csv(file, rows);
  } else {
    json table = json::array();
    for (const auto& r : rows) table.push_back(lp2::to_json(r));
    file << json{{"config", config_json(s)}, {"rows", table}}.dump(2) << '\n';
  }
  file.close();
  if (!file) throw UsageError("sweep: failed writing '" + path + "'");

  double max_gap = 0.0;
  for (const auto& r : rows) max_gap = std::max(max_gap, std::abs(r.gap));
  emit({{"command", "sweep"}, {"config", config_json(s)}, {"out", path}, {"format", format},
        {"rows", rows.size()}, {"max_abs_gap", max_gap}});
  return 0;
}

int run_counterexample(double p, const Settings& s) {
  if (!(p > 1.0 && p < 2.0)) throw UsageError("counterexample: p must lie in (1, 2)");
  const lp2::RemarkRecord r = lp2::remark_counterexample(p);
  json out = {{"command", "counterexample"}, {"config", config_json(s)},
              {"matrix", lp2::to_json(lp2::remark_matrix())}};
  out.update(lp2::to_json(r));
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator norm, numerical radius and numerical index on real two-dimensional l_p"};
  app.require_subcommand(1);
  Settings s;

  double p = 0.0;
  std::vector<double> entries;

  auto* mp = app.add_subcommand("mp", "M_p and its maximizer t0");
  mp->add_option("p", p, "exponent p > 1")->required();
  mp->add_option("--tol", s.tol, "1-D bracket tolerance")->capture_default_str();

  auto* radius = app.add_subcommand("radius", "numerical radius of (a b; c d)");
  radius->add_option("p", p, "exponent p > 1")->required();
  radius->add_option("entries", entries, "matrix entries a b c d")->required()->expected(4);
  radius->add_option("--tol", s.tol, "1-D bracket tolerance")->capture_default_str();

  auto* opnorm = app.add_subcommand("opnorm", "operator norm of (a b; c d) on l_p^2");
  opnorm->add_option("p", p, "exponent p > 1")->required();
  opnorm->add_option("entries", entries, "matrix entries a b c d")->required()->expected(4);
  opnorm->add_option("--tol", s.tol, "1-D bracket tolerance")->capture_default_str();

  auto* index = app.add_subcommand("index", "estimate the numerical index of l_p^2");
  index->add_option("p", p, "exponent p > 1")->required();
  index->add_option("--starts", s.starts, "simplex restarts")->capture_default_str();
  index->add_option("--seed", s.seed, "seed for the quasi-random starts")->capture_default_str();
  index->add_option("--tol", s.tol, "final evaluation tolerance")->capture_default_str();

  double pmin = 1.2;
  double pmax = 1.5;
  int n = 100;
  int claim_grid = 24;
  auto* verify = app.add_subcommand("verify", "lemma and claim-region battery on a p-grid");
  verify->add_option("--pmin", pmin)->capture_default_str();
  verify->add_option("--pmax", pmax)->capture_default_str();
  verify->add_option("--n", n, "number of exponents")->capture_default_str();
  verify->add_option("--grid", claim_grid, "grid points per free dimension in claim regions")
      ->capture_default_str();

  double sweep_pmin = 1.2;
  double sweep_pmax = 6.0;
  int sweep_n = 25;
  std::string out_path;
  std::string format = "csv";
  auto* sweep = app.add_subcommand("sweep", "tabulate M_p and the index estimate over p");
  sweep->add_option("--pmin", sweep_pmin)->capture_default_str();
  sweep->add_option("--pmax", sweep_pmax)->capture_default_str();
  sweep->add_option("--n", sweep_n, "number of exponents")->capture_default_str();
  sweep->add_option("--out", out_path, "output file")->required();
  sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sweep->add_option("--starts", s.starts, "simplex restarts")->capture_default_str();
  sweep->add_option("--seed", s.seed, "seed for the quasi-random starts")->capture_default_str();

  double remark_p = 1.16;
  auto* counter = app.add_subcommand("counterexample", "interpolation bound at the fixed obstruction matrix");
  counter->add_option("--p", remark_p, "exponent in (1, 2)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto matrix = [&] { return lp2::Mat2{entries[0], entries[1], entries[2], entries[3]}; };
  try {
    if (*mp) return run_mp(p, s);
    if (*radius) return run_radius(p, matrix(), s);
    if (*opnorm) return run_opnorm(p, matrix(), s);
    if (*index) return run_index(p, s);
    if (*verify) return run_verify(pmin, pmax, n, claim_grid, s);
    if (*sweep) return run_sweep(sweep_pmin, sweep_pmax, sweep_n, out_path, format, s);
    if (*counter) return run_counterexample(remark_p, s);
  } catch (const lp2::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
