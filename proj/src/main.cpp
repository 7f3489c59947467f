// Command-line front end: loads a JSON config, runs verification or spectral
// jobs, writes machine-readable reports, returns a pass/fail exit status.
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qd3/spectra.hpp"

namespace {

constexpr const char* kSchema = "qd3/1";
constexpr const char* kVersion = "1.0.0";

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::int64_t seed = -1;  // -1: keep config seed
  bool timings = false;
};

qd3::ModelParams load_params(const CommonOpts& opts) {
  qd3::ModelParams p;
  if (opts.config_path.empty()) {
    p = qd3::default_profile(1);
  } else {
    std::ifstream in(opts.config_path);
    if (!in) throw std::runtime_error("cannot open config: " + opts.config_path);
    nlohmann::json j;
    in >> j;
    p = qd3::params_from_json(j);
  }
  if (const char* env = std::getenv("QD3_SEED")) p.rng_seed = std::strtoull(env, nullptr, 10);
  if (opts.seed >= 0) p.rng_seed = static_cast<std::uint64_t>(opts.seed);
  return p;
}

nlohmann::json report_header(const qd3::ModelParams& p) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["seed"] = p.rng_seed;
  j["config"] = qd3::params_to_json(p);
  return j;
}

void write_report(const nlohmann::json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << report.dump(2) << "\n";
  }
}

void print_records(const std::vector<qd3::ResidualRecord>& records) {
  for (const auto& r : records)
    std::cerr << (r.passed ? "  pass  " : "  FAIL  ") << r.check_id
              << "  residual=" << r.residual << " (thr " << r.threshold << ")\n";
}

int run_verify(const CommonOpts& opts, const std::string& scope) {
  qd3::ModelParams p = load_params(opts);
  std::vector<std::string> bad;
  auto vp = qd3::validate(p, &bad);
  if (!vp) {
    for (const auto& m : bad) std::cerr << "config error: " << m << "\n";
    return 2;
  }
  std::vector<qd3::ResidualRecord> records;
  auto append = [&](std::vector<qd3::ResidualRecord> r) {
    records.insert(records.end(), std::make_move_iterator(r.begin()),
                   std::make_move_iterator(r.end()));
  };
  if (scope == "local" || scope == "all") {
    append(qd3::check_local(*vp, 10));
    append(qd3::check_degenerations(*vp));
  }
  if (scope == "fusion" || scope == "all") {
    append(qd3::check_fusion_r(*vp, 10));
    append(qd3::check_fusion_k(*vp, 10));
  }
  if (scope == "transfer" || scope == "all") append(qd3::check_transfer(*vp));

  print_records(records);
  nlohmann::json report = report_header(p);
  report["scope"] = scope;
  report["records"] = qd3::records_to_json(records);
  report["all_passed"] = qd3::all_passed(records);
  write_report(report, opts.out_path);
  return qd3::all_passed(records) ? 0 : 1;
}

std::vector<qd3::cplx> default_grid(int grid_points) {
  // rectangle in the complex plane avoiding degeneration points
  std::vector<qd3::cplx> grid = {{0.31, 0.0}, {0.77, 0.0}, {1.23, 0.0}, {-0.45, 0.0}};
  for (int k = int(grid.size()); k < grid_points; ++k) {
    const double re = 0.25 + 1.3 * double(k % 6) / 6.0;
    const double im = (k % 2 == 0) ? 0.35 : -0.35;
    grid.push_back({re, im});
  }
  return grid;
}

int run_spectrum(const CommonOpts& opts, int grid_points, double umax) {
  qd3::ModelParams p = load_params(opts);
  std::vector<std::string> bad;
  auto vp = qd3::validate(p, &bad);
  if (!vp) {
    for (const auto& m : bad) std::cerr << "config error: " << m << "\n";
    return 2;
  }
  if (p.n_sites > 3) {
    std::cerr << "config error: spectrum requires N <= 3\n";
    return 2;
  }
  auto family = qd3::diagonalize_family(*vp, default_grid(grid_points));
  auto records = qd3::check_eigen_relations(family, umax);
  print_records(records);

  nlohmann::json report = report_header(p);
  report["family"] = qd3::family_to_json(family);
  report["records"] = qd3::records_to_json(records);
  report["all_passed"] = qd3::all_passed(records);
  write_report(report, opts.out_path);
  return qd3::all_passed(records) ? 0 : 1;
}

int run_bae(const CommonOpts& opts, int l1, int l2, int l3, int n_starts, int grid_points) {
  qd3::ModelParams p = load_params(opts);
  std::vector<std::string> bad;
  auto vp = qd3::validate(p, &bad);
  if (!vp) {
    for (const auto& m : bad) std::cerr << "config error: " << m << "\n";
    return 2;
  }
  if (l1 != l2 + l3 + p.n_sites || l1 < 0 || l1 > 2 * p.n_sites) {
    std::cerr << "config error: counting rule L1 = L2 + L3 + N violated\n";
    return 2;
  }
  auto family = qd3::diagonalize_family(*vp, default_grid(grid_points));
  auto states = qd3::solve_bae(l1, l2, l3, p, n_starts);
  auto matches = qd3::match_tq_to_spectrum(family, states);

  nlohmann::json report = report_header(p);
  report["sector"] = {l1, l2, l3};
  report["n_starts"] = n_starts;
  nlohmann::json jstates = nlohmann::json::array();
  bool homogeneous = true;
  for (qd3::cplx t : p.theta)
    if (std::abs(t) > 1e-12) homogeneous = false;
  for (std::size_t i = 0; i < states.size(); ++i) {
    nlohmann::json js = qd3::bethe_state_to_json(states[i]);
    js["matched_state"] = matches[i].state_index;
    js["match_deviation"] = matches[i].max_deviation;
    if (homogeneous && matches[i].state_index >= 0 && matches[i].max_deviation < 1e-6) {
      const qd3::cplx e_tq = qd3::energy_tq(states[i], p);
      const qd3::cplx e_sp = qd3::energy_curve(family, matches[i].state_index);
      js["energy_tq"] = {e_tq.real(), e_tq.imag()};
      js["energy_spectral"] = {e_sp.real(), e_sp.imag()};
    }
    jstates.push_back(js);
    std::cerr << "  state " << i << ": matched=" << matches[i].state_index
              << " deviation=" << matches[i].max_deviation
              << " bae_residual=" << states[i].bae_residual << "\n";
  }
  report["states"] = jstates;
  write_report(report, opts.out_path);

  if (states.empty() && n_starts >= 32) {
    std::cerr << "no Bethe states converged\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for the q-deformed D3(1) open vertex model"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string scope = "all";
  int grid_points = 4;
  double umax = 40.0;
  int starts = 64;
  int l1 = 1, l2 = 0, l3 = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON config path");
    cmd->add_option("--out", opts.out_path, "report output path (default: stdout)");
    cmd->add_option("--seed", opts.seed, "override RNG seed");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the identity catalog");
  add_common(verify);
  verify->add_option("--scope", scope, "local|fusion|transfer|all")
      ->check(CLI::IsMember({"local", "fusion", "transfer", "all"}));

  CLI::App* spectrum = app.add_subcommand("spectrum", "diagonalize and check eigen relations");
  add_common(spectrum);
  spectrum->add_option("--grid-points", grid_points, "number of grid points");
  spectrum->add_option("--umax", umax, "asymptotic probe point");

  CLI::App* bae = app.add_subcommand("bae", "solve Bethe equations and match to spectrum");
  add_common(bae);
  bae->add_option("--L1", l1, "number of mu1 roots");
  bae->add_option("--L2", l2, "number of mu2 roots");
  bae->add_option("--L3", l3, "number of mu3 roots");
  bae->add_option("--starts", starts, "Newton multistart count");
  bae->add_option("--grid-points", grid_points, "number of grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(opts, scope);
    if (spectrum->parsed()) return run_spectrum(opts, grid_points, umax);
    if (bae->parsed()) return run_bae(opts, l1, l2, l3, starts, grid_points);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
