// Acceptance gate: runs the eight top-level acceptance checks and prints one
// pass/fail line for each. Exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qd3/spectra.hpp"

using namespace qd3;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double worst_residual(const std::vector<ResidualRecord>& recs, bool* ok,
                      std::string* worst_id = nullptr) {
  double worst = 0.0;
  for (const auto& r : recs) {
    if (!r.passed) *ok = false;
    if (r.residual > worst) {
      worst = r.residual;
      if (worst_id) *worst_id = r.check_id;
    }
  }
  return worst;
}

std::vector<cplx> grid() { return {{0.31, 0.0}, {0.77, 0.0}, {1.23, 0.0}, {-0.45, 0.0}}; }

void criterion_1_local() {
  auto vp = validate(default_profile(1));
  bool ok = vp.has_value();
  std::string id;
  double worst = ok ? worst_residual(check_local(*vp, 10), &ok, &id) : 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst residual %.2e (%s)", worst, id.c_str());
  report(1, "local identities < 1e-10 at 10 sample points", ok, buf);
}

void criterion_2_degenerations() {
  auto vp = validate(default_profile(1));
  bool ok = vp.has_value();
  std::string id;
  double worst = ok ? worst_residual(check_degenerations(*vp), &ok, &id) : 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst residual %.2e (%s)", worst, id.c_str());
  report(2, "degeneration ranks and projector angles", ok, buf);
}

void criterion_3_fusion() {
  auto vp = validate(default_profile(1));
  bool ok = vp.has_value();
  std::string id;
  double worst = 1.0;
  if (ok) {
    auto recs = check_fusion_r(*vp, 10);
    auto reck = check_fusion_k(*vp, 10);
    recs.insert(recs.end(), reck.begin(), reck.end());
    worst = worst_residual(recs, &ok, &id);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst residual %.2e (%s)", worst, id.c_str());
  report(3, "R and K fusion identities < 1e-9 at 10 sample points", ok, buf);
}

void criterion_4_transfer() {
  auto vp = validate(default_profile(2));
  bool ok = vp.has_value();
  std::string id;
  double worst = ok ? worst_residual(check_transfer(*vp), &ok, &id) : 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst residual %.2e (%s)", worst, id.c_str());
  report(4, "N=2 transfer suite (commutativity, crossing, link, qdet, fusion)", ok, buf);
}

void criterion_5_spectral() {
  auto vp = validate(default_profile(1));
  bool ok = vp.has_value();
  std::string id;
  double worst = 1.0;
  if (ok) {
    SpectralFamily f = diagonalize_family(*vp, grid());
    ok = f.n_states == 6;
    worst = worst_residual(check_eigen_relations(f, 40.0), &ok, &id);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst residual %.2e (%s)", worst, id.c_str());
  report(5, "N=1 eigenvalue relations, special values, asymptotics", ok, buf);
}

void criterion_6_tq() {
  ModelParams p = default_profile(1, true);  // homogeneous
  auto vp = validate(p);
  bool ok = vp.has_value();
  std::string detail;
  if (ok) {
    SpectralFamily f = diagonalize_family(*vp, grid());
    const int sectors[3][3] = {{1, 0, 0}, {2, 1, 0}, {2, 0, 1}};
    for (const auto& sec : sectors) {
      auto states = solve_bae(sec[0], sec[1], sec[2], p, 64);
      auto matches = match_tq_to_spectrum(f, states);
      int good = 0;
      double best_energy_gap = 1e300;
      for (std::size_t i = 0; i < states.size(); ++i) {
        if (matches[i].state_index < 0 || matches[i].max_deviation >= 1e-6) continue;
        if (states[i].bae_residual >= 1e-9) continue;
        const cplx e1 = energy_tq(states[i], p);
        const cplx e2 = energy_curve(f, matches[i].state_index);
        const double gap = std::abs(e1 - e2);
        best_energy_gap = std::min(best_energy_gap, gap);
        if (gap < 1e-5) ++good;
      }
      char buf[120];
      std::snprintf(buf, sizeof buf, "(%d,%d,%d): %d matched, energy gap %.1e; ", sec[0],
                    sec[1], sec[2], good, best_energy_gap);
      detail += buf;
      if (good < 1) ok = false;
    }
  }
  report(6, "T-Q/BAE cross-validation over 3 sectors, 64 starts", ok, detail);
}

void criterion_7_hamiltonian() {
  ModelParams p = default_profile(2);
  ModelParams ph = default_profile(2, true);  // theta = 0 (transfer only)
  Mat h = hamiltonian(p);
  bool ok = true;
  double worst_comm = 0.0;
  for (cplx u : {cplx(0.8, 0.0), cplx(1.37, 0.0), cplx(-0.52, 0.0)}) {
    Mat t = transfer(u, ph);
    worst_comm = std::max(worst_comm, rel_residual(h * t, t * h));
  }
  if (worst_comm >= 1e-7) ok = false;

  // common eigenbasis of {t(u), H}; H eigenvalues vs (1/2) d/du ln Lambda(0)
  double worst_gap = 1e300;
  try {
    EigenFamily fam = simultaneous_eigenbasis(
        {transfer(cplx(0.37, 0.0), ph), transfer(cplx(0.82, 0.0), ph), h}, 1e-7,
        p.rng_seed + 9999);
    const double d = 1e-6;
    Mat lp = fam.basis_inv * transfer(cplx(d, 0.0), ph) * fam.basis;
    Mat lm = fam.basis_inv * transfer(cplx(-d, 0.0), ph) * fam.basis;
    Mat l0 = fam.basis_inv * transfer(cplx(0.0, 0.0), ph) * fam.basis;
    worst_gap = 0.0;
    for (int k = 0; k < h.rows(); ++k) {
      const cplx e_curve = (lp(k, k) - lm(k, k)) / (2.0 * d) / l0(k, k) * 0.5;
      const cplx e_h = fam.eigenvalues[2][k];
      worst_gap = std::max(worst_gap, std::abs(e_curve - e_h));
    }
    if (worst_gap >= 1e-5) ok = false;
  } catch (const std::exception&) {
    ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "[H,t] %.1e, eigen gap %.1e", worst_comm, worst_gap);
  report(7, "N=2 homogeneous Hamiltonian consistency", ok, buf);
}

void criterion_8_determinism() {
  auto once = [] {
    ModelParams p = default_profile(1);
    p.rng_seed = 7;
    auto vp = validate(p);
    nlohmann::json j;
    j["config"] = params_to_json(p);
    j["records"] = records_to_json(check_local(*vp, 5));
    auto states = solve_bae(1, 0, 0, default_profile(1, true), 16);
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : states) js.push_back(bethe_state_to_json(s));
    j["bethe"] = js;
    return j.dump();
  };
  const std::string a = once();
  const std::string b = once();
  report(8, "identical config+seed reproduces byte-identical reports", a == b && !a.empty());
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  criterion_1_local();
  criterion_2_degenerations();
  criterion_3_fusion();
  criterion_4_transfer();
  criterion_5_spectral();
  criterion_6_tq();
  criterion_7_hamiltonian();
  criterion_8_determinism();
  const double secs = std::chrono::duration<double>(clock::now() - t0).count();
  std::printf("%d/8 criteria passed in %.1f s\n", 8 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
