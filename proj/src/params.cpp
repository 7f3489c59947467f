#include "qd3/params.hpp"

#include <cmath>

namespace qd3 {

namespace {

// distance of z from w modulo 2*pi*i shifts of the imaginary part
double dist_mod_2pii(cplx z, cplx w) {
  const double two_pi = 2.0 * M_PI;
  double dre = z.real() - w.real();
  double dim = std::remainder(z.imag() - w.imag(), two_pi);
  return std::hypot(dre, dim);
}

cplx cplx_from_json(const nlohmann::json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw std::runtime_error("expected number or [re,im] pair");
}

nlohmann::json cplx_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

double BoundaryParams::constraint_residual() const {
  cplx lhs = c1 * c3;
  cplx rhs = c * (c + std::exp(-c2));
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

cplx derive_c3(cplx c, cplx c1, cplx c2) {
  if (c1 == cplx(0.0, 0.0)) throw ZeroDivisor("derive_c3: c1 = 0");
  return c * (c + std::exp(-c2)) / c1;
}

BoundaryParams make_boundary(cplx c, cplx c1, cplx c2) {
  return BoundaryParams{c, c1, c2, derive_c3(c, c1, c2)};
}

std::vector<std::string> violations(const ModelParams& p) {
  std::vector<std::string> v;
  const cplx eta = p.eta;
  if (std::abs(eta) < 1e-12) v.push_back("eta must be nonzero");
  cplx q2 = std::exp(2.0 * eta);
  if (std::abs(q2 - 1.0) < 1e-9 || std::abs(q2 + 1.0) < 1e-9)
    v.push_back("degenerate deformation: e^{2 eta} = +-1");
  if (p.n_sites < 1) v.push_back("n_sites must be >= 1");
  if (static_cast<int>(p.theta.size()) != p.n_sites)
    v.push_back("theta list size must equal n_sites");
  if (p.left.constraint_residual() > 1e-12) v.push_back("left boundary constraint c1*c3 = c*(c+e^{-c2})");
  if (p.right.constraint_residual() > 1e-12) v.push_back("right boundary constraint c1*c3 = c*(c+e^{-c2})");
  if (p.tol_identity <= 0) v.push_back("tol_identity must be positive");
  if (p.tol_spectral <= 0) v.push_back("tol_spectral must be positive");

  // degeneration points +-2eta .. +-8eta (and 0 for pair sums)
  std::vector<cplx> degen = {0.0};
  for (int k = 1; k <= 4; ++k) {
    degen.push_back(2.0 * double(k) * eta);
    degen.push_back(-2.0 * double(k) * eta);
  }
  const double min_dist = 1e-3;
  const int n = static_cast<int>(p.theta.size());
  for (int j = 0; j < n; ++j) {
    for (std::size_t d = 1; d < degen.size(); ++d) {  // skip 0: theta_j = 0 allowed (homogeneous)
      if (dist_mod_2pii(p.theta[j], degen[d]) < min_dist)
        v.push_back("theta hits degeneration point (theta_" + std::to_string(j + 1) + ")");
    }
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      for (int s : {-1, 1}) {
        cplx comb = p.theta[j] + double(s) * p.theta[k];
        for (const cplx& d : degen) {
          if (dist_mod_2pii(comb, d) < min_dist)
            v.push_back("theta_" + std::to_string(j + 1) + (s > 0 ? "+" : "-") + "theta_" +
                        std::to_string(k + 1) + " hits degeneration point");
        }
      }
    }
  }
  return v;
}

std::optional<ValidatedParams> validate(const ModelParams& p,
                                        std::vector<std::string>* out_violations) {
  auto v = violations(p);
  if (out_violations) *out_violations = v;
  if (!v.empty()) return std::nullopt;
  return ValidatedParams{p};
}

cplx sample_generic_point(std::mt19937_64& rng, const std::vector<cplx>& exclusions) {
  std::uniform_real_distribution<double> dist(0.3, 1.5);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    cplx u(dist(rng), 0.0);
    bool ok = true;
    for (const cplx& e : exclusions) {
      if (dist_mod_2pii(u, e) < 1e-3) {
        ok = false;
        break;
      }
    }
    if (ok) return u;
  }
  throw ExhaustedRetries("sample_generic_point: no admissible point in 1000 draws");
}

ModelParams params_from_json(const nlohmann::json& j) {
  ModelParams p;
  p.eta = cplx_from_json(j.at("eta"));
  p.n_sites = j.at("n_sites").get<int>();
  p.theta.clear();
  for (const auto& t : j.at("theta")) p.theta.push_back(cplx_from_json(t));
  auto bp = [](const nlohmann::json& b) {
    return make_boundary(cplx_from_json(b.at("c")), cplx_from_json(b.at("c1")),
                         cplx_from_json(b.at("c2")));
  };
  p.left = bp(j.at("left"));
  p.right = bp(j.at("right"));
  if (j.contains("tol_identity")) p.tol_identity = j["tol_identity"].get<double>();
  if (j.contains("tol_spectral")) p.tol_spectral = j["tol_spectral"].get<double>();
  if (j.contains("seed")) p.rng_seed = j["seed"].get<std::uint64_t>();
  return p;
}

nlohmann::json params_to_json(const ModelParams& p) {
  nlohmann::json j;
  j["eta"] = cplx_to_json(p.eta);
  j["n_sites"] = p.n_sites;
  j["theta"] = nlohmann::json::array();
  for (const cplx& t : p.theta) j["theta"].push_back(cplx_to_json(t));
  auto bp = [](const BoundaryParams& b) {
    nlohmann::json o;
    o["c"] = cplx_to_json(b.c);
    o["c1"] = cplx_to_json(b.c1);
    o["c2"] = cplx_to_json(b.c2);
    return o;
  };
  j["left"] = bp(p.left);
  j["right"] = bp(p.right);
  j["tol_identity"] = p.tol_identity;
  j["tol_spectral"] = p.tol_spectral;
  j["seed"] = p.rng_seed;
  return j;
}

ModelParams default_profile(int n_sites, bool homogeneous) {
  ModelParams p;
  p.eta = cplx(0.1, 0.0);
  p.n_sites = n_sites;
  p.theta.clear();
  const double theta_base[] = {0.91, 1.13, 1.07};
  for (int j = 0; j < n_sites; ++j)
    p.theta.push_back(homogeneous ? cplx(0.0) : cplx(theta_base[j % 3], 0.0));
  p.left = make_boundary(cplx(0.31), cplx(0.57), cplx(0.23));
  p.right = make_boundary(cplx(0.17), cplx(0.83), cplx(-0.41));
  return p;
}

}  // namespace qd3
