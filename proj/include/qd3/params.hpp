// Model parameters: boundary constants, inhomogeneities, tolerances.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qd3 {

using cplx = std::complex<double>;

struct ZeroDivisor : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExhaustedRetries : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundaryParams {
  cplx c{};
  cplx c1{};
  cplx c2{};
  cplx c3{};  // always derived from (c, c1, c2)

  // relative violation of c1*c3 = c*(c + e^{-c2})
  double constraint_residual() const;
};

// c3 = c*(c + e^{-c2})/c1
cplx derive_c3(cplx c, cplx c1, cplx c2);

BoundaryParams make_boundary(cplx c, cplx c1, cplx c2);

struct ModelParams {
  cplx eta{0.1, 0.0};
  int n_sites = 1;
  std::vector<cplx> theta;  // size n_sites
  BoundaryParams left;      // enters K
  BoundaryParams right;     // primed copy, enters K-bar
  double tol_identity = 1e-9;
  double tol_spectral = 1e-6;
  std::uint64_t rng_seed = 0;
};

// Wrapper certifying that validate() returned no violations.
struct ValidatedParams {
  ModelParams p;
};

// Returns the full list of violated conditions (empty means valid).
std::vector<std::string> violations(const ModelParams& p);

// Returns validated copy or nullopt; `out_violations` (if non-null) receives
// the complete list either way.
std::optional<ValidatedParams> validate(const ModelParams& p,
                                        std::vector<std::string>* out_violations = nullptr);

// Draws u with distance >= 1e-3 (mod 2*pi*i) from every exclusion.
// Throws ExhaustedRetries after 1000 draws.
cplx sample_generic_point(std::mt19937_64& rng, const std::vector<cplx>& exclusions);

// JSON config: { "eta":[re,im], "n_sites":int, "theta":[[re,im],...],
//   "left":{"c":..,"c1":..,"c2":..}, "right":{...},
//   "tol_identity":real, "tol_spectral":real, "seed":int }
// c3 is absent by design (always derived).
ModelParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ModelParams& p);

// Default test profile used across the test suite.
ModelParams default_profile(int n_sites, bool homogeneous = false);

}  // namespace qd3
