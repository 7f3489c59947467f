// Spectral layer: common eigenbasis of {t, t+}, eigenvalue functional
// relations, inhomogeneous T-Q relations, Bethe ansatz equations, energies.
#pragma once

#include "qd3/verify.hpp"

namespace qd3 {

struct NearPole : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CoincidentRoots : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectralFamily {
  std::vector<cplx> u_grid;
  std::vector<std::vector<cplx>> lambda;       // [state][grid point]
  std::vector<std::vector<cplx>> lambda_plus;  // [state][grid point]
  double basis_condition = 0.0;
  ModelParams params;
  Mat basis;      // common eigenvectors as columns
  Mat basis_inv;
  int n_states = 0;

  // eigenvalue vectors at an arbitrary point, via basis projection
  Vec lambda_at(cplx u) const;
  Vec lambda_plus_at(cplx u) const;
};

struct BetheState {
  std::vector<cplx> mu1;
  std::vector<cplx> mu2;
  std::vector<cplx> mu3;
  cplx x{};          // always derived from L1 and the boundary parameters
  int m1 = 0;        // = L2
  int m2 = 0;        // = L3
  double bae_residual = 0.0;
};

// x per the counting rule; L1 = mu1.size() must equal mu2.size()+mu3.size()+N.
cplx bethe_x(int l1, const ModelParams& p);

BetheState make_bethe_state(std::vector<cplx> mu1, std::vector<cplx> mu2,
                            std::vector<cplx> mu3, const ModelParams& p);

SpectralFamily diagonalize_family(const ValidatedParams& vp,
                                  const std::vector<cplx>& u_grid);

// Functional relations, special values, and asymptotics of the eigenvalue
// curves (needs homogeneous or generic theta; asymptotics probed at u_max).
std::vector<ResidualRecord> check_eigen_relations(const SpectralFamily& family,
                                                  double u_max = 40.0);

// Per-state asymptotic sector (m1, m2) read off at u = u_max.
std::vector<std::pair<int, int>> asymptotic_sectors(const SpectralFamily& family,
                                                    double u_max = 40.0);

cplx tq_lambda(cplx u, const BetheState& state, const ModelParams& p);
cplx tq_lambda_plus(cplx u, const BetheState& state, const ModelParams& p);

std::vector<cplx> bae_residuals(const BetheState& state, const ModelParams& p);

// Damped-Newton multistart search; returns deduplicated converged states
// (max |residual| < 1e-9 each). Roots are canonicalized under mu -> -mu and
// 2*pi*i shifts (the Q-functions are invariant under both).
std::vector<BetheState> solve_bae(int l1, int l2, int l3, const ModelParams& p,
                                  int n_starts);

struct MatchEntry {
  int state_index = -1;       // family row; -1 if unmatched
  double max_deviation = 0.0; // sup-norm over grid, relative
};

// Greedy match of each BetheState Lambda-curve to the closest family row.
std::vector<MatchEntry> match_tq_to_spectrum(const SpectralFamily& family,
                                             const std::vector<BetheState>& states);

// E = d/du ln Lambda(u) at u=0 (homogeneous theta), central difference.
cplx energy_tq(const BetheState& state, const ModelParams& p, double step = 1e-6);
cplx energy_curve(const SpectralFamily& family, int state, double step = 1e-6);

nlohmann::json bethe_state_to_json(const BetheState& s);
nlohmann::json family_to_json(const SpectralFamily& f);

}  // namespace qd3
