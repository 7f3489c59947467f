// Monodromy and transfer matrices on the open chain, plus the Hamiltonian.
#pragma once

#include "qd3/local_ops.hpp"

namespace qd3 {

// Layout of the full chain including the auxiliary leg at slot 0.
SpaceLayout chain_layout(int aux_dim, int n_sites);

// T_0(u) = R_{01}(u - theta_1) ... R_{0N}(u - theta_N), aux leg 6-dim.
Mat monodromy(cplx u, const ModelParams& p);
// That(u) = R_{N0}(u + theta_N) ... R_{10}(u + theta_1), with R_{j0} = P R P.
Mat monodromy_hat(cplx u, const ModelParams& p);

// t(u) = tr_0 { Kbar_0(u) T_0(u) K_0(u) That_0(u) }, a 6^N x 6^N matrix.
Mat transfer(cplx u, const ModelParams& p);

// Fused transfer t_pm(u) with 4-dim auxiliary leg; sign = +1 or -1.
// The hat monodromy uses the full transpose R^(pm)(u + theta_j)^t.
Mat transfer_fused(cplx u, int sign, const ModelParams& p);

// H = (1/2) d/du log t(u) at u = 0 with all inhomogeneities set to zero.
// Central finite difference with one Richardson extrapolation step.
Mat hamiltonian(const ModelParams& p, double step = 1e-4);

}  // namespace qd3
