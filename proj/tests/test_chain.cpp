#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qd3/chain.hpp"

using namespace qd3;

namespace {
const cplx kU{0.73, 0.0};
const cplx kV{1.21, 0.0};
}  // namespace

TEST_CASE("chain layout") {
  SpaceLayout lay = chain_layout(4, 2);
  CHECK(lay.dims == std::vector<int>{4, 6, 6});
  CHECK(lay.total() == 144);
}

TEST_CASE("monodromy at N=1 reduces to a single R") {
  ModelParams p = default_profile(1);
  Mat t = monodromy(kU, p);
  CHECK(rel_residual(t, r_vector(kU - p.theta[0], p.eta)) < 1e-14);

  Mat p66 = perm_op(6, 6);
  Mat that = monodromy_hat(kU, p);
  CHECK(rel_residual(that, p66 * r_vector(kU + p.theta[0], p.eta) * p66) < 1e-14);
}

TEST_CASE("transfer commutativity and crossing, N=2") {
  ModelParams p = default_profile(2);
  Mat tu = transfer(kU, p);
  Mat tv = transfer(kV, p);
  CHECK(rel_residual(tu * tv, tv * tu) < 1e-12);
  CHECK(rel_residual(transfer(-kU + 8.0 * p.eta, p), tu) < 1e-12);
}

TEST_CASE("fused transfer commutes with t and satisfies the +/- link") {
  ModelParams p = default_profile(1);
  Mat t = transfer(kU, p);
  Mat tp = transfer_fused(kV, +1, p);
  Mat tm = transfer_fused(kV, -1, p);
  CHECK(rel_residual(t * tp, tp * t) < 1e-12);
  CHECK(rel_residual(t * tm, tm * t) < 1e-12);
  CHECK(rel_residual(tp * tm, tm * tp) < 1e-12);

  // t+(-u+8eta) = e^{8eta} W t-(u) W
  Mat w = twist_W();
  Mat lhs = transfer_fused(-kU + 8.0 * p.eta, +1, p);
  Mat rhs = std::exp(8.0 * p.eta) * w * transfer_fused(kU, -1, p) * w;
  CHECK(rel_residual(lhs, rhs) < 1e-12);
}

TEST_CASE("hamiltonian commutes with the homogeneous transfer") {
  ModelParams p = default_profile(1);
  Mat h = hamiltonian(p);
  CHECK(h.rows() == 6);

  ModelParams ph = default_profile(1, true);  // theta = 0
  Mat t = transfer(kU, ph);
  CHECK(rel_residual(h * t, t * h) < 1e-9);

  // step halving should agree (derivative is well converged)
  Mat h2 = hamiltonian(p, 5e-5);
  CHECK(rel_residual(h, h2) < 1e-8);
}
