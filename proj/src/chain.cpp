#include "qd3/chain.hpp"

namespace qd3 {

SpaceLayout chain_layout(int aux_dim, int n_sites) {
  SpaceLayout l;
  l.dims.push_back(aux_dim);
  for (int j = 0; j < n_sites; ++j) l.dims.push_back(6);
  return l;
}

Mat monodromy(cplx u, const ModelParams& p) {
  const SpaceLayout l = chain_layout(6, p.n_sites);
  Mat m = Mat::Identity(l.total(), l.total());
  for (int j = 0; j < p.n_sites; ++j)
    m = m * embed(r_vector(u - p.theta[j], p.eta), {0, 1 + j}, l);
  return m;
}

Mat monodromy_hat(cplx u, const ModelParams& p) {
  const SpaceLayout l = chain_layout(6, p.n_sites);
  const Mat p66 = perm_op(6, 6);
  Mat m = Mat::Identity(l.total(), l.total());
  for (int j = p.n_sites - 1; j >= 0; --j)
    m = m * embed(p66 * r_vector(u + p.theta[j], p.eta) * p66, {0, 1 + j}, l);
  return m;
}

Mat transfer(cplx u, const ModelParams& p) {
  const SpaceLayout l = chain_layout(6, p.n_sites);
  Mat big = embed(k_bar(u, p.eta, p.right), {0}, l) * monodromy(u, p) *
            embed(k_matrix(u, p.eta, p.left), {0}, l) * monodromy_hat(u, p);
  return partial_trace(big, 0, l);
}

Mat transfer_fused(cplx u, int sign, const ModelParams& p) {
  const SpaceLayout l = chain_layout(4, p.n_sites);
  auto rf = [&](cplx w) { return sign > 0 ? r_plus(w, p.eta) : r_minus(w, p.eta); };
  const Mat kf = (sign > 0) ? k_plus_fused(u, p.eta, p.left) : k_minus_fused(u, p.eta, p.left);
  const Mat kbf = k_bar_fused(sign, u, p.eta, p.right);

  Mat big = embed(kbf, {0}, l);
  for (int j = 0; j < p.n_sites; ++j)
    big = big * embed(rf(u - p.theta[j]), {0, 1 + j}, l);
  big = big * embed(kf, {0}, l);
  for (int j = p.n_sites - 1; j >= 0; --j)
    big = big * embed(Mat(rf(u + p.theta[j]).transpose()), {0, 1 + j}, l);
  return partial_trace(big, 0, l);
}

Mat hamiltonian(const ModelParams& p, double step) {
  ModelParams hom = p;
  for (auto& t : hom.theta) t = 0.0;  // H is defined at the homogeneous point
  const Mat t0_inv = transfer(cplx(0.0), hom).inverse();
  auto deriv = [&](double h) {
    return Mat(((transfer(cplx(h), hom) - transfer(cplx(-h), hom)) / (2.0 * h)) * t0_inv);
  };
  // Richardson: D(h), D(h/2) -> (4 D(h/2) - D(h)) / 3, then the 1/2 in front
  const Mat d1 = deriv(step);
  const Mat d2 = deriv(step / 2.0);
  return 0.5 * ((4.0 * d2 - d1) / 3.0);
}

}  // namespace qd3
