#include "qd3/la.hpp"

#include <algorithm>
#include <random>

namespace qd3 {

double rel_residual(const Mat& a, const Mat& b) {
  double den = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / den;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// index map sending full lexicographic index -> lexicographic index of the
// reordered layout (slots..., remaining slots...)
std::vector<int> reorder_index_map(const std::vector<int>& slots, const SpaceLayout& target) {
  const int n = target.n_slots();
  const int total = target.total();
  std::vector<int> order(slots.begin(), slots.end());
  for (int k = 0; k < n; ++k)
    if (std::find(slots.begin(), slots.end(), k) == slots.end()) order.push_back(k);

  std::vector<int> strides(n, 1);
  for (int k = n - 2; k >= 0; --k) strides[k] = strides[k + 1] * target.dims[k + 1];

  std::vector<int> map(total);
  std::vector<int> digit(n);
  for (int idx = 0; idx < total; ++idx) {
    for (int k = 0; k < n; ++k) digit[k] = (idx / strides[k]) % target.dims[k];
    int nidx = 0;
    for (int k : order) nidx = nidx * target.dims[k] + digit[k];
    map[idx] = nidx;
  }
  return map;
}

}  // namespace

Mat embed(const Mat& op, const std::vector<int>& slots, const SpaceLayout& target) {
  const int n = target.n_slots();
  {
    std::vector<int> sorted = slots;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DuplicateSlot("embed: duplicate slot");
    for (int s : slots)
      if (s < 0 || s >= n) throw BadSlot("embed: slot out of range");
  }
  int d_op = 1;
  for (int s : slots) d_op *= target.dims[s];
  if (op.rows() != d_op || op.cols() != d_op)
    throw DimensionMismatch("embed: operator dimension does not match named slots");

  const int total = target.total();
  const int d_rest = total / d_op;
  const auto map = reorder_index_map(slots, target);

  // result[i,j] = (op (x) I)[map[i], map[j]]
  Mat out = Mat::Zero(total, total);
  for (int i = 0; i < total; ++i) {
    const int pi = map[i];
    const int oi = pi / d_rest;
    const int ri = pi % d_rest;
    for (int j = 0; j < total; ++j) {
      const int pj = map[j];
      if (pj % d_rest != ri) continue;
      out(i, j) = op(oi, pj / d_rest);
    }
  }
  return out;
}

Mat partial_transpose(const Mat& m, int slot, const SpaceLayout& layout) {
  const int n = layout.n_slots();
  if (slot < 0 || slot >= n) throw BadSlot("partial_transpose: bad slot");
  const int total = layout.total();
  const int d = layout.dims[slot];
  int right = 1;
  for (int k = slot + 1; k < n; ++k) right *= layout.dims[k];
  const int left = total / (d * right);

  Mat out(total, total);
  for (int al = 0; al < left; ++al)
    for (int ad = 0; ad < d; ++ad)
      for (int ar = 0; ar < right; ++ar) {
        const int row = (al * d + ad) * right + ar;
        for (int bl = 0; bl < left; ++bl)
          for (int bd = 0; bd < d; ++bd)
            for (int br = 0; br < right; ++br) {
              const int col = (bl * d + bd) * right + br;
              const int row_t = (al * d + bd) * right + ar;
              const int col_t = (bl * d + ad) * right + br;
              out(row_t, col_t) = m(row, col);
            }
      }
  return out;
}

Mat partial_trace(const Mat& m, int slot, const SpaceLayout& layout) {
  const int n = layout.n_slots();
  if (slot < 0 || slot >= n) throw BadSlot("partial_trace: bad slot");
  const int total = layout.total();
  const int d = layout.dims[slot];
  int right = 1;
  for (int k = slot + 1; k < n; ++k) right *= layout.dims[k];
  const int left = total / (d * right);
  const int rest = left * right;

  Mat out = Mat::Zero(rest, rest);
  for (int al = 0; al < left; ++al)
    for (int ar = 0; ar < right; ++ar)
      for (int bl = 0; bl < left; ++bl)
        for (int br = 0; br < right; ++br) {
          cplx sum = 0.0;
          for (int k = 0; k < d; ++k)
            sum += m((al * d + k) * right + ar, (bl * d + k) * right + br);
          out(al * right + ar, bl * right + br) = sum;
        }
  return out;
}

Mat perm_op(int d1, int d2) {
  Mat p = Mat::Zero(d1 * d2, d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) p(j * d1 + i, i * d2 + j) = 1.0;
  return p;
}

Mat permutation_op(const SpaceLayout& layout, int i, int j) {
  const int n = layout.n_slots();
  if (i < 0 || j < 0 || i >= n || j >= n) throw BadSlot("permutation_op: bad slot");
  if (i == j) throw DuplicateSlot("permutation_op: slots must differ");
  if (layout.dims[i] != layout.dims[j])
    throw DimensionMismatch("permutation_op: unequal leg dimensions");
  return embed(perm_op(layout.dims[i], layout.dims[j]), {i, j}, layout);
}

int numerical_rank(const Mat& m, double tol) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cutoff = tol * s(0);
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff) ++r;
  return r;
}

double subspace_angle(const Mat& a, const Mat& b) {
  // orthonormalize both column spaces, then largest principal angle
  Eigen::HouseholderQR<Mat> qa(a), qb(b);
  Mat ua = qa.householderQ() * Mat::Identity(a.rows(), a.cols());
  Mat ub = qb.householderQ() * Mat::Identity(b.rows(), b.cols());
  Mat overlap = ua.adjoint() * ub;
  Eigen::JacobiSVD<Mat> svd(overlap);
  double smin = svd.singularValues().minCoeff();
  smin = std::min(1.0, std::max(-1.0, smin));
  return std::sqrt(std::max(0.0, 1.0 - smin * smin));
}

Mat Projector::isometry() const {
  Mat u(basis.empty() ? 0 : basis[0].size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) u.col(k) = basis[k];
  return u;
}

Projector projector_from_basis(const std::vector<Vec>& basis) {
  Projector p;
  p.basis = basis;
  p.rank = static_cast<int>(basis.size());
  const Eigen::Index n = basis.empty() ? 0 : basis[0].size();
  p.matrix = Mat::Zero(n, n);
  for (const Vec& v : basis) p.matrix += v * v.transpose();  // bilinear pairing
  return p;
}

EigenFamily simultaneous_eigenbasis(const std::vector<Mat>& family, double tol,
                                    std::uint64_t seed) {
  if (family.empty()) throw std::runtime_error("simultaneous_eigenbasis: empty family");
  const Eigen::Index n = family[0].rows();
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      double r = rel_residual(family[a] * family[b], family[b] * family[a]);
      if (r > tol) throw NotCommuting("simultaneous_eigenbasis: commutator residual " +
                                      std::to_string(r));
    }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 5; ++attempt) {
    Mat comb = Mat::Zero(n, n);
    for (const Mat& m : family) comb += cplx(unif(rng), unif(rng)) * m;
    Eigen::ComplexEigenSolver<Mat> es(comb);
    if (es.info() != Eigen::Success) continue;
    Mat basis = es.eigenvectors();
    Eigen::JacobiSVD<Mat> svd(basis);
    const auto& s = svd.singularValues();
    double cond = s(0) / std::max(s(s.size() - 1), 1e-300);
    if (cond > 1e8) continue;

    EigenFamily out;
    out.basis = basis;
    out.basis_inv = basis.inverse();
    out.basis_condition = cond;
    bool ok = true;
    for (const Mat& m : family) {
      Mat d = out.basis_inv * m * out.basis;
      Mat offdiag = d;
      offdiag.diagonal().setZero();
      if (offdiag.norm() > 100.0 * tol * std::max(d.norm(), 1e-300)) {
        ok = false;
        break;
      }
      std::vector<cplx> eig(n);
      for (Eigen::Index k = 0; k < n; ++k) eig[k] = d(k, k);
      out.eigenvalues.push_back(std::move(eig));
    }
    if (ok) return out;
    // retry with a new random combination
  }
  throw IllConditionedBasis("simultaneous_eigenbasis: no well-conditioned basis in 5 attempts");
}

}  // namespace qd3
