#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qd3/la.hpp"

using namespace qd3;

namespace {

Mat random_mat(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

}  // namespace

TEST_CASE("kron shapes and values") {
  Mat a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  Mat k = kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(std::abs(k(0, 1) - cplx(5)) < 1e-15);   // a00*b01
  CHECK(std::abs(k(2, 1) - cplx(15)) < 1e-15);  // a10*b01
  CHECK(std::abs(k(3, 3) - cplx(28)) < 1e-15);  // a11*b11
}

TEST_CASE("embed on adjacent and non-adjacent slots") {
  SpaceLayout lay{{2, 3, 2}};
  Mat a = random_mat(2, 1), b = random_mat(3, 2);

  // single slot: embed == I (x) op (x) I
  Mat e1 = embed(b, {1}, lay);
  Mat ref = kron(kron(Mat::Identity(2, 2), b), Mat::Identity(2, 2));
  CHECK(rel_residual(e1, ref) < 1e-14);

  // two adjacent slots in order
  Mat ab = kron(a, b);
  Mat e2 = embed(ab, {0, 1}, lay);
  CHECK(rel_residual(e2, kron(ab, Mat::Identity(2, 2))) < 1e-14);

  // non-adjacent slots {0,2}: contract against explicit action on basis vectors
  Mat aa = kron(a, random_mat(2, 3));
  Mat e3 = embed(aa, {0, 2}, lay);
  CHECK(e3.rows() == 12);
  // reversed order embed of a (x) c on {2,0} equals embed of P(a (x) c)P on {0,2}
  Mat c = random_mat(2, 4);
  Mat ac = kron(a, c);
  Mat p = perm_op(2, 2);
  CHECK(rel_residual(embed(ac, {2, 0}, lay), embed(p * ac * p, {0, 2}, lay)) < 1e-13);

  CHECK_THROWS_AS(embed(a, {0, 0}, lay), DuplicateSlot);
  CHECK_THROWS_AS(embed(a, {5}, lay), BadSlot);
  CHECK_THROWS_AS(embed(b, {0}, lay), DimensionMismatch);
}

TEST_CASE("partial transpose and partial trace") {
  SpaceLayout lay{{2, 3}};
  Mat a = random_mat(2, 5), b = random_mat(3, 6);
  Mat m = kron(a, b);
  CHECK(rel_residual(partial_transpose(m, 1, lay), kron(a, b.transpose())) < 1e-14);
  CHECK(rel_residual(partial_transpose(partial_transpose(m, 0, lay), 0, lay), m) < 1e-14);
  Mat tr0 = partial_trace(m, 0, lay);
  CHECK(rel_residual(tr0, a.trace() * b) < 1e-14);
  Mat tr1 = partial_trace(m, 1, lay);
  CHECK(rel_residual(tr1, b.trace() * a) < 1e-14);
}

TEST_CASE("permutation operators") {
  Vec x(2), y(3);
  x << 1, 2;
  y << 3, 4, 5;
  Vec xy = kron(Mat(x), Mat(y)).col(0);
  Vec yx = kron(Mat(y), Mat(x)).col(0);
  CHECK((perm_op(2, 3) * xy - yx).norm() < 1e-14);

  SpaceLayout lay{{2, 3, 2}};
  Mat sw = permutation_op(lay, 0, 2);
  Mat a = random_mat(2, 7), b = random_mat(3, 8), c = random_mat(2, 9);
  Mat abc = kron(kron(a, b), c);
  Mat cba = kron(kron(c, b), a);
  CHECK(rel_residual(sw * abc * sw, cba) < 1e-13);
}

TEST_CASE("numerical rank and subspace angle") {
  Mat m = Mat::Zero(5, 5);
  m(0, 0) = 2.0;
  m(1, 1) = 1e-12;
  CHECK(numerical_rank(m) == 1);

  Mat a(3, 1), b(3, 1), c(3, 1);
  a << 1, 0, 0;
  b << 2, 0, 0;
  c << 0, 1, 0;
  CHECK(subspace_angle(a, b) < 1e-14);
  CHECK(std::abs(subspace_angle(a, c) - 1.0) < 1e-14);
}

TEST_CASE("projector from bilinear basis") {
  Vec v1(3), v2(3);
  v1 << 1, 0, 0;
  v2 << 0, 1, 0;
  Projector p = projector_from_basis({v1, v2});
  CHECK(p.rank == 2);
  CHECK(rel_residual(p.matrix * p.matrix, p.matrix) < 1e-14);
  CHECK(p.isometry().cols() == 2);
}

TEST_CASE("simultaneous eigenbasis of a commuting family") {
  // build two commuting matrices sharing eigenvectors, with a degeneracy in
  // the first member resolved by the second
  Mat s = random_mat(4, 11);
  Mat si = s.inverse();
  Vec d1(4), d2(4);
  d1 << 1.0, 1.0, 2.0, 3.0;  // degenerate pair
  d2 << 5.0, 6.0, 7.0, 8.0;
  Mat a = s * d1.asDiagonal() * si;
  Mat b = s * d2.asDiagonal() * si;
  EigenFamily f = simultaneous_eigenbasis({a, b}, 1e-9);
  // each recovered eigenpair must diagonalize both members
  Mat da = f.basis_inv * a * f.basis;
  Mat db = f.basis_inv * b * f.basis;
  Mat da_off = da - Mat(da.diagonal().asDiagonal());
  Mat db_off = db - Mat(db.diagonal().asDiagonal());
  CHECK(da_off.norm() / da.norm() < 1e-9);
  CHECK(db_off.norm() / db.norm() < 1e-9);

  Mat nc = random_mat(4, 13);
  CHECK_THROWS_AS(simultaneous_eigenbasis({a, nc}, 1e-9), NotCommuting);
}
