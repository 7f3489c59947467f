#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qd3/local_ops.hpp"

using namespace qd3;

// Reference values below were produced by an independent prototype
// implementation and are frozen here as regression oracles
// (eta = 0.1, u = 0.7, left boundary (0.31, 0.57, 0.23),
//  right boundary (0.17, 0.83, -0.41) unless stated otherwise).

namespace {
const cplx kEta{0.1, 0.0};
const cplx kU{0.7, 0.0};

BoundaryParams left_b() { return make_boundary({0.31, 0.0}, {0.57, 0.0}, {0.23, 0.0}); }
BoundaryParams right_b() { return make_boundary({0.17, 0.0}, {0.83, 0.0}, {-0.41, 0.0}); }

void near(cplx got, double want, double tol = 1e-13) {
  CHECK(std::abs(got - cplx(want, 0.0)) < tol);
}
}  // namespace

TEST_CASE("vectorial weights at u=0.7") {
  auto w = weights::vectorial(kU, kEta);
  // order [a, b, e, g, gb, d, d1, d2, db, db1, db2, g1, g2, g3, gb1, gb2, gb3]
  near(w[0], -0.01506258756327226);   // a
  near(w[1], -0.03573385770959436);   // b
  near(w[2], 0.1075592095873049);     // e
  near(w[3], 0.01419382066968538);    // g
  near(w[4], 0.02858284480292934);    // gb
  near(w[5], 0.123795890375481);      // d
  near(w[6], 0.1013555025550768);     // d1
  near(w[7], 0.08298286693551538);    // d2
  near(w[8], 0.1671069729650563);     // db
  near(w[9], 0.2041049176873168);     // db1
  near(w[10], 0.2492943094173431);    // db2
  near(w[11], 0.08213444580836982);   // g1
  near(w[12], 0.1155493232247622);    // g2
  near(w[13], 0.1653984626231919);    // g3
  near(w[14], 0.333071601918907);     // gb1
  near(w[15], 0.2326877624902461);    // gb2
  near(w[16], 0.1653984626231919);    // gb3
}

TEST_CASE("fused, pm, and spinorial weights") {
  auto f = weights::fused(kU, kEta);  // [a1, b1, e1, e2, e3, e4]
  near(f[0], 0.05002083593765495);
  near(f[1], 0.2526123168081683);
  near(f[2], 0.1568006364394704);
  near(f[3], 0.1283775031551944);
  near(f[4], 0.2585205445570724);
  near(f[5], 0.3157577061630773);

  auto r = weights::pm(kU, kEta);  // [r1..r5, rb3, rb4, rb5]
  near(r[0], -0.05002083593765506);
  near(r[1], 0.1505631331516126);
  near(r[2], -0.1732915033286553);
  near(r[3], -0.1418790830222856);
  near(r[4], -0.1161607684888494);
  near(r[5], -0.2339190620462716);
  near(r[6], -0.2857093875695561);
  near(r[7], -0.3489662340097087);

  auto s = weights::spinorial(kU, kEta);  // [a2, b2, e5, e6]
  near(s[0], 0.1505631331516126);
  near(s[1], 0.3571897294372719);
  near(s[2], -0.1418790830222856);
  near(s[3], -0.2857093875695561);

  auto s4 = weights::spinorial({0.4, 0.0}, kEta);
  near(s4[0], 0.0);  // a2 vanishes at the spinorial degeneration point
  near(s4[2], -0.1648399769821803);
}

TEST_CASE("boundary scalars") {
  auto bl = left_b(), br = right_b();
  near(weights::h(0, kU, kEta, bl), 0.926536225722158);
  near(weights::h(1, kU, kEta, bl), 0.2015431376993675);
  near(weights::h(2, kU, kEta, bl), 1.343543782418185);
  near(weights::h(3, kU, kEta, bl), 0.008532838975919679);
  near(weights::h(4, kU, kEta, bl), 0.9462206156916572);
  near(weights::h_tilde(1, kU, kEta, br), -0.6526686700837957);
  near(weights::h_tilde(2, kU, kEta, br), -0.1744968486381066);

  near(weights::rho1(kU, kEta), -0.01432222334709882);
  near(weights::rho_s(kU, kEta), -0.03485189369433762);
}

TEST_CASE("R matrix entries") {
  Mat r = r_vector(kU, kEta);
  CHECK(r.rows() == 36);
  near(r(0, 0), -0.01506258756327226);   // a
  near(r(1, 6), 0.01419382066968538);    // g
  near(r(35, 35), -0.01506258756327226);

  Mat rp = r_plus(kU, kEta);
  CHECK(rp.rows() == 24);
  near(rp(0, 0), 0.05002083593765495);  // a1

  Mat rm = r_minus(kU, kEta);
  near(rm(4, 9), -0.1568006364394704);  // -e1

  Mat rpm = r_pm(kU, kEta);
  CHECK(rpm.rows() == 16);
  near(rpm(0, 0), -0.05002083593765506);  // r1
  CHECK(rel_residual(r_mp(kU, kEta), rpm.transpose()) < 1e-14);

  Mat rt = r_spinorial(kU, kEta);
  near(rt(5, 5), 0.1505631331516126);  // a2
}

TEST_CASE("R matrix structural identities") {
  // regularity R(0) = a(0) P = 2 sinh(2eta) sinh(4eta) P
  Mat r0 = r_vector(0.0, kEta);
  cplx c = 2.0 * std::sinh(2.0 * kEta) * std::sinh(4.0 * kEta);
  CHECK(rel_residual(r0, c * perm_op(6, 6)) < 1e-13);

  // unitarity R12(u) R21(-u) = rho1(u) I
  Mat p66 = perm_op(6, 6);
  Mat r21 = p66 * r_vector(-kU, kEta) * p66;
  CHECK(rel_residual(r_vector(kU, kEta) * r21,
                     weights::rho1(kU, kEta) * Mat::Identity(36, 36)) < 1e-13);
}

TEST_CASE("K matrices") {
  Mat k = k_matrix(kU, kEta, left_b());
  near(k(0, 0), 0.1135557407016668);
  near(k(1, 1), -0.06065577405115652);
  near(k(1, 3), -0.52812564866163);
  near(k(3, 1), -0.5565807412745415);
  near(k(5, 5), -1.933256805794695);

  Mat kb = k_bar(kU, kEta, right_b());
  near(kb(0, 0), 0.8187012397996632);
  near(kb(2, 4), 0.1015454741426476);
}

TEST_CASE("fused K matrices") {
  Mat kp = k_plus_fused(kU, kEta, left_b());
  near(kp(0, 0), -0.08476566711031658);
  near(kp(0, 1), 0.432392710048534);
  near(kp(2, 2), 1.343543782418185);

  Mat km = k_minus_fused(kU, kEta, left_b());
  near(km(0, 0), -0.0006730601160487, 1e-12);
  near(km(2, 2), 0.1735384546367746);
  near(km(2, 3), 0.432392710048534);

  near(k_bar_fused(+1, kU, kEta, right_b())(0, 0), -0.8257133656558532);
  near(k_bar_fused(-1, kU, kEta, right_b())(3, 3), -0.03757916883837963);
}

TEST_CASE("twist matrices") {
  Mat v = twist_V(kEta);
  CHECK(rel_residual(v * v, Mat::Identity(6, 6)) < 1e-14);
  CHECK(rel_residual(v.transpose() * v, twist_M(kEta)) < 1e-14);

  Mat vb = twist_Vbar(kEta);
  CHECK(rel_residual(vb * vb, -Mat::Identity(4, 4)) < 1e-14);
  CHECK(rel_residual(vb.transpose() * vb, twist_Mbar(kEta)) < 1e-14);

  CHECK(twist_W().diagonal().sum() == cplx(0.0));
  CHECK(twist_St().diagonal().sum() == cplx(0.0));
}

TEST_CASE("projectors idempotent with expected ranks") {
  struct Want {
    ProjName name;
    int rank;
  };
  for (auto [name, rank] : {Want{ProjName::P1, 1}, Want{ProjName::P16, 16},
                            Want{ProjName::Pplus, 4}, Want{ProjName::Pminus, 4},
                            Want{ProjName::P6, 6}}) {
    for (ProjSide side : {ProjSide::s12, ProjSide::s21}) {
      Projector p = projector(name, side, kEta);
      CHECK(p.rank == rank);
      CHECK(rel_residual(p.matrix * p.matrix, p.matrix) < 1e-12);
      // bilinear gram U^t U = I
      Mat u = p.isometry();
      CHECK(rel_residual(u.transpose() * u, Mat::Identity(rank, rank)) < 1e-12);
    }
  }
}

TEST_CASE("S transforms") {
  Mat s = s_transform(kEta);
  CHECK(s.rows() == 16);
  near(s(0, 0), 2.286736295567916);
  near(s(1, 1), -2.286736295567916);

  Mat sb = s_bar_transform(kEta);
  near(sb(0, 0), 2.286736295567916);
}
