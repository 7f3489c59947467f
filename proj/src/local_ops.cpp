#include "qd3/local_ops.hpp"

#include <cmath>

#include "qd3/tables.hpp"

namespace qd3 {

namespace {

using std::exp;
using std::sinh;
using std::cosh;
using std::sqrt;

template <typename Table, typename Fn>
Mat from_table(int n, const Table& table, Fn value) {
  Mat m = Mat::Zero(n, n);
  for (const auto& e : table) m(e.r, e.c) = value(e);
  return m;
}

}  // namespace

namespace weights {

std::array<cplx, 17> vectorial(cplx u, cplx eta) {
  std::array<cplx, 17> w{};
  const cplx h = u / 2.0;
  w[0] = 2.0 * sinh(h - 2.0 * eta) * sinh(h - 4.0 * eta);       // a
  w[1] = 2.0 * sinh(h) * sinh(h - 4.0 * eta);                   // b
  w[2] = 2.0 * sinh(h) * sinh(h - 2.0 * eta);                   // e
  w[3] = -2.0 * exp(-h) * sinh(2.0 * eta) * sinh(h - 4.0 * eta);  // g
  w[4] = exp(u) * w[3];                                         // g-bar
  w[5] = 2.0 * exp(-h + 2.0 * eta) * sinh(2.0 * eta) * sinh(h);  // d
  w[6] = exp(-2.0 * eta) * w[5];                                // d_1
  w[7] = exp(-4.0 * eta) * w[5];                                // d_2
  w[8] = exp(u - 4.0 * eta) * w[5];                             // d-bar
  w[9] = exp(2.0 * eta) * w[8];                                 // d-bar_1
  w[10] = exp(4.0 * eta) * w[8];                                // d-bar_2
  w[11] = 2.0 * exp(-u) * sinh(2.0 * eta) * sinh(4.0 * eta);    // g_1
  w[12] = 4.0 * exp(-h) * sinh(2.0 * eta) * sinh(2.0 * eta) * cosh(h - 2.0 * eta);  // g_2
  w[13] = exp(u) * w[11];                                       // g_3
  w[14] = exp(2.0 * u) * w[11];                                 // g-bar_1
  w[15] = exp(u) * w[12];                                       // g-bar_2
  w[16] = w[13];                                                // g-bar_3
  return w;
}

std::array<cplx, 6> fused(cplx u, cplx eta) {
  const cplx h = u / 2.0, s2 = sinh(2.0 * eta);
  return {sinh(h - 3.0 * eta), sinh(h - eta),
          exp(-h + eta) * s2, exp(-h - eta) * s2,
          exp(h - eta) * s2, exp(h + eta) * s2};
}

std::array<cplx, 8> pm(cplx u, cplx eta) {
  const cplx h = u / 2.0, s2 = sinh(2.0 * eta);
  return {sinh(h - 4.0 * eta), sinh(h - 2.0 * eta),
          -exp(-h + 2.0 * eta) * s2, -exp(-h) * s2, -exp(-h - 2.0 * eta) * s2,
          -exp(h - 2.0 * eta) * s2, -exp(h) * s2, -exp(h + 2.0 * eta) * s2};
}

std::array<cplx, 4> spinorial(cplx u, cplx eta) {
  const cplx h = u / 2.0, s2 = sinh(2.0 * eta);
  return {sinh(h - 2.0 * eta), sinh(h), -exp(-h) * s2, -exp(h) * s2};
}

cplx a(cplx u, cplx eta) { return 2.0 * sinh(u / 2.0 - 2.0 * eta) * sinh(u / 2.0 - 4.0 * eta); }
cplx b(cplx u, cplx eta) { return 2.0 * sinh(u / 2.0) * sinh(u / 2.0 - 4.0 * eta); }
cplx e(cplx u, cplx eta) { return 2.0 * sinh(u / 2.0) * sinh(u / 2.0 - 2.0 * eta); }
cplx a1(cplx u, cplx eta) { return sinh(u / 2.0 - 3.0 * eta); }
cplx b1(cplx u, cplx eta) { return sinh(u / 2.0 - eta); }

cplx h(int i, cplx u, cplx eta, const BoundaryParams& p) {
  switch (i) {
    case 0: return exp(2.0 * eta) * sinh(u);
    case 1: return exp(-u / 2.0) * sinh(u / 2.0 - p.c2) + p.c * exp(-u) * sinh(u);
    case 2: return exp(u / 2.0) * sinh(u / 2.0 + p.c2) + p.c * exp(u) * sinh(u);
    case 3: return exp(-u / 2.0) * sinh(u / 2.0 - p.c2) - p.c * exp(2.0 * eta) * sinh(2.0 * eta);
    case 4: return exp(u / 2.0) * sinh(u / 2.0 + p.c2) + p.c * exp(2.0 * eta) * sinh(2.0 * eta);
    default: throw std::invalid_argument("weights::h: index out of range");
  }
}

cplx h_tilde(int i, cplx u, cplx eta, const BoundaryParams& primed) {
  return -h(i, u, eta, primed);
}

cplx k1(cplx u, cplx eta, const BoundaryParams& p) {
  return exp(-u / 2.0 - 2.0 * eta) * sinh(p.c2 - u / 2.0 + 2.0 * eta) + p.c * sinh(4.0 * eta);
}
cplx k2(cplx u, cplx eta, const BoundaryParams& p) {
  return exp(u / 2.0 - 2.0 * eta) * sinh(p.c2 + u / 2.0 + 2.0 * eta) + p.c * sinh(4.0 * eta);
}

cplx rho1(cplx u, cplx eta) { return a(u, eta) * a(-u, eta); }
cplx rho_s(cplx u, cplx eta) { return a1(u, eta) * a1(-u, eta); }
cplx rho_ss(cplx u, cplx eta) { return -sinh(u / 2.0 - 2.0 * eta) * sinh(u / 2.0 - 6.0 * eta); }
cplx rho0t(cplx u, cplx eta) { return sinh(u / 2.0 + 2.0 * eta) * sinh(u / 2.0 - 4.0 * eta); }
cplx f_bar(cplx u, cplx eta) { return -sinh(2.0 * eta) * sinh(u - 8.0 * eta); }

}  // namespace weights

Mat r_vector(cplx u, cplx eta) {
  const auto w = weights::vectorial(u, eta);
  return from_table(36, tables::R_VECTOR,
                    [&](const tables::Entry& e) { return double(e.s) * w[e.w]; });
}

Mat r_plus(cplx u, cplx eta) {
  const auto w = weights::fused(u, eta);
  return from_table(24, tables::R_PLUS,
                    [&](const tables::Entry& e) { return double(e.s) * w[e.w]; });
}

Mat r_minus(cplx u, cplx eta) {
  const auto w = weights::fused(u, eta);
  return from_table(24, tables::R_MINUS,
                    [&](const tables::Entry& e) { return double(e.s) * w[e.w]; });
}

Mat r_pm(cplx u, cplx eta) {
  const auto w = weights::pm(u, eta);
  return from_table(16, tables::R_PM,
                    [&](const tables::Entry& e) { return double(e.s) * w[e.w]; });
}

Mat r_mp(cplx u, cplx eta) { return r_pm(u, eta).transpose(); }

Mat r_spinorial(cplx u, cplx eta) {
  const auto w = weights::spinorial(u, eta);
  return from_table(16, tables::R_SPINOR,
                    [&](const tables::Entry& e) { return double(e.s) * w[e.w]; });
}

Mat k_matrix(cplx u, cplx eta, const BoundaryParams& p) {
  using weights::h;
  Mat k = Mat::Zero(6, 6);
  k(0, 0) = h(1, u - 2.0 * eta, eta, p);
  k(1, 1) = k(2, 2) = h(3, u - 2.0 * eta, eta, p);
  k(3, 3) = k(4, 4) = -h(4, u + 2.0 * eta, eta, p);
  k(5, 5) = -h(2, u + 2.0 * eta, eta, p);
  const cplx h0 = h(0, u, eta, p);
  k(1, 3) = -p.c1 * h0;
  k(3, 1) = -p.c3 * h0;
  k(2, 4) = p.c1 * h0;
  k(4, 2) = p.c3 * h0;
  return k;
}

Mat k_bar(cplx u, cplx eta, const BoundaryParams& primed) {
  return twist_M(eta) * k_matrix(-u + 8.0 * eta, eta, primed);
}

Mat twist_M(cplx eta) {
  Mat m = Mat::Zero(6, 6);
  const double kk[] = {8, 4, 0, 0, -4, -8};
  for (int i = 0; i < 6; ++i) m(i, i) = std::exp(kk[i] * eta);
  return m;
}

Mat twist_V(cplx eta) {
  return from_table(6, tables::V_TABLE, [&](const tables::XEntry& e) {
    return double(e.s) * std::exp(double(e.k) * eta);
  });
}

Mat twist_Mbar(cplx eta) {
  Mat m = Mat::Zero(4, 4);
  const double kk[] = {6, 2, -2, -6};
  for (int i = 0; i < 4; ++i) m(i, i) = std::exp(kk[i] * eta);
  return m;
}

Mat twist_Vbar(cplx eta) {
  return from_table(4, tables::VBAR_TABLE, [&](const tables::XEntry& e) {
    return double(e.s) * std::exp(double(e.k) * eta);
  });
}

Mat twist_W() {
  Mat m = Mat::Zero(6, 6);
  for (int i = 0; i < 6; ++i) m(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  return m;
}

Mat twist_St() {
  Mat m = Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  return m;
}

Mat k_plus_fused(cplx u, cplx eta, const BoundaryParams& p) {
  Mat k = Mat::Zero(4, 4);
  k(0, 0) = std::exp(-u / 2.0) * std::sinh(p.c2 - u / 2.0);
  k(0, 1) = p.c1 * std::sinh(u);
  k(1, 0) = p.c3 * std::sinh(u);
  k(1, 1) = std::exp(u / 2.0) * std::sinh(p.c2 + u / 2.0);
  const cplx h2 = weights::h(2, u, eta, p);
  k(2, 2) = h2;
  k(3, 3) = h2;
  return k;
}

Mat k_minus_fused(cplx u, cplx eta, const BoundaryParams& p) {
  Mat k = Mat::Zero(4, 4);
  const cplx d = -std::exp(-4.0 * eta) * weights::h(1, u - 4.0 * eta, eta, p);
  k(0, 0) = d;
  k(1, 1) = d;
  k(2, 2) = weights::k1(u, eta, p);
  k(3, 3) = weights::k2(u, eta, p);
  k(2, 3) = p.c1 * std::sinh(u);
  k(3, 2) = p.c3 * std::sinh(u);
  return k;
}

Mat k_bar_fused(int sign, cplx u, cplx eta, const BoundaryParams& primed) {
  const Mat inner = (sign > 0) ? k_plus_fused(-u + 8.0 * eta, eta, primed)
                               : k_minus_fused(-u + 8.0 * eta, eta, primed);
  return twist_Mbar(eta) * inner;
}

namespace {

Vec basis_vec(int dim1, int dim2, int i, int j) {  // |ij>, 1-based labels
  Vec v = Vec::Zero(dim1 * dim2);
  v(dim2 * (i - 1) + (j - 1)) = 1.0;
  return v;
}

std::vector<Vec> p1_basis(cplx eta) {
  auto v66 = [](int i, int j) { return basis_vec(6, 6, i, j); };
  const cplx norm = sqrt(sinh(2.0 * eta) / (2.0 * cosh(4.0 * eta) * sinh(6.0 * eta)));
  Vec psi = norm * (exp(-4.0 * eta) * v66(1, 6) + exp(-2.0 * eta) * v66(2, 5) + v66(3, 4) +
                    v66(4, 3) + exp(2.0 * eta) * v66(5, 2) + exp(4.0 * eta) * v66(6, 1));
  return {psi};
}

std::vector<Vec> p16_basis(cplx eta) {
  auto v66 = [](int i, int j) { return basis_vec(6, 6, i, j); };
  const cplx phi = 1.0 / sqrt(2.0 * cosh(2.0 * eta));
  const cplx phb = sqrt(sinh(2.0 * eta) / (2.0 * cosh(6.0 * eta) * sinh(8.0 * eta)));
  const cplx em = exp(-eta), ep = exp(eta);
  std::vector<Vec> out(16);
  // antisymmetric-type pairs phi_n = phi (e^{-eta}|ij> - e^{eta}|ji>)
  const struct { int n, i, j; } pairs[] = {{1, 1, 2}, {2, 1, 3}, {3, 1, 4}, {4, 1, 5},
                                           {6, 2, 3}, {7, 2, 4}, {9, 2, 6}, {11, 3, 5},
                                           {12, 3, 6}, {14, 4, 5}, {15, 4, 6}, {16, 5, 6}};
  for (const auto& pr : pairs)
    out[pr.n - 1] = phi * (em * v66(pr.i, pr.j) - ep * v66(pr.j, pr.i));
  out[4] = (exp(-2.0 * eta) * v66(1, 6) - exp(2.0 * eta) * v66(6, 1)) /
           sqrt(2.0 * cosh(4.0 * eta));
  out[7] = 2.0 * phb *
           (cosh(4.0 * eta) * (exp(-2.0 * eta) * v66(2, 5) - exp(2.0 * eta) * v66(5, 2)) -
            sinh(2.0 * eta) * (exp(2.0 * eta) * v66(1, 6) + exp(-2.0 * eta) * v66(6, 1)));
  out[9] = phb * (exp(4.0 * eta) * v66(2, 5) + exp(-4.0 * eta) * v66(5, 2) +
                  exp(2.0 * eta) * v66(1, 6) + exp(-2.0 * eta) * v66(6, 1) +
                  2.0 * cosh(6.0 * eta) * v66(3, 4));
  const cplx r28 = sinh(2.0 * eta) / sinh(8.0 * eta);
  Vec v13 = r28 * (exp(4.0 * eta) * v66(2, 5) + exp(-4.0 * eta) * v66(5, 2) +
                   exp(2.0 * eta) * v66(1, 6) + exp(-2.0 * eta) * v66(6, 1)) -
            v66(3, 4) / (2.0 * cosh(4.0 * eta)) + v66(4, 3);
  const cplx n13sq = r28 * r28 * (2.0 * cosh(8.0 * eta) + 2.0 * cosh(4.0 * eta)) +
                     1.0 / (4.0 * cosh(4.0 * eta) * cosh(4.0 * eta)) + 1.0;
  out[12] = v13 / sqrt(n13sq);
  return out;
}

std::vector<Vec> swap_basis(const std::vector<Vec>& basis, int d1, int d2) {
  const Mat p = perm_op(d1, d2);
  std::vector<Vec> out;
  out.reserve(basis.size());
  for (const Vec& v : basis) out.push_back(p * v);
  return out;
}

// Fused-pair bases on the [4,6] layout; sgn picks the (+) / (-) family.
std::vector<Vec> phi_basis_12(int sgn, cplx eta) {
  auto v46 = [](int k, int l) { return basis_vec(4, 6, k, l); };
  const cplx f = sqrt(sinh(2.0 * eta) / sinh(6.0 * eta));
  const cplx em = exp(-2.0 * eta), ep = exp(2.0 * eta);
  if (sgn > 0) {
    return {f * (em * v46(1, 4) - v46(2, 2) + ep * v46(3, 1)),
            f * (em * v46(1, 5) + v46(2, 3) - ep * v46(4, 1)),
            f * (em * v46(1, 6) - v46(3, 3) + ep * v46(4, 2)),
            f * (em * v46(2, 6) + v46(3, 5) + ep * v46(4, 4))};
  }
  return {f * (em * v46(1, 3) + v46(2, 2) + ep * v46(3, 1)),
          f * (em * v46(1, 5) - v46(2, 4) - ep * v46(4, 1)),
          f * (em * v46(1, 6) - v46(3, 4) + ep * v46(4, 2)),
          f * (em * v46(2, 6) - v46(3, 5) - ep * v46(4, 3))};
}

// Side-21 variants: eta -> -eta with kets swapped, re-expressed on [4,6].
std::vector<Vec> phi_basis_21(int sgn, cplx eta) {
  auto v64 = [](int k, int l) { return basis_vec(6, 4, k, l); };
  const cplx f = sqrt(sinh(2.0 * eta) / sinh(6.0 * eta));
  const cplx em = exp(-2.0 * eta), ep = exp(2.0 * eta);
  std::vector<Vec> raw;
  if (sgn > 0) {
    raw = {f * (ep * v64(4, 1) - v64(2, 2) + em * v64(1, 3)),
           f * (ep * v64(5, 1) + v64(3, 2) - em * v64(1, 4)),
           f * (ep * v64(6, 1) - v64(3, 3) + em * v64(2, 4)),
           f * (ep * v64(6, 2) + v64(5, 3) + em * v64(4, 4))};
  } else {
    raw = {f * (ep * v64(3, 1) + v64(2, 2) + em * v64(1, 3)),
           f * (ep * v64(5, 1) - v64(4, 2) - em * v64(1, 4)),
           f * (ep * v64(6, 1) - v64(4, 3) + em * v64(2, 4)),
           f * (ep * v64(6, 2) - v64(5, 3) - em * v64(3, 4))};
  }
  return swap_basis(raw, 6, 4);
}

std::vector<Vec> chi_basis(ProjSide side, cplx eta) {
  auto v44 = [](int k, int l) { return basis_vec(4, 4, k, l); };
  const cplx f = 1.0 / sqrt(2.0 * cosh(2.0 * eta));
  const cplx em = exp(-eta), ep = exp(eta);
  const struct { int i, j; double sgn; } pairs[] = {{1, 2, 1}, {1, 3, 1}, {1, 4, 1},
                                                    {2, 3, 1}, {2, 4, -1}, {3, 4, 1}};
  std::vector<Vec> out;
  out.reserve(6);
  for (const auto& pr : pairs) {
    Vec v = (side == ProjSide::s12)
                ? Vec(f * (pr.sgn * em * v44(pr.i, pr.j) - pr.sgn * ep * v44(pr.j, pr.i)))
                : Vec(f * (pr.sgn * ep * v44(pr.j, pr.i) - pr.sgn * em * v44(pr.i, pr.j)));
    out.push_back(v);
  }
  return out;
}

}  // namespace

Projector projector(ProjName name, ProjSide side, cplx eta) {
  switch (name) {
    case ProjName::P1: {
      auto b = p1_basis(eta);
      if (side == ProjSide::s21) b = swap_basis(b, 6, 6);
      return projector_from_basis(b);
    }
    case ProjName::P16: {
      auto b = p16_basis(eta);
      if (side == ProjSide::s21) b = swap_basis(b, 6, 6);
      return projector_from_basis(b);
    }
    case ProjName::Pplus:
      return projector_from_basis(side == ProjSide::s12 ? phi_basis_12(+1, eta)
                                                        : phi_basis_21(+1, eta));
    case ProjName::Pminus:
      return projector_from_basis(side == ProjSide::s12 ? phi_basis_12(-1, eta)
                                                        : phi_basis_21(-1, eta));
    case ProjName::P6:
      return projector_from_basis(chi_basis(side, eta));
  }
  throw std::invalid_argument("projector: unknown name");
}

Mat s_transform(cplx eta) {
  std::array<cplx, 13> s{};
  s[0] = 2.0 * sqrt(cosh(2.0 * eta) * cosh(4.0 * eta) * cosh(6.0 * eta));
  s[1] = -exp(5.0 * eta) * sqrt(cosh(6.0 * eta));
  s[2] = -exp(-2.0 * eta) * s[1];
  s[3] = exp(-8.0 * eta) * s[1];
  s[4] = exp(-10.0 * eta) * s[1];
  s[5] = -exp(5.0 * eta) * sqrt(cosh(2.0 * eta));
  s[6] = exp(-10.0 * eta) * s[5];
  s[7] = -exp(-4.0 * eta) * s[5];
  s[8] = -exp(eta) * cosh(4.0 * eta) * sqrt(cosh(2.0 * eta));
  s[9] = exp(-2.0 * eta) * s[8];
  s[10] = exp(-4.0 * eta) * s[5];
  s[11] = exp(-eta) * sqrt(sinh(12.0 * eta) / (2.0 * sinh(2.0 * eta)));
  s[12] = -exp(2.0 * eta) * s[11];
  return from_table(16, tables::S_TABLE, [&](const tables::SEntry& e) {
    cplx v = s[e.sid];
    switch (e.mod) {
      case 1: return -v;
      case 2: return exp(-2.0 * eta) * v;
      case 3: return 2.0 * v;
      default: return v;
    }
  });
}

Mat s_bar_transform(cplx eta) {
  const cplx s4 = std::sinh(4.0 * eta);
  if (std::abs(s4) < 1e-14) throw Singular("s_bar_transform: sinh(4 eta) = 0");
  return -(1.0 / s4) * (s_transform(eta) * r_mp(cplx(0.0), eta));
}

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qd3
