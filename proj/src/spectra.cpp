#include "qd3/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace qd3 {

namespace {

using std::sinh;
using std::exp;

cplx guard_div(cplx num, cplx den, const char* what) {
  if (std::abs(den) < 1e-12) throw NearPole(std::string("near pole in ") + what);
  return num / den;
}

struct TQContext {
  const ModelParams& p;
  const BetheState& s;
  cplx eta;

  cplx q1(cplx w) const {
    cplx prod = 1.0;
    for (cplx m : s.mu1)
      prod *= sinh((w - m - 2.0 * eta) / 2.0) * sinh((w + m - 2.0 * eta) / 2.0);
    return prod;
  }
  cplx q23(cplx w, const std::vector<cplx>& mus) const {
    cplx prod = 1.0;
    for (cplx m : mus)
      prod *= sinh((w - m - 4.0 * eta) / 2.0) * sinh((w + m - 4.0 * eta) / 2.0);
    return prod;
  }
  cplx q2(cplx w) const { return q23(w, s.mu2); }
  cplx q3(cplx w) const { return q23(w, s.mu3); }

  cplx afac(cplx u) const {
    cplx prod = 1.0;
    for (cplx t : p.theta) prod *= weights::a(u - t, eta) * weights::a(u + t, eta);
    return prod;
  }
  cplx cfac(cplx u) const {
    cplx prod = 1.0;
    for (cplx t : p.theta) prod *= weights::e(u - t, eta) * weights::e(u + t, eta);
    return prod;
  }
  cplx bfac(cplx u) const {
    cplx prod = guard_div(sinh(u) * sinh(u - 8.0 * eta),
                          sinh(u - 4.0 * eta) * sinh(u - 4.0 * eta), "B(u)");
    for (cplx t : p.theta) prod *= weights::b(u - t, eta) * weights::b(u + t, eta);
    return prod;
  }
  cplx ffac(cplx u) const {
    cplx prod = guard_div(sinh(u) * sinh(u - 8.0 * eta), sinh(u - 4.0 * eta), "F(u)");
    for (cplx t : p.theta)
      prod *= weights::a(u - t, eta) * weights::a(u + t, eta) * sinh((u - t) / 2.0) *
              sinh((u + t) / 2.0);
    return prod;
  }
  cplx h(int i, cplx w) const { return weights::h(i, w, eta, p.left); }
  cplx ht(int i, cplx w) const { return weights::h_tilde(i, w, eta, p.right); }
};

}  // namespace

cplx bethe_x(int l1, const ModelParams& p) {
  const cplx eta = p.eta;
  const auto& b = p.left;
  const auto& bt = p.right;
  return -exp(4.0 * eta) * (b.c1 * bt.c3 * exp(-2.0 * eta) + bt.c1 * b.c3 * exp(2.0 * eta)) +
         b.c * (bt.c + exp(-bt.c2)) * exp(4.0 * eta + 2.0 * double(l1 + 1) * eta) +
         bt.c * (b.c + exp(-b.c2)) * exp(4.0 * eta - 2.0 * double(l1 + 1) * eta);
}

BetheState make_bethe_state(std::vector<cplx> mu1, std::vector<cplx> mu2,
                            std::vector<cplx> mu3, const ModelParams& p) {
  if (int(mu1.size()) != int(mu2.size()) + int(mu3.size()) + p.n_sites)
    throw std::invalid_argument("make_bethe_state: counting rule L1 = L2 + L3 + N violated");
  BetheState s;
  s.mu1 = std::move(mu1);
  s.mu2 = std::move(mu2);
  s.mu3 = std::move(mu3);
  s.m1 = int(s.mu2.size());
  s.m2 = int(s.mu3.size());
  s.x = bethe_x(int(s.mu1.size()), p);
  return s;
}

Vec SpectralFamily::lambda_at(cplx u) const {
  const Mat d = basis_inv * transfer(u, params) * basis;
  return d.diagonal();
}

Vec SpectralFamily::lambda_plus_at(cplx u) const {
  const Mat d = basis_inv * transfer_fused(u, +1, params) * basis;
  return d.diagonal();
}

SpectralFamily diagonalize_family(const ValidatedParams& vp,
                                  const std::vector<cplx>& u_grid) {
  const ModelParams& p = vp.p;
  if (p.n_sites > 3) throw std::invalid_argument("diagonalize_family: N <= 3 required");
  const cplx a0(0.37, 0.0), a1(0.82, 0.0);  // generic anchor points
  std::vector<Mat> anchors = {transfer(a0, p), transfer(a1, p), transfer_fused(a0, +1, p)};
  EigenFamily ef = simultaneous_eigenbasis(anchors, 1e-9, p.rng_seed + 12345);

  SpectralFamily f;
  f.params = p;
  f.basis = ef.basis;
  f.basis_inv = ef.basis_inv;
  f.basis_condition = ef.basis_condition;
  f.n_states = int(ef.basis.rows());
  f.u_grid = u_grid;
  f.lambda.assign(f.n_states, std::vector<cplx>(u_grid.size()));
  f.lambda_plus.assign(f.n_states, std::vector<cplx>(u_grid.size()));
  for (std::size_t g = 0; g < u_grid.size(); ++g) {
    const Vec lv = f.lambda_at(u_grid[g]);
    const Vec lp = f.lambda_plus_at(u_grid[g]);
    for (int k = 0; k < f.n_states; ++k) {
      f.lambda[k][g] = lv(k);
      f.lambda_plus[k][g] = lp(k);
    }
  }
  return f;
}

std::vector<std::pair<int, int>> asymptotic_sectors(const SpectralFamily& family,
                                                    double u_max) {
  const ModelParams& p = family.params;
  const cplx eta = p.eta;
  const int n = p.n_sites;
  const auto& b = p.left;
  const auto& bt = p.right;
  auto asy_l = [&](int m1, int m2) {
    return -(1.0 / std::pow(4.0, n + 1)) *
           (b.c * (bt.c + exp(-bt.c2)) * exp(4.0 * double(m1 - m2) * eta) +
            bt.c * (b.c + exp(-b.c2)) * exp(4.0 * double(m2 - m1) * eta) +
            (exp(2.0 * double(m1 + m2 - n - 1) * eta) +
             exp(-2.0 * double(m1 + m2 - n - 1) * eta)) *
                (b.c1 * bt.c3 * exp(-2.0 * eta) + bt.c1 * b.c3 * exp(2.0 * eta)));
  };
  auto asy_lp = [&](int m1, int m2) {
    return -(1.0 / std::pow(4.0, n + 1)) *
           (b.c * (bt.c + exp(-bt.c2)) * (exp(2.0 * double(2 * m1 - n - 1) * eta) +
                                          exp(2.0 * double(n + 1 - 2 * m2) * eta)) +
            exp(2.0 * double(m2 - m1) * eta) *
                (b.c1 * bt.c3 * exp(-2.0 * eta) + bt.c1 * b.c3 * exp(2.0 * eta)));
  };
  const Vec lv = family.lambda_at(u_max);
  const Vec lp = family.lambda_plus_at(u_max);
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < family.n_states; ++k) {
    const cplx coef_l = lv(k) * exp(cplx(-2.0 * (n + 1) * u_max) + (8.0 * n + 4.0) * eta);
    const cplx coef_lp = lp(k) * exp(cplx(-(n + 2) * u_max) + 4.0 * (n + 1) * eta);
    double best = 1e300;
    std::pair<int, int> sector{0, 0};
    for (int m1 = 0; m1 <= n; ++m1)
      for (int m2 = 0; m2 + m1 <= n; ++m2) {
        const double r =
            std::abs(coef_l - asy_l(m1, m2)) + std::abs(coef_lp - asy_lp(m1, m2));
        if (r < best) {
          best = r;
          sector = {m1, m2};
        }
      }
    out.push_back(sector);
  }
  return out;
}

std::vector<ResidualRecord> check_eigen_relations(const SpectralFamily& family,
                                                  double u_max) {
  const ModelParams& p = family.params;
  const cplx eta = p.eta;
  const int n = p.n_sites;
  std::vector<ResidualRecord> out;
  const double thr = p.tol_spectral;

  auto vec_rel = [](const Vec& a, const Vec& b) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k)
      worst = std::max(worst,
                       std::abs(a(k) - b(k)) /
                           std::max({std::abs(a(k)), std::abs(b(k)), 1e-300}));
    return worst;
  };
  auto h = [&](int i, cplx w) { return weights::h(i, w, eta, p.left); };
  auto ht = [&](int i, cplx w) { return weights::h_tilde(i, w, eta, p.right); };
  auto lm = [&](cplx u) {  // Lambda_- via the crossing link (Eq. 8.1/9.2)
    return Vec(exp(-8.0 * eta) * family.lambda_plus_at(-u + 8.0 * eta));
  };
  const Vec ones = Vec::Ones(family.n_states);

  // crossing (9.1), (9.2)
  {
    const cplx u(0.8, 0.0);
    out.push_back(make_record("EIG.crossing.L", p, {u},
                              vec_rel(family.lambda_at(u), family.lambda_at(-u + 8.0 * eta)),
                              thr));
    out.push_back(make_record(
        "EIG.crossing.Lplus", p, {u},
        vec_rel(family.lambda_plus_at(-u + 8.0 * eta),
                Vec(exp(8.0 * eta) * lm(u))),
        thr));
  }

  for (int j = 0; j < n; ++j) {
    const cplx th = p.theta[j];
    // Eq (9.3): product at theta_j
    {
      cplx pref = (sinh(th - 6.0 * eta) * sinh(th - 8.0 * eta) * sinh(th + 6.0 * eta) *
                   sinh(th + 8.0 * eta)) /
                  (sinh(th - 2.0 * eta) * sinh(th - 4.0 * eta) * sinh(th + 2.0 * eta) *
                   sinh(th + 4.0 * eta));
      pref *= h(1, th - 2.0 * eta) * h(2, th + 2.0 * eta) * ht(1, th - 2.0 * eta) *
              ht(2, th + 2.0 * eta);
      for (int i = 0; i < n; ++i)
        pref *= weights::a(th - p.theta[i], eta) *
                weights::e(th - p.theta[i] + 8.0 * eta, eta) *
                weights::a(th + p.theta[i], eta) *
                weights::e(th + p.theta[i] + 8.0 * eta, eta);
      const Vec lhs = family.lambda_at(th).cwiseProduct(family.lambda_at(-th));
      out.push_back(make_record("EIG.9.3.theta" + std::to_string(j + 1), p, {th},
                                vec_rel(lhs, pref * ones), thr));
    }
    // Eq (9.4), both branches
    for (int s : {+1, -1}) {
      const cplx tt = double(s) * th;
      cplx pref = exp(8.0 * eta) * sinh(tt + 4.0 * eta) * sinh(tt - 8.0 * eta) /
                  (sinh(tt + 2.0 * eta) * sinh(tt - 6.0 * eta));
      for (int i = 0; i < n; ++i)
        pref *= weights::rho0t(tt - p.theta[i], eta) * weights::rho0t(tt + p.theta[i], eta);
      const Vec lhs = family.lambda_at(tt).cwiseProduct(family.lambda_at(-tt + 4.0 * eta));
      const Vec rhs = pref * std::pow(4.0, 2 * n) *
                      family.lambda_plus_at(tt + 2.0 * eta)
                          .cwiseProduct(family.lambda_plus_at(-tt + 6.0 * eta)) *
                      exp(-8.0 * eta);
      out.push_back(make_record(
          "EIG.9.4." + std::string(s > 0 ? "+" : "-") + "theta" + std::to_string(j + 1), p,
          {tt}, vec_rel(lhs, rhs), thr));
    }
    // Eq (9.5)
    {
      cplx pref = sinh(th + 6.0 * eta) * sinh(th - 8.0 * eta) /
                  (sinh(th + 2.0 * eta) * sinh(th - 4.0 * eta));
      for (int i = 0; i < n; ++i)
        pref *= weights::rho0t(th - p.theta[i], eta) * weights::rho0t(th + p.theta[i], eta);
      pref *= h(2, th + 2.0 * eta) * ht(1, th - 2.0 * eta) * std::pow(2.0, 2 * n);
      const Vec lhs =
          family.lambda_at(th).cwiseProduct(family.lambda_plus_at(th + 6.0 * eta));
      const Vec rhs = pref * exp(8.0 * eta) * lm(th + 2.0 * eta);
      out.push_back(make_record("EIG.9.5.theta" + std::to_string(j + 1), p, {th},
                                vec_rel(lhs, rhs), thr));
    }
  }

  // Eq (9.6) special values
  {
    cplx prod_rho1 = 1.0, prod_rhos = 1.0;
    for (int i = 0; i < n; ++i) {
      prod_rho1 *= weights::rho1(p.theta[i], eta);
      prod_rhos *= weights::rho_s(p.theta[i], eta);
    }
    const cplx sv1 = -sinh(6.0 * eta) * sinh(8.0 * eta) / (sinh(2.0 * eta) * sinh(4.0 * eta)) *
                     h(2, 2.0 * eta) * ht(2, 2.0 * eta) * prod_rho1;
    out.push_back(make_record("EIG.9.6.L0", p, {cplx(0.0)},
                              vec_rel(family.lambda_at(0.0), sv1 * ones), thr));
    const cplx sv2 =
        std::pow(2.0, 2 * n) * sinh(6.0 * eta) / sinh(4.0 * eta) * prod_rhos;
    out.push_back(make_record(
        "EIG.9.6.L2eta", p, {2.0 * eta},
        vec_rel(family.lambda_at(2.0 * eta), sv2 * family.lambda_plus_at(4.0 * eta)), thr));
    const cplx sv3 =
        -sinh(8.0 * eta) / sinh(2.0 * eta) * h(2, 0.0) * ht(2, 4.0 * eta) * prod_rhos;
    out.push_back(make_record("EIG.9.6.Lp0", p, {cplx(0.0)},
                              vec_rel(family.lambda_plus_at(0.0), sv3 * ones), thr));
    const cplx sv4 =
        sinh(8.0 * eta) / sinh(2.0 * eta) * h(2, 4.0 * eta) * ht(1, 0.0) * prod_rhos;
    out.push_back(make_record("EIG.9.6.Lp8eta", p, {8.0 * eta},
                              vec_rel(family.lambda_plus_at(8.0 * eta), sv4 * ones), thr));
  }

  // Eq (9.7) asymptotics: exponent and constant
  {
    const Vec l1v = family.lambda_at(u_max);
    const Vec l0v = family.lambda_at(u_max - 1.0);
    double worst_exp = 0.0;
    for (int k = 0; k < family.n_states; ++k) {
      const double slope = std::log(std::abs(l1v(k))) - std::log(std::abs(l0v(k)));
      worst_exp = std::max(worst_exp,
                           std::abs(slope - 2.0 * (n + 1)) / (2.0 * (n + 1)));
    }
    out.push_back(make_record("EIG.9.7.exponent", p, {cplx(u_max)}, worst_exp, 1e-2));

    const auto sectors = asymptotic_sectors(family, u_max);
    const Vec lp1v = family.lambda_plus_at(u_max);
    const auto& b = p.left;
    const auto& bt = p.right;
    double worst_const = 0.0;
    std::string diag = "sectors (m1,m2):";
    for (int k = 0; k < family.n_states; ++k) {
      const auto [m1, m2] = sectors[k];
      diag += " (" + std::to_string(m1) + "," + std::to_string(m2) + ")";
      const cplx coef_l =
          l1v(k) * exp(cplx(-2.0 * (n + 1) * u_max) + (8.0 * n + 4.0) * eta);
      const cplx coef_lp = lp1v(k) * exp(cplx(-(n + 2) * u_max) + 4.0 * (n + 1) * eta);
      const cplx want_l =
          -(1.0 / std::pow(4.0, n + 1)) *
          (b.c * (bt.c + exp(-bt.c2)) * exp(4.0 * double(m1 - m2) * eta) +
           bt.c * (b.c + exp(-b.c2)) * exp(4.0 * double(m2 - m1) * eta) +
           (exp(2.0 * double(m1 + m2 - n - 1) * eta) +
            exp(-2.0 * double(m1 + m2 - n - 1) * eta)) *
               (b.c1 * bt.c3 * exp(-2.0 * eta) + bt.c1 * b.c3 * exp(2.0 * eta)));
      const cplx want_lp =
          -(1.0 / std::pow(4.0, n + 1)) *
          (b.c * (bt.c + exp(-bt.c2)) * (exp(2.0 * double(2 * m1 - n - 1) * eta) +
                                         exp(2.0 * double(n + 1 - 2 * m2) * eta)) +
           exp(2.0 * double(m2 - m1) * eta) *
               (b.c1 * bt.c3 * exp(-2.0 * eta) + bt.c1 * b.c3 * exp(2.0 * eta)));
      worst_const = std::max(worst_const, std::abs(coef_l - want_l) / std::abs(want_l));
      worst_const = std::max(worst_const, std::abs(coef_lp - want_lp) / std::abs(want_lp));
    }
    out.push_back(
        make_record("EIG.9.7.constant", p, {cplx(u_max)}, worst_const, 1e-4, diag));
  }
  return out;
}

cplx tq_lambda(cplx u, const BetheState& s, const ModelParams& p) {
  const cplx eta = p.eta;
  TQContext c{p, s, eta};
  auto sh = [](cplx z) { return std::sinh(z); };

  const cplx z1 = guard_div(sh(u - 6.0 * eta) * sh(u - 8.0 * eta),
                            sh(u - 2.0 * eta) * sh(u - 4.0 * eta), "Z1") *
                  c.afac(u) * c.h(2, u + 2.0 * eta) * c.ht(1, u - 2.0 * eta) *
                  guard_div(c.q1(u + 4.0 * eta), c.q1(u), "Z1/Q1");
  const cplx b = c.bfac(u);
  const cplx z2 = guard_div(sh(u - 6.0 * eta), sh(u - 2.0 * eta), "Z2") * b *
                  c.h(1, u - 6.0 * eta) * c.ht(2, u - 2.0 * eta) *
                  guard_div(c.q1(u - 4.0 * eta) * c.q2(u + 4.0 * eta) * c.q3(u + 4.0 * eta),
                            c.q1(u) * c.q2(u) * c.q3(u), "Z2/Q");
  const cplx z3 = b * c.h(2, u - 2.0 * eta) * c.ht(1, u - 6.0 * eta) *
                  guard_div(c.q2(u + 4.0 * eta) * c.q3(u - 4.0 * eta),
                            c.q2(u) * c.q3(u), "Z3/Q");
  const cplx z4 = b * c.h(1, u - 6.0 * eta) * c.ht(2, u - 2.0 * eta) *
                  guard_div(c.q2(u - 4.0 * eta) * c.q3(u + 4.0 * eta),
                            c.q2(u) * c.q3(u), "Z4/Q");
  const cplx z5 = guard_div(sh(u - 2.0 * eta), sh(u - 6.0 * eta), "Z5") * b *
                  c.h(2, u - 2.0 * eta) * c.ht(1, u - 6.0 * eta) *
                  guard_div(c.q1(u) * c.q2(u - 4.0 * eta) * c.q3(u - 4.0 * eta),
                            c.q1(u - 4.0 * eta) * c.q2(u) * c.q3(u), "Z5/Q");
  const cplx z6 = guard_div(sh(u) * sh(u - 2.0 * eta),
                            sh(u - 4.0 * eta) * sh(u - 6.0 * eta), "Z6") *
                  c.cfac(u) * c.h(1, u - 10.0 * eta) * c.ht(2, u - 6.0 * eta) *
                  guard_div(c.q1(u - 8.0 * eta), c.q1(u - 4.0 * eta), "Z6/Q1");
  const cplx f = c.ffac(u);
  const cplx f1 = s.x * sh(u - 6.0 * eta) *
                  guard_div(c.q2(u + 4.0 * eta) * c.q3(u + 4.0 * eta), c.q1(u), "f1/Q1") * f;
  const cplx f2 = s.x * sh(u - 2.0 * eta) *
                  guard_div(c.q2(u - 4.0 * eta) * c.q3(u - 4.0 * eta),
                            c.q1(u - 4.0 * eta), "f2/Q1") *
                  f;
  return z1 + z2 + z3 + z4 + z5 + z6 + f1 + f2;
}

cplx tq_lambda_plus(cplx u, const BetheState& s, const ModelParams& p) {
  const cplx eta = p.eta;
  TQContext c{p, s, eta};
  auto sh = [](cplx z) { return std::sinh(z); };

  cplx pa = 1.0, pb = 1.0;
  for (cplx t : p.theta) {
    pa *= weights::a1(u - t, eta) * weights::a1(u + t, eta);
    pb *= weights::b1(u - t, eta) * weights::b1(u + t, eta);
  }
  const cplx t1 =
      pa * c.h(2, u) * c.ht(1, u - 4.0 * eta) *
      guard_div(sh(u - 8.0 * eta), sh(u - 2.0 * eta), "T1") *
      (guard_div(c.q2(u + 6.0 * eta), c.q2(u + 2.0 * eta), "T1/Q2") +
       guard_div(sh(u), sh(u - 4.0 * eta), "T1b") *
           guard_div(c.q1(u + 2.0 * eta) * c.q2(u - 2.0 * eta),
                     c.q1(u - 2.0 * eta) * c.q2(u + 2.0 * eta), "T1b/Q"));
  const cplx t2 =
      pb * guard_div(sh(u), sh(u - 6.0 * eta), "T2") *
      (c.h(2, u - 4.0 * eta) * c.ht(1, u - 8.0 * eta) *
           guard_div(c.q3(u - 6.0 * eta), c.q3(u - 2.0 * eta), "T2/Q3") +
       guard_div(sh(u - 8.0 * eta), sh(u - 4.0 * eta), "T2b") * c.h(1, u - 8.0 * eta) *
           c.ht(2, u - 4.0 * eta) *
           guard_div(c.q1(u - 6.0 * eta) * c.q3(u + 2.0 * eta),
                     c.q1(u - 2.0 * eta) * c.q3(u - 2.0 * eta), "T2b/Q"));
  const cplx t3 = s.x * sh(u) * sh(u - 8.0 * eta) * pa * pb *
                  guard_div(c.q2(u - 2.0 * eta) * c.q3(u + 2.0 * eta),
                            c.q1(u - 2.0 * eta), "T3/Q1");
  return t1 + t2 + t3;
}

namespace {

// kRatio is the equation system as printed (ratios of Q-functions).
// kScaled divides each component by the summed magnitude of its terms, which
// flattens the Newton landscape at large |Re mu| where the terms grow
// exponentially. kCleared multiplies through by all denominators first, which
// removes the poles that fragment the Newton basins, then scales likewise;
// spurious zeros introduced by the clearing are filtered out downstream by
// the unscaled acceptance residual.
enum class BaeForm { kRatio, kScaled, kCleared };

std::vector<cplx> bae_residuals_impl(const BetheState& s, const ModelParams& p, BaeForm form) {
  const cplx eta = p.eta;
  TQContext c{p, s, eta};
  auto sh = [](cplx z) { return std::sinh(z); };

  // coincident-root guard per root family
  for (const auto* mus : {&s.mu1, &s.mu2, &s.mu3}) {
    for (std::size_t i = 0; i < mus->size(); ++i)
      for (std::size_t j = i + 1; j < mus->size(); ++j)
        if (std::abs((*mus)[i] - (*mus)[j]) < 1e-6)
          throw CoincidentRoots("bae_residuals: coincident roots");
  }

  std::vector<cplx> r;
  auto push = [&](cplx t1, cplx t2, cplx t3 = cplx(0.0)) {
    const cplx sum = t1 + t2 + t3;
    const double mag = std::abs(t1) + std::abs(t2) + std::abs(t3);
    r.push_back(form != BaeForm::kRatio && mag > 0.0 ? sum / mag : sum);
  };
  const bool cleared = form == BaeForm::kCleared;
  for (cplx mk : s.mu1) {
    cplx d1 = 1.0, d2 = 1.0;
    for (cplx t : p.theta) {
      d1 *= sh((mk + 2.0 * eta - t) / 2.0) * sh((mk + 2.0 * eta + t) / 2.0);
      d2 *= sh((mk - 2.0 * eta - t) / 2.0) * sh((mk - 2.0 * eta + t) / 2.0);
    }
    const cplx qp = c.q2(mk + 6.0 * eta) * c.q3(mk + 6.0 * eta);
    const cplx qm = c.q2(mk + 2.0 * eta) * c.q3(mk + 2.0 * eta);
    const cplx n1 = sh(mk - 2.0 * eta) * c.h(2, mk + 4.0 * eta) * c.ht(1, mk) * c.q1(mk + 6.0 * eta);
    const cplx n2 = sh(mk + 2.0 * eta) * c.h(1, mk - 4.0 * eta) * c.ht(2, mk) * c.q1(mk - 2.0 * eta);
    const cplx n3 = s.x * sh(mk) * sh(mk + 2.0 * eta) * sh(mk - 2.0 * eta);
    if (cleared)
      push(n1 * d2 * qm, n2 * d1 * qp, n3 * d1 * d2 * qp * qm);
    else
      push(n1 / (d1 * qp), n2 / (d2 * qm), n3);
  }
  for (cplx ml : s.mu2) {
    const cplx n1 = c.q1(ml) * c.q2(ml + 8.0 * eta);
    const cplx n2 = sh(ml + 2.0 * eta);
    const cplx d1 = c.q1(ml + 4.0 * eta) * c.q2(ml);
    const cplx d2 = sh(ml - 2.0 * eta);
    if (cleared)
      push(n1 * d2, n2 * d1);
    else
      push(n1 / d1, n2 / d2);
  }
  for (cplx ml : s.mu3) {
    const cplx n1 = c.q1(ml) * c.q3(ml + 8.0 * eta);
    const cplx n2 = sh(ml + 2.0 * eta) * c.h(2, ml + 2.0 * eta) * c.ht(1, ml - 2.0 * eta);
    const cplx d1 = c.q1(ml + 4.0 * eta) * c.q3(ml);
    const cplx d2 = sh(ml - 2.0 * eta) * c.h(1, ml - 2.0 * eta) * c.ht(2, ml + 2.0 * eta);
    if (cleared)
      push(n1 * d2, n2 * d1);
    else
      push(n1 / d1, n2 / d2);
  }
  return r;
}

}  // namespace

std::vector<cplx> bae_residuals(const BetheState& s, const ModelParams& p) {
  return bae_residuals_impl(s, p, BaeForm::kRatio);
}

namespace {

double res_norm(const std::vector<cplx>& r) {
  double s = 0.0;
  for (cplx z : r) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return 1e300;
    s += std::norm(z);
  }
  return std::sqrt(s);
}

// canonical representative under mu -> -mu and 2*pi*i shifts
std::vector<cplx> canonical_roots(std::vector<cplx> z) {
  const double two_pi = 2.0 * M_PI;
  for (cplx& m : z) {
    if (m.real() < -1e-9 || (std::abs(m.real()) < 1e-9 && m.imag() < 0.0)) m = -m;
    m = cplx(m.real(), std::remainder(m.imag(), two_pi));
    // representative of the +-pi*i boundary
    if (m.imag() < -M_PI + 1e-9) m = cplx(m.real(), m.imag() + two_pi);
  }
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

double roots_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

}  // namespace

std::vector<BetheState> solve_bae(int l1, int l2, int l3, const ModelParams& p,
                                  int n_starts) {
  if (l1 != l2 + l3 + p.n_sites)
    throw std::invalid_argument("solve_bae: counting rule L1 = L2 + L3 + N violated");
  if (l1 < 0 || l1 > 2 * p.n_sites)
    throw std::invalid_argument("solve_bae: L1 out of [0, 2N]");
  const int nv = l1 + l2 + l3;

  auto assemble = [&](const Eigen::VectorXcd& z) {
    std::vector<cplx> m1(z.data(), z.data() + l1);
    std::vector<cplx> m2(z.data() + l1, z.data() + l1 + l2);
    std::vector<cplx> m3(z.data() + l1 + l2, z.data() + nv);
    return make_bethe_state(std::move(m1), std::move(m2), std::move(m3), p);
  };
  auto residual_of = [&](BaeForm form) {
    return [&, form](const Eigen::VectorXcd& z) -> std::vector<cplx> {
      try {
        return bae_residuals_impl(assemble(z), p, form);
      } catch (const CoincidentRoots&) {
        return std::vector<cplx>(nv, cplx(1e300, 0.0));
      }
    };
  };
  const std::array<std::function<std::vector<cplx>(const Eigen::VectorXcd&)>, 3> forms = {
      residual_of(BaeForm::kRatio), residual_of(BaeForm::kScaled),
      residual_of(BaeForm::kCleared)};
  const std::array<double, 3> tols = {1e-11, 1e-13, 1e-13};

  std::mt19937_64 rng(p.rng_seed * 0x9e3779b97f4a7c15ULL + 1000003ULL * l1 + 1009ULL * l2 +
                      31ULL * l3);
  std::uniform_real_distribution<double> re_near(-2.5, 2.5), re_far(-4.5, 4.5),
      im_dist(-3.2, 3.2), cloud(-0.4, 0.4);

  std::vector<BetheState> states;
  std::vector<std::vector<cplx>> keys;

  auto canonical_key = [&](const Eigen::VectorXcd& z) {
    std::vector<cplx> zc(z.data(), z.data() + nv);
    std::vector<cplx> key;
    auto c1 = canonical_roots({zc.begin(), zc.begin() + l1});
    auto c2 = canonical_roots({zc.begin() + l1, zc.begin() + l1 + l2});
    auto c3 = canonical_roots({zc.begin() + l1 + l2, zc.end()});
    key.insert(key.end(), c1.begin(), c1.end());
    key.insert(key.end(), c2.begin(), c2.end());
    key.insert(key.end(), c3.begin(), c3.end());
    return key;
  };
  // damped Newton; the residual forms have different basins of attraction,
  // so each is run from every start
  auto newton = [&](Eigen::VectorXcd& z, int form) -> bool {
    auto& fres = forms[form];
    const double tol = tols[form];
    for (int it = 0; it < 100; ++it) {
      const auto r = fres(z);
      const double nr = res_norm(r);
      if (nr < tol) return true;
      if (nr > 1e200) return false;
      Eigen::MatrixXcd jac(nv, nv);
      const double h = 1e-7;
      for (int j = 0; j < nv; ++j) {
        Eigen::VectorXcd zp = z;
        zp(j) += h;
        const auto rp = fres(zp);
        for (int i = 0; i < nv; ++i) jac(i, j) = (rp[i] - r[i]) / h;
      }
      Eigen::VectorXcd rv(nv);
      for (int i = 0; i < nv; ++i) rv(i) = r[i];
      const Eigen::VectorXcd dz = jac.fullPivLu().solve(rv);
      if (!dz.allFinite()) return false;
      double step = 1.0;
      bool improved = false;
      for (int bt = 0; bt < 16; ++bt) {
        Eigen::VectorXcd zn = z - step * dz;
        if (res_norm(fres(zn)) < nr) {
          z = zn;
          improved = true;
          break;
        }
        step /= 2.0;
      }
      if (!improved) return res_norm(fres(z)) < tol;
    }
    return res_norm(fres(z)) < tol;
  };

  // accept a converged root vector into the catalog unless duplicate/poor
  auto accept = [&](const Eigen::VectorXcd& z) {
    auto key = canonical_key(z);
    for (const auto& k : keys)
      if (roots_distance(k, key) < 1e-6) return;
    BetheState s = assemble(z);
    const auto r = bae_residuals(s, p);
    double worst = 0.0;
    for (cplx v : r) worst = std::max(worst, std::abs(v));
    if (worst > 1e-9) return;
    s.bae_residual = worst;
    keys.push_back(std::move(key));
    states.push_back(std::move(s));
  };

  for (int trial = 0; trial < n_starts; ++trial) {
    Eigen::VectorXcd z(nv);
    const int mode = trial % 4;
    if (mode == 3 && !p.theta.empty()) {
      // seed near the inhomogeneity shifts theta_j + {2eta, 4eta}
      for (int k = 0; k < nv; ++k) {
        const cplx th = p.theta[k % p.theta.size()];
        const double shift = (k % 2 == 0) ? 2.0 : 4.0;
        z(k) = th + shift * p.eta + cplx(cloud(rng), cloud(rng));
      }
    } else if (mode == 2) {
      // seed on the Im = 0 / Im = pi lines where real-parameter root
      // configurations concentrate, with a wide real range
      std::uniform_real_distribution<double> re_line(0.0, 5.0);
      std::uniform_int_distribution<int> coin(0, 1);
      for (int k = 0; k < nv; ++k) {
        const double im = coin(rng) ? M_PI : 0.0;
        z(k) = cplx(re_line(rng), im) + cplx(cloud(rng), cloud(rng)) * 0.25;
      }
    } else {
      auto& re_dist = (mode == 0) ? re_near : re_far;
      for (int k = 0; k < nv; ++k) z(k) = cplx(re_dist(rng), im_dist(rng));
    }

    const Eigen::VectorXcd seed = z;
    for (int form = 0; form < 3; ++form) {
      z = seed;
      if (newton(z, form)) accept(z);
    }
  }

  // deterministic ordering by canonical root key
  std::vector<std::size_t> order(states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ka = keys[a];
    const auto& kb = keys[b];
    for (std::size_t k = 0; k < ka.size(); ++k) {
      if (std::abs(ka[k].real() - kb[k].real()) > 1e-9) return ka[k].real() < kb[k].real();
      if (std::abs(ka[k].imag() - kb[k].imag()) > 1e-9) return ka[k].imag() < kb[k].imag();
    }
    return false;
  });
  std::vector<BetheState> sorted;
  sorted.reserve(states.size());
  for (std::size_t i : order) sorted.push_back(std::move(states[i]));
  return sorted;
}

std::vector<MatchEntry> match_tq_to_spectrum(const SpectralFamily& family,
                                             const std::vector<BetheState>& states) {
  std::vector<MatchEntry> out;
  for (const BetheState& s : states) {
    MatchEntry best;
    best.max_deviation = 1e300;
    std::vector<cplx> tq(family.u_grid.size()), tqp(family.u_grid.size());
    bool evaluable = true;
    for (std::size_t g = 0; g < family.u_grid.size(); ++g) {
      try {
        tq[g] = tq_lambda(family.u_grid[g], s, family.params);
        tqp[g] = tq_lambda_plus(family.u_grid[g], s, family.params);
      } catch (const NearPole&) {
        evaluable = false;
        break;
      }
    }
    if (evaluable) {
      for (int k = 0; k < family.n_states; ++k) {
        double dev = 0.0;
        for (std::size_t g = 0; g < family.u_grid.size(); ++g) {
          dev = std::max(dev, std::abs(tq[g] - family.lambda[k][g]) /
                                  std::max(std::abs(family.lambda[k][g]), 1e-300));
          dev = std::max(dev, std::abs(tqp[g] - family.lambda_plus[k][g]) /
                                  std::max(std::abs(family.lambda_plus[k][g]), 1e-300));
        }
        if (dev < best.max_deviation) {
          best.max_deviation = dev;
          best.state_index = k;
        }
      }
    }
    out.push_back(best);
  }
  return out;
}

cplx energy_tq(const BetheState& state, const ModelParams& p, double step) {
  for (cplx t : p.theta)
    if (std::abs(t) > 1e-12)
      throw std::invalid_argument("energy_tq: homogeneous parameters required");
  const cplx lp = tq_lambda(cplx(step), state, p);
  const cplx lm = tq_lambda(cplx(-step), state, p);
  const cplx l0 = tq_lambda(cplx(0.0), state, p);
  return (lp - lm) / (2.0 * step) / l0;
}

cplx energy_curve(const SpectralFamily& family, int state, double step) {
  for (cplx t : family.params.theta)
    if (std::abs(t) > 1e-12)
      throw std::invalid_argument("energy_curve: homogeneous parameters required");
  const Vec lp = family.lambda_at(cplx(step));
  const Vec lm = family.lambda_at(cplx(-step));
  const Vec l0 = family.lambda_at(cplx(0.0));
  return (lp(state) - lm(state)) / (2.0 * step) / l0(state);
}

nlohmann::json bethe_state_to_json(const BetheState& s) {
  auto roots = [](const std::vector<cplx>& mus) {
    nlohmann::json a = nlohmann::json::array();
    for (cplx m : mus) a.push_back({m.real(), m.imag()});
    return a;
  };
  nlohmann::json j;
  j["mu1"] = roots(s.mu1);
  j["mu2"] = roots(s.mu2);
  j["mu3"] = roots(s.mu3);
  j["x"] = {s.x.real(), s.x.imag()};
  j["m1"] = s.m1;
  j["m2"] = s.m2;
  j["bae_residual"] = s.bae_residual;
  return j;
}

nlohmann::json family_to_json(const SpectralFamily& f) {
  nlohmann::json j;
  nlohmann::json grid = nlohmann::json::array();
  for (cplx u : f.u_grid) grid.push_back({u.real(), u.imag()});
  j["u_grid"] = grid;
  auto table = [](const std::vector<std::vector<cplx>>& t) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& row : t) {
      nlohmann::json r = nlohmann::json::array();
      for (cplx z : row) r.push_back({z.real(), z.imag()});
      a.push_back(r);
    }
    return a;
  };
  j["lambda"] = table(f.lambda);
  j["lambda_plus"] = table(f.lambda_plus);
  j["basis_condition"] = f.basis_condition;
  j["n_states"] = f.n_states;
  return j;
}

}  // namespace qd3
