#include "qd3/verify.hpp"

#include <functional>
#include <sstream>

namespace qd3 {

namespace {

std::vector<cplx> degeneration_points(cplx eta) {
  std::vector<cplx> out = {0.0};
  for (int k = 1; k <= 4; ++k) {
    out.push_back(2.0 * double(k) * eta);
    out.push_back(-2.0 * double(k) * eta);
  }
  return out;
}

std::vector<cplx> sample_points(const ModelParams& p, int n, std::uint64_t salt) {
  std::mt19937_64 rng(p.rng_seed * 0x9e3779b97f4a7c15ULL + salt);
  const auto excl = degeneration_points(p.eta);
  std::vector<cplx> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) out.push_back(sample_generic_point(rng, excl));
  return out;
}

struct Recorder {
  const ModelParams& p;
  std::vector<ResidualRecord> records;

  void add(const std::string& id, const std::vector<cplx>& pts, double res, double thr,
           const std::string& diag = "") {
    records.push_back(make_record(id, p, pts, res, thr, diag));
  }
  // worst-case residual of fn over the sample points
  void add_max(const std::string& id, const std::vector<cplx>& pts,
               const std::function<double(cplx)>& fn, double thr, const std::string& diag = "") {
    double worst = 0.0;
    for (cplx u : pts) worst = std::max(worst, fn(u));
    add(id, pts, worst, thr, diag);
  }
};

}  // namespace

std::string params_digest(const ModelParams& p) {
  const std::string s = params_to_json(p).dump();
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(s);
  return os.str();
}

ResidualRecord make_record(std::string check_id, const ModelParams& p,
                           std::vector<cplx> sample_points, double residual, double threshold,
                           std::string diagnostics) {
  ResidualRecord r;
  r.check_id = std::move(check_id);
  r.params_digest = params_digest(p);
  r.sample_points = std::move(sample_points);
  r.residual = residual;
  r.threshold = threshold;
  r.passed = residual <= threshold;
  r.diagnostics = std::move(diagnostics);
  return r;
}

std::vector<ResidualRecord> check_local(const ValidatedParams& vp, int n_samples) {
  const ModelParams& p = vp.p;
  const cplx eta = p.eta;
  Recorder rec{p, {}};
  const double thr = 1e-10;
  const auto pts = sample_points(p, n_samples, 1);
  const auto trip = sample_points(p, 3, 2);
  const cplx u1 = trip[0], u2 = -trip[1], u3 = trip[2];  // generic triple
  const cplx uu = pts[0], vv = -pts[1] / 2.0;

  const Mat p66 = perm_op(6, 6);
  const Mat p44 = perm_op(4, 4);
  const Mat i6 = Mat::Identity(6, 6);
  const Mat i36 = Mat::Identity(36, 36);
  const Mat m6 = twist_M(eta);
  const Mat mb4 = twist_Mbar(eta);
  auto rv = [&](cplx u) { return r_vector(u, eta); };
  auto rv21 = [&](cplx u) { return Mat(p66 * r_vector(u, eta) * p66); };
  auto rt21 = [&](cplx u) { return Mat(p44 * r_spinorial(u, eta) * p44); };

  // regularity: R(0) = a(0) P
  rec.add("REG.vector", {cplx(0.0)}, rel_residual(rv(0.0), weights::a(0.0, eta) * p66), thr);

  // twist consistency
  const Mat v6 = twist_V(eta), vb = twist_Vbar(eta);
  rec.add("TWIST.V", {}, rel_residual(v6 * v6, i6), thr);
  rec.add("TWIST.VtV", {}, rel_residual(v6.transpose() * v6, m6), thr);
  rec.add("TWIST.Vbar", {}, rel_residual(vb * vb, -Mat::Identity(4, 4)), thr);
  rec.add("TWIST.VbartVbar", {}, rel_residual(vb.transpose() * vb, mb4), thr);

  // unitarity, all four R families
  rec.add_max("UNI.vector", pts, [&](cplx u) {
    return rel_residual(rv(u) * rv21(-u), weights::rho1(u, eta) * i36);
  }, thr);
  rec.add_max("UNI.Rplus", pts, [&](cplx u) {
    return rel_residual(r_plus(u, eta) * r_plus(-u, eta).transpose(),
                        weights::rho_s(u, eta) * Mat::Identity(24, 24));
  }, thr);
  rec.add_max("UNI.Rminus", pts, [&](cplx u) {
    return rel_residual(r_minus(u, eta) * r_minus(-u, eta).transpose(),
                        weights::rho_s(u, eta) * Mat::Identity(24, 24));
  }, thr);
  rec.add_max("UNI.Rpm", pts, [&](cplx u) {
    const cplx s = -std::sinh(u / 2.0 - 4.0 * eta) * std::sinh(u / 2.0 + 4.0 * eta);
    return rel_residual(r_pm(u, eta) * r_mp(-u, eta), s * Mat::Identity(16, 16));
  }, thr);
  rec.add_max("UNI.Rspinor", pts, [&](cplx u) {
    const cplx s = -std::sinh(u / 2.0 - 2.0 * eta) * std::sinh(u / 2.0 + 2.0 * eta);
    return rel_residual(r_spinorial(u, eta) * rt21(-u), s * Mat::Identity(16, 16));
  }, thr);

  // crossing unitarity
  const SpaceLayout l66{{6, 6}}, l46{{4, 6}}, l44{{4, 4}};
  const Mat m1_66 = kron(m6, i6);
  const Mat m2_46 = kron(Mat::Identity(4, 4), m6);
  const Mat m2_44 = kron(Mat::Identity(4, 4), mb4);
  rec.add_max("CROSSUNI.vector", pts, [&](cplx u) {
    Mat lhs = partial_transpose(rv(u), 0, l66) * m1_66 *
              partial_transpose(rv21(-u + 16.0 * eta), 0, l66) * m1_66.inverse();
    return rel_residual(lhs, weights::rho1(u - 8.0 * eta, eta) * i36);
  }, thr);
  for (int sgn : {+1, -1}) {
    auto rf = [&](cplx u) { return sgn > 0 ? r_plus(u, eta) : r_minus(u, eta); };
    rec.add_max(sgn > 0 ? "CROSSUNI.Rplus" : "CROSSUNI.Rminus", pts, [&](cplx u) {
      Mat lhs = partial_transpose(rf(u), 1, l46) * m2_46.inverse() *
                partial_transpose(rf(-u + 16.0 * eta).transpose(), 1, l46) * m2_46;
      return rel_residual(lhs, weights::rho_s(u - 8.0 * eta, eta) * Mat::Identity(24, 24));
    }, thr);
  }
  rec.add_max("CROSSUNI.Rpm", pts, [&](cplx u) {
    Mat lhs = partial_transpose(r_pm(u, eta), 1, l44) * m2_44.inverse() *
              partial_transpose(r_mp(-u + 16.0 * eta, eta), 1, l44) * m2_44;
    return rel_residual(lhs, weights::rho_ss(u, eta) * Mat::Identity(16, 16));
  }, thr);
  rec.add_max("CROSSUNI.Rspinor", pts, [&](cplx u) {
    const cplx s = -std::sinh(u / 2.0) * std::sinh(u / 2.0 - 8.0 * eta);
    Mat lhs = partial_transpose(r_spinorial(u, eta), 1, l44) * m2_44.inverse() *
              partial_transpose(rt21(-u + 16.0 * eta), 1, l44) * m2_44;
    return rel_residual(lhs, s * Mat::Identity(16, 16));
  }, thr);

  // crossing relations
  rec.add_max("CROSSREL.vector", pts, [&](cplx u) {
    const Mat v1 = kron(v6, i6);
    Mat rhs = v1 * partial_transpose(rv(-u + 8.0 * eta), 1, l66) * v1;
    return rel_residual(rv(u), rhs);
  }, thr);
  const Mat vbw = kron(vb, twist_W());
  rec.add_max("CROSSREL.Rplus", pts, [&](cplx u) {
    Mat rhs = vbw * partial_transpose(r_minus(-u + 8.0 * eta, eta), 1, l46) * vbw;
    return rel_residual(r_plus(u, eta), rhs);
  }, thr);
  rec.add_max("CROSSREL.Rminus", pts, [&](cplx u) {
    Mat rhs = vbw * partial_transpose(r_plus(-u + 8.0 * eta, eta), 1, l46) * vbw;
    return rel_residual(r_minus(u, eta), rhs);
  }, thr);

  // M-commutation
  rec.add_max("MCOMM.vector", pts, [&](cplx u) {
    const Mat m12 = kron(m6, m6);
    return rel_residual(m12 * rv(u), rv(u) * m12);
  }, thr);

  // Yang-Baxter equations
  {
    SpaceLayout d{{6, 6, 6}};
    Mat a = embed(rv(u1 - u2), {0, 1}, d), b = embed(rv(u1 - u3), {0, 2}, d),
        c = embed(rv(u2 - u3), {1, 2}, d);
    rec.add("YBE.vector", {u1, u2, u3}, rel_residual(a * b * c, c * b * a), thr);
  }
  for (int sgn : {+1, -1}) {
    SpaceLayout d{{4, 6, 6}};
    auto rf = [&](cplx u) { return sgn > 0 ? r_plus(u, eta) : r_minus(u, eta); };
    Mat a = embed(rf(u1 - u2), {0, 1}, d), b = embed(rf(u1 - u3), {0, 2}, d),
        c = embed(rv(u2 - u3), {1, 2}, d);
    rec.add(sgn > 0 ? "YBE.Rplus" : "YBE.Rminus", {u1, u2, u3},
            rel_residual(a * b * c, c * b * a), thr);
  }
  {
    SpaceLayout d{{4, 4, 6}};
    Mat a = embed(r_pm(u1 - u2, eta), {0, 1}, d), b = embed(r_plus(u1 - u3, eta), {0, 2}, d),
        c = embed(r_minus(u2 - u3, eta), {1, 2}, d);
    rec.add("YBE.Rpm", {u1, u2, u3}, rel_residual(a * b * c, c * b * a), thr);
  }
  {
    SpaceLayout d{{4, 4, 4}};
    Mat a = embed(r_spinorial(u1 - u2, eta), {0, 1}, d),
        b = embed(r_spinorial(u1 - u3, eta), {0, 2}, d),
        c = embed(r_spinorial(u2 - u3, eta), {1, 2}, d);
    rec.add("YBE.Rspinor", {u1, u2, u3}, rel_residual(a * b * c, c * b * a), thr);
  }
  for (int sgn : {+1, -1}) {
    SpaceLayout d{{4, 4, 6}};
    auto rf = [&](cplx u) { return sgn > 0 ? r_plus(u, eta) : r_minus(u, eta); };
    Mat a = embed(r_spinorial(u1 - u2, eta), {0, 1}, d), b = embed(rf(u1 - u3), {0, 2}, d),
        c = embed(rf(u2 - u3), {1, 2}, d);
    rec.add(sgn > 0 ? "YBE.Rspinor.Rplus" : "YBE.Rspinor.Rminus", {u1, u2, u3},
            rel_residual(a * b * c, c * b * a), thr);
  }

  // reflection equations
  {
    auto k1 = [&](cplx w) { return kron(k_matrix(w, eta, p.left), i6); };
    auto k2 = [&](cplx w) { return kron(i6, k_matrix(w, eta, p.left)); };
    Mat lhs = rv(uu - vv) * k1(uu) * rv21(uu + vv) * k2(vv);
    Mat rhs = k2(vv) * rv(uu + vv) * k1(uu) * rv21(uu - vv);
    rec.add("RE.vector", {uu, vv}, rel_residual(lhs, rhs), thr);

    auto kb1 = [&](cplx w) { return kron(k_bar(w, eta, p.right), i6); };
    auto kb2 = [&](cplx w) { return kron(i6, k_bar(w, eta, p.right)); };
    const Mat m1i = m1_66.inverse();
    lhs = rv(-uu + vv) * kb1(uu) * m1i * rv21(-uu - vv + 16.0 * eta) * m1_66 * kb2(vv);
    rhs = kb2(vv) * m1_66 * rv(-uu - vv + 16.0 * eta) * m1i * kb1(uu) * rv21(-uu + vv);
    rec.add("DRE.vector", {uu, vv}, rel_residual(lhs, rhs), thr);
  }
  for (int sgn : {+1, -1}) {
    auto rf = [&](cplx u) { return sgn > 0 ? r_plus(u, eta) : r_minus(u, eta); };
    const Mat kf = (sgn > 0) ? k_plus_fused(uu, eta, p.left) : k_minus_fused(uu, eta, p.left);
    auto kfm = [&](cplx w) {
      return kron(sgn > 0 ? k_plus_fused(w, eta, p.left) : k_minus_fused(w, eta, p.left),
                  i6);
    };
    auto k2m = [&](cplx w) { return kron(Mat::Identity(4, 4), k_matrix(w, eta, p.left)); };
    Mat lhs = rf(uu - vv) * kfm(uu) * rf(uu + vv).transpose() * k2m(vv);
    Mat rhs = k2m(vv) * rf(uu + vv) * kfm(uu) * rf(uu - vv).transpose();
    rec.add(sgn > 0 ? "RE.Kplus" : "RE.Kminus", {uu, vv}, rel_residual(lhs, rhs), thr);

    const Mat mb1_46 = kron(mb4, i6);
    const Mat mb1i = mb1_46.inverse();
    auto kbfm = [&](cplx w) { return kron(k_bar_fused(sgn, w, eta, p.right), i6); };
    auto kb2m = [&](cplx w) { return kron(Mat::Identity(4, 4), k_bar(w, eta, p.right)); };
    lhs = rf(-uu + vv) * kbfm(uu) * mb1i * rf(-uu - vv + 16.0 * eta).transpose() * mb1_46 *
          kb2m(vv);
    rhs = kb2m(vv) * mb1_46 * rf(-uu - vv + 16.0 * eta) * mb1i * kbfm(uu) *
          rf(-uu + vv).transpose();
    rec.add(sgn > 0 ? "DRE.Kbplus" : "DRE.Kbminus", {uu, vv}, rel_residual(lhs, rhs), thr);
  }
  {
    auto kp1 = [&](cplx w) { return kron(k_plus_fused(w, eta, p.left), Mat::Identity(4, 4)); };
    auto km2 = [&](cplx w) { return kron(Mat::Identity(4, 4), k_minus_fused(w, eta, p.left)); };
    Mat lhs = r_pm(uu - vv, eta) * kp1(uu) * r_mp(uu + vv, eta) * km2(vv);
    Mat rhs = km2(vv) * r_pm(uu + vv, eta) * kp1(uu) * r_mp(uu - vv, eta);
    rec.add("RE.Rpm", {uu, vv}, rel_residual(lhs, rhs), thr);

    const Mat mb1_44 = kron(mb4, Mat::Identity(4, 4));
    const Mat mb1i = mb1_44.inverse();
    auto kbp1 = [&](cplx w) {
      return kron(k_bar_fused(+1, w, eta, p.right), Mat::Identity(4, 4));
    };
    auto kbm2 = [&](cplx w) {
      return kron(Mat::Identity(4, 4), k_bar_fused(-1, w, eta, p.right));
    };
    lhs = r_pm(-uu + vv, eta) * kbp1(uu) * mb1i * r_mp(-uu - vv + 16.0 * eta, eta) * mb1_44 *
          kbm2(vv);
    rhs = kbm2(vv) * mb1_44 * r_pm(-uu - vv + 16.0 * eta, eta) * mb1i * kbp1(uu) *
          r_mp(-uu + vv, eta);
    rec.add("DRE.Rpm", {uu, vv}, rel_residual(lhs, rhs), thr);
  }
  {
    auto kt1 = [&](cplx w) { return kron(k_plus_fused(w, eta, p.left), Mat::Identity(4, 4)); };
    auto kt2 = [&](cplx w) { return kron(Mat::Identity(4, 4), k_plus_fused(w, eta, p.left)); };
    Mat lhs = r_spinorial(uu - vv, eta) * kt1(uu) * rt21(uu + vv) * kt2(vv);
    Mat rhs = kt2(vv) * r_spinorial(uu + vv, eta) * kt1(uu) * rt21(uu - vv);
    rec.add("RE.spinor", {uu, vv}, rel_residual(lhs, rhs), thr);

    const Mat mb1_44 = kron(mb4, Mat::Identity(4, 4));
    const Mat mb1i = mb1_44.inverse();
    for (int sgn : {+1, -1}) {
      auto kb1t = [&](cplx w) {
        return kron(k_bar_fused(sgn, w, eta, p.right), Mat::Identity(4, 4));
      };
      auto kb2t = [&](cplx w) {
        return kron(Mat::Identity(4, 4), k_bar_fused(sgn, w, eta, p.right));
      };
      lhs = r_spinorial(-uu + vv, eta) * kb1t(uu) * mb1i * rt21(-uu - vv + 16.0 * eta) *
            mb1_44 * kb2t(vv);
      rhs = kb2t(vv) * mb1_44 * r_spinorial(-uu - vv + 16.0 * eta, eta) * mb1i * kb1t(uu) *
            rt21(-uu + vv);
      rec.add(sgn > 0 ? "DRE.spinor.Kbplus" : "DRE.spinor.Kbminus", {uu, vv},
              rel_residual(lhs, rhs), thr);
    }
  }
  return rec.records;
}

std::vector<ResidualRecord> check_degenerations(const ValidatedParams& vp) {
  const ModelParams& p = vp.p;
  const cplx eta = p.eta;
  Recorder rec{p, {}};
  const double thr_angle = 1e-8;

  auto rank_check = [&](const std::string& id, const Mat& m, int want, cplx pt) {
    const int r = numerical_rank(m);
    rec.add(id, {pt}, std::abs(double(r - want)), 0.5,
            "rank=" + std::to_string(r) + " expected=" + std::to_string(want));
  };
  auto leading_cols = [](const Mat& m, int k) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    return Mat(svd.matrixU().leftCols(k));
  };

  rank_check("RANK.R.8eta", r_vector(8.0 * eta, eta), 1, 8.0 * eta);
  rank_check("RANK.R.4eta", r_vector(4.0 * eta, eta), 16, 4.0 * eta);
  rank_check("RANK.R.m4eta", r_vector(-4.0 * eta, eta), 20, -4.0 * eta);
  rank_check("RANK.R.m8eta", r_vector(-8.0 * eta, eta), 35, -8.0 * eta);
  rank_check("RANK.Rplus.6eta", r_plus(6.0 * eta, eta), 4, 6.0 * eta);
  rank_check("RANK.Rminus.6eta", r_minus(6.0 * eta, eta), 4, 6.0 * eta);
  rank_check("RANK.Rspinor.4eta", r_spinorial(4.0 * eta, eta), 6, 4.0 * eta);

  rec.add("ANGLE.R.8eta.P1", {8.0 * eta},
          subspace_angle(leading_cols(r_vector(8.0 * eta, eta), 1),
                         projector(ProjName::P1, ProjSide::s12, eta).isometry()),
          thr_angle);
  rec.add("ANGLE.R.4eta.P16", {4.0 * eta},
          subspace_angle(leading_cols(r_vector(4.0 * eta, eta), 16),
                         projector(ProjName::P16, ProjSide::s12, eta).isometry()),
          thr_angle);
  rec.add("ANGLE.Rplus.6eta.Pplus", {6.0 * eta},
          subspace_angle(leading_cols(r_plus(6.0 * eta, eta), 4),
                         projector(ProjName::Pplus, ProjSide::s12, eta).isometry()),
          thr_angle);
  rec.add("ANGLE.Rminus.6eta.Pminus", {6.0 * eta},
          subspace_angle(leading_cols(r_minus(6.0 * eta, eta), 4),
                         projector(ProjName::Pminus, ProjSide::s12, eta).isometry()),
          thr_angle);
  rec.add("ANGLE.Rspinor.4eta.P6", {4.0 * eta},
          subspace_angle(leading_cols(r_spinorial(4.0 * eta, eta), 6),
                         projector(ProjName::P6, ProjSide::s12, eta).isometry()),
          thr_angle);

  // projector idempotency + bilinear orthonormality of bases
  for (auto [name, label] : std::initializer_list<std::pair<ProjName, const char*>>{
           {ProjName::P1, "P1"}, {ProjName::P16, "P16"}, {ProjName::Pplus, "Pplus"},
           {ProjName::Pminus, "Pminus"}, {ProjName::P6, "P6"}}) {
    for (auto side : {ProjSide::s12, ProjSide::s21}) {
      const Projector pr = projector(name, side, eta);
      const Mat u = pr.isometry();
      const double idem = rel_residual(pr.matrix * pr.matrix, pr.matrix);
      const double gram =
          rel_residual(u.transpose() * u, Mat::Identity(pr.rank, pr.rank));
      const std::string suffix = (side == ProjSide::s12) ? ".12" : ".21";
      rec.add(std::string("PROJ.idem.") + label + suffix, {}, idem, 1e-10);
      rec.add(std::string("PROJ.gram.") + label + suffix, {}, gram, 1e-10);
    }
  }
  return rec.records;
}

std::vector<ResidualRecord> check_fusion_r(const ValidatedParams& vp, int n_samples) {
  const ModelParams& p = vp.p;
  const cplx eta = p.eta;
  Recorder rec{p, {}};
  const double thr = 1e-9;
  const auto pts = sample_points(p, n_samples, 3);

  const Mat i6 = Mat::Identity(6, 6);
  const Mat p66 = perm_op(6, 6);
  auto rv = [&](cplx u) { return r_vector(u, eta); };
  auto rho0t = [&](cplx u) { return weights::rho0t(u, eta); };

  const Mat u1m = projector(ProjName::P1, ProjSide::s12, eta).isometry();    // 36x1
  const Mat u1m21 = projector(ProjName::P1, ProjSide::s21, eta).isometry();
  const Mat p1_12 = u1m * u1m.transpose();
  const Mat p1_21 = u1m21 * u1m21.transpose();
  const Mat u16 = projector(ProjName::P16, ProjSide::s12, eta).isometry();   // 36x16
  const Mat u16_21 = projector(ProjName::P16, ProjSide::s21, eta).isometry();
  const Mat up = projector(ProjName::Pplus, ProjSide::s12, eta).isometry();  // 24x4
  const Mat uph = projector(ProjName::Pplus, ProjSide::s21, eta).isometry();
  const Mat um = projector(ProjName::Pminus, ProjSide::s12, eta).isometry();
  const Mat umh = projector(ProjName::Pminus, ProjSide::s21, eta).isometry();
  const Mat uchi = projector(ProjName::P6, ProjSide::s12, eta).isometry();   // 16x6
  const Mat smat = s_transform(eta);
  const Mat sbar = s_bar_transform(eta);
  const Mat st4 = twist_St();

  // Eq (4.8)/(4.9): rank-1 fusion of two vectorial R's
  rec.add_max("FUSE.R.4.8", pts, [&](cplx u) {
    SpaceLayout d{{6, 6, 6}};
    const Mat p1e = embed(p1_12, {0, 1}, d);
    Mat lhs = p1e * embed(rv(u), {1, 2}, d) * embed(rv(u + 8.0 * eta), {0, 2}, d) * p1e;
    const cplx pref = weights::a(u, eta) * weights::e(u + 8.0 * eta, eta);
    return rel_residual(lhs, pref * embed(p1_12, {0, 1}, d));
  }, thr, "RHS projector label: 12");
  rec.add_max("FUSE.R.4.9", pts, [&](cplx u) {
    SpaceLayout d{{6, 6, 6}};
    const Mat p1e = embed(p1_21, {0, 1}, d);
    Mat lhs = p1e * embed(rv(u), {2, 1}, d) * embed(rv(u + 8.0 * eta), {2, 0}, d) * p1e;
    const cplx pref = weights::a(u, eta) * weights::e(u + 8.0 * eta, eta);
    return rel_residual(lhs, pref * embed(p1_21, {0, 1}, d));
  }, thr, "RHS projector label: 21");

  // Eq (5.4): P16 fusion, R R -> S R+ R- S^-1 on the fused pair
  rec.add_max("FUSE.R.5.4", pts, [&](cplx u) {
    SpaceLayout d{{6, 6, 6}}, df{{4, 4, 6}};
    const Mat p16e = embed(Mat(u16 * u16.transpose()), {0, 1}, d);
    Mat lhs = p16e * embed(rv(u), {1, 2}, d) * embed(rv(u + 4.0 * eta), {0, 2}, d) * p16e;
    Mat rhs = kron(smat, i6) * embed(r_plus(u + 2.0 * eta, eta), {0, 2}, df) *
              embed(r_minus(u + 2.0 * eta, eta), {1, 2}, df) * kron(smat.inverse(), i6);
    const Mat uuu = kron(u16, i6);
    return rel_residual(Mat(uuu.transpose() * lhs * uuu), 4.0 * rho0t(u) * rhs);
  }, thr);
  // Eq (5.5): swapped-side fusion via the S-bar transform
  rec.add_max("FUSE.R.5.5", pts, [&](cplx u) {
    SpaceLayout d{{6, 6, 6}}, df{{4, 4, 6}};
    const Mat p16e21 = embed(Mat(u16_21 * u16_21.transpose()), {0, 1}, d);
    const Mat r32 = embed(Mat(p66 * rv(u) * p66), {1, 2}, d);
    const Mat r31 = embed(Mat(p66 * rv(u + 4.0 * eta) * p66), {0, 2}, d);
    Mat lhs = p16e21 * r32 * r31 * p16e21;
    const Mat rp31 = embed(Mat(r_plus(u + 2.0 * eta, eta).transpose()), {0, 2}, df);
    const Mat rm32 = embed(Mat(r_minus(u + 2.0 * eta, eta).transpose()), {1, 2}, df);
    Mat rhs = kron(sbar, i6) * rp31 * rm32 * kron(sbar.inverse(), i6);
    const Mat uuu = kron(u16_21, i6);
    return rel_residual(Mat(uuu.transpose() * lhs * uuu), 4.0 * rho0t(u) * rhs);
  }, thr);

  // Eq (6.14)/(6.15): R R+ -> R-
  rec.add_max("FUSE.R.6.14", pts, [&](cplx u) {
    SpaceLayout d{{4, 6, 6}};
    const Mat ppe = embed(Mat(up * up.transpose()), {0, 1}, d);
    Mat lhs = ppe * embed(rv(u), {1, 2}, d) * embed(r_plus(u + 6.0 * eta, eta), {0, 2}, d) * ppe;
    const Mat uu = kron(up, i6);
    return rel_residual(Mat(uu.transpose() * lhs * uu),
                        2.0 * rho0t(u) * r_minus(u + 2.0 * eta, eta));
  }, thr);
  rec.add_max("FUSE.R.6.15", pts, [&](cplx u) {
    SpaceLayout d{{4, 6, 6}};
    const Mat ppe = embed(Mat(uph * uph.transpose()), {0, 1}, d);
    Mat lhs = ppe * embed(rv(u), {2, 1}, d) *
              embed(Mat(r_plus(u + 6.0 * eta, eta).transpose()), {0, 2}, d) * ppe;
    const Mat uu = kron(uph, i6);
    return rel_residual(Mat(uu.transpose() * lhs * uu),
                        2.0 * rho0t(u) * Mat(r_minus(u + 2.0 * eta, eta).transpose()));
  }, thr);

  // Eq (6.21)/(6.22): R R- -> St R+ St
  rec.add_max("FUSE.R.6.21", pts, [&](cplx u) {
    SpaceLayout d{{4, 6, 6}};
    const Mat pme = embed(Mat(um * um.transpose()), {0, 1}, d);
    Mat lhs = pme * embed(rv(u), {1, 2}, d) * embed(r_minus(u + 6.0 * eta, eta), {0, 2}, d) * pme;
    Mat rhs = 2.0 * rho0t(u) * kron(st4, i6) * r_plus(u + 2.0 * eta, eta) * kron(st4, i6);
    const Mat uu = kron(um, i6);
    return rel_residual(Mat(uu.transpose() * lhs * uu), rhs);
  }, thr);
  rec.add_max("FUSE.R.6.22", pts, [&](cplx u) {
    SpaceLayout d{{4, 6, 6}};
    const Mat pme = embed(Mat(umh * umh.transpose()), {0, 1}, d);
    Mat lhs = pme * embed(rv(u), {2, 1}, d) *
              embed(Mat(r_minus(u + 6.0 * eta, eta).transpose()), {0, 2}, d) * pme;
    Mat rhs = 2.0 * rho0t(u) * kron(st4, i6) *
              Mat(r_plus(u + 2.0 * eta, eta).transpose()) * kron(st4, i6);
    const Mat uu = kron(umh, i6);
    return rel_residual(Mat(uu.transpose() * lhs * uu), rhs);
  }, thr);

  // Eq (7.9): Rt Rt -> R+
  rec.add_max("FUSE.R.7.9", pts, [&](cplx u) {
    SpaceLayout d{{4, 4, 4}};
    const Mat p6e = embed(Mat(uchi * uchi.transpose()), {1, 2}, d);
    Mat lhs = p6e * embed(r_spinorial(u - 2.0 * eta, eta), {0, 1}, d) *
              embed(r_spinorial(u + 2.0 * eta, eta), {0, 2}, d) * p6e;
    const Mat uu = kron(Mat::Identity(4, 4), uchi);
    return rel_residual(Mat(uu.transpose() * lhs * uu),
                        std::sinh(u / 2.0 + eta) * r_plus(u, eta));
  }, thr);
  // Eq (7.10): R+ R+ -> R/2
  rec.add_max("FUSE.R.7.10", pts, [&](cplx u) {
    SpaceLayout d{{4, 4, 6}};
    const Mat p6e = embed(Mat(uchi * uchi.transpose()), {0, 1}, d);
    Mat lhs = p6e * embed(r_plus(u - 2.0 * eta, eta), {1, 2}, d) *
              embed(r_plus(u + 2.0 * eta, eta), {0, 2}, d) * p6e;
    const Mat uu = kron(uchi, i6);
    return rel_residual(Mat(uu.transpose() * lhs * uu), 0.5 * rv(u));
  }, thr);

  return rec.records;
}

std::vector<ResidualRecord> check_fusion_k(const ValidatedParams& vp, int n_samples) {
  const ModelParams& p = vp.p;
  const cplx eta = p.eta;
  Recorder rec{p, {}};
  const double thr = 1e-9;
  const auto pts = sample_points(p, n_samples, 4);

  const Mat i6 = Mat::Identity(6, 6);
  const Mat i4 = Mat::Identity(4, 4);
  const Mat p66 = perm_op(6, 6);
  const Mat m6 = twist_M(eta);
  const Mat m1_66 = kron(m6, i6);
  const Mat m1i = m1_66.inverse();
  const Mat mb4 = twist_Mbar(eta);
  const Mat mb1_46 = kron(mb4, i6);
  const Mat mb1_46i = mb1_46.inverse();
  const Mat mb1_44 = kron(mb4, i4);
  const Mat mb1_44i = mb1_44.inverse();
  const Mat mb2_44 = kron(i4, mb4);
  const Mat mb2_44i = mb2_44.inverse();
  const Mat st4 = twist_St();
  auto rv = [&](cplx u) { return r_vector(u, eta); };
  auto h = [&](int i, cplx w) { return weights::h(i, w, eta, p.left); };
  auto ht = [&](int i, cplx w) { return weights::h_tilde(i, w, eta, p.right); };

  const Vec psi0 = projector(ProjName::P1, ProjSide::s12, eta).basis[0];
  const Vec psih0 = projector(ProjName::P1, ProjSide::s21, eta).basis[0];
  const Mat u16 = projector(ProjName::P16, ProjSide::s12, eta).isometry();
  const Mat u16_21 = projector(ProjName::P16, ProjSide::s21, eta).isometry();
  const Mat up = projector(ProjName::Pplus, ProjSide::s12, eta).isometry();
  const Mat uph = projector(ProjName::Pplus, ProjSide::s21, eta).isometry();
  const Mat um = projector(ProjName::Pminus, ProjSide::s12, eta).isometry();
  const Mat umh = projector(ProjName::Pminus, ProjSide::s21, eta).isometry();
  const Mat uchi = projector(ProjName::P6, ProjSide::s12, eta).isometry();
  const Mat uchi21 = projector(ProjName::P6, ProjSide::s21, eta).isometry();
  const Mat smat = s_transform(eta);
  const Mat sbar = s_bar_transform(eta);

  auto kv = [&](cplx w) { return k_matrix(w, eta, p.left); };
  auto kbv = [&](cplx w) { return k_bar(w, eta, p.right); };
  auto kp = [&](cplx w) { return k_plus_fused(w, eta, p.left); };
  auto km = [&](cplx w) { return k_minus_fused(w, eta, p.left); };
  auto kbp = [&](cplx w) { return k_bar_fused(+1, w, eta, p.right); };
  auto kbm = [&](cplx w) { return k_bar_fused(-1, w, eta, p.right); };

  // Eq (4.11)/(4.12): rank-1 K fusion
  rec.add_max("FUSE.K.4.11", pts, [&](cplx u) {
    Mat core = kron(i6, kv(u)) * rv(2.0 * u + 8.0 * eta) * kron(kv(u + 8.0 * eta), i6);
    const cplx pref = -2.0 * std::sinh(u + 6.0 * eta) * std::sinh(u + 8.0 * eta) *
                      h(1, u - 2.0 * eta) * h(2, u + 2.0 * eta);
    Mat lhs = (psi0.transpose() * core * psih0);
    Mat rhs(1, 1);
    rhs(0, 0) = pref;
    return rel_residual(lhs, rhs);
  }, thr);
  rec.add_max("FUSE.K.4.12", pts, [&](cplx u) {
    Mat core = kron(kbv(u + 8.0 * eta), i6) * m1i *
               Mat(p66 * rv(-2.0 * u + 8.0 * eta) * p66) * m1_66 * kron(i6, kbv(u));
    const cplx pref = -2.0 * std::sinh(u - 6.0 * eta) * std::sinh(u - 8.0 * eta) *
                      ht(1, u - 2.0 * eta) * ht(2, u + 2.0 * eta);
    Mat lhs = (psih0.transpose() * core * psi0);
    Mat rhs(1, 1);
    rhs(0, 0) = pref;
    return rel_residual(lhs, rhs);
  }, thr);

  // Eq (5.19)/(5.23): P16 K fusion
  rec.add_max("FUSE.K.5.19", pts, [&](cplx u) {
    Mat core = kron(i6, kv(u)) * rv(2.0 * u + 4.0 * eta) * kron(kv(u + 4.0 * eta), i6);
    Mat lhs = u16.transpose() * core * u16_21;
    Mat rhs = -2.0 * std::exp(4.0 * eta) * std::sinh(u + 4.0 * eta) * smat *
              kron(kp(u + 2.0 * eta), i4) * r_mp(2.0 * u + 4.0 * eta, eta) *
              kron(i4, km(u + 2.0 * eta)) * sbar.inverse();
    return rel_residual(lhs, rhs);
  }, thr);
  rec.add_max("FUSE.K.5.23", pts, [&](cplx u) {
    Mat core = kron(kbv(u + 4.0 * eta), i6) * m1i *
               Mat(p66 * rv(-2.0 * u + 12.0 * eta) * p66) * m1_66 * kron(i6, kbv(u));
    Mat lhs = u16_21.transpose() * core * u16;
    Mat rhs = 2.0 * std::exp(4.0 * eta) * std::sinh(u - 8.0 * eta) * sbar *
              kron(i4, kbm(u + 2.0 * eta)) * mb2_44i * r_pm(-2.0 * u + 12.0 * eta, eta) *
              mb2_44 * kron(kbp(u + 2.0 * eta), i4) * smat.inverse();
    return rel_residual(lhs, rhs);
  }, thr);

  // Eq (6.17)/(6.18): K K+ -> K-, dual
  rec.add_max("FUSE.K.6.17", pts, [&](cplx u) {
    Mat core = kron(i4, kv(u)) * r_plus(2.0 * u + 6.0 * eta, eta) *
               kron(kp(u + 6.0 * eta), i6);
    const cplx pref = -std::exp(4.0 * eta) * std::sinh(u + 6.0 * eta) * h(2, u + 2.0 * eta);
    return rel_residual(Mat(up.transpose() * core * uph), pref * km(u + 2.0 * eta));
  }, thr);
  rec.add_max("FUSE.K.6.18", pts, [&](cplx u) {
    Mat core = kron(kbp(u + 6.0 * eta), i6) * mb1_46i *
               Mat(r_plus(-2.0 * u + 10.0 * eta, eta).transpose()) * mb1_46 *
               kron(i4, kbv(u));
    const cplx pref = std::exp(4.0 * eta) * std::sinh(u - 8.0 * eta) * ht(1, u - 2.0 * eta);
    return rel_residual(Mat(uph.transpose() * core * up), pref * kbm(u + 2.0 * eta));
  }, thr);

  // Eq (6.24)/(6.26): K K- -> St K+ St, dual
  rec.add_max("FUSE.K.6.24", pts, [&](cplx u) {
    Mat core = kron(i4, kv(u)) * r_minus(2.0 * u + 6.0 * eta, eta) *
               kron(km(u + 6.0 * eta), i6);
    const cplx pref = std::exp(-4.0 * eta) * std::sinh(u + 6.0 * eta) * h(1, u - 2.0 * eta);
    return rel_residual(Mat(um.transpose() * core * umh),
                        pref * Mat(st4 * kp(u + 2.0 * eta) * st4));
  }, thr);
  rec.add_max("FUSE.K.6.26", pts, [&](cplx u) {
    Mat core = kron(kbm(u + 6.0 * eta), i6) * mb1_46i *
               Mat(r_minus(-2.0 * u + 10.0 * eta, eta).transpose()) * mb1_46 *
               kron(i4, kbv(u));
    const cplx pref = -std::exp(-4.0 * eta) * std::sinh(u - 8.0 * eta) * ht(2, u + 2.0 * eta);
    return rel_residual(Mat(umh.transpose() * core * um),
                        pref * Mat(st4 * kbp(u + 2.0 * eta) * st4));
  }, thr);

  // Eq (7.12)/(7.14): spinorial K fusions back to the vectorial K / K-bar
  const Mat p44 = perm_op(4, 4);
  rec.add_max("FUSE.K.7.12", pts, [&](cplx u) {
    Mat core = kron(i4, kp(u + 2.0 * eta)) * r_spinorial(2.0 * u, eta) *
               kron(kp(u - 2.0 * eta), i4);
    const cplx pref =
        std::sinh(u + 2.0 * eta) * h(2, u - 2.0 * eta) / std::cosh(2.0 * eta);
    return rel_residual(Mat(uchi.transpose() * core * uchi21), pref * kv(u));
  }, thr);
  rec.add_max("FUSE.K.7.14", pts, [&](cplx u) {
    Mat rt21 = p44 * r_spinorial(-2.0 * u + 16.0 * eta, eta) * p44;
    Mat core = kron(kbp(u + 2.0 * eta), i4) * mb1_44i * rt21 * mb1_44 *
               kron(i4, kbp(u - 2.0 * eta));
    const cplx pref =
        -std::sinh(u - 10.0 * eta) * ht(1, u - 6.0 * eta) / std::cosh(2.0 * eta);
    return rel_residual(Mat(uchi21.transpose() * core * uchi), pref * kbv(u));
  }, thr);

  return rec.records;
}

std::vector<ResidualRecord> check_transfer(const ValidatedParams& vp) {
  const ModelParams& p = vp.p;
  if (p.n_sites > 3) throw std::invalid_argument("check_transfer: N <= 3 required");
  const cplx eta = p.eta;
  Recorder rec{p, {}};
  const double thr_comm = 1e-9;
  const double thr_deep = 1e-8;
  const auto pts = sample_points(p, 5, 5);

  auto t = [&](cplx u) { return transfer(u, p); };
  auto tf = [&](cplx u, int s) { return transfer_fused(u, s, p); };
  auto h = [&](int i, cplx w) { return weights::h(i, w, eta, p.left); };
  auto ht = [&](int i, cplx w) { return weights::h_tilde(i, w, eta, p.right); };

  // pairwise commutativity at the sample points (paired cyclically)
  {
    double w_tt = 0, w_tp = 0, w_tm = 0, w_pm = 0, w_pp = 0, w_mm = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const cplx u = pts[k], v = pts[(k + 1) % pts.size()] + 0.11;
      const Mat tu = t(u), tv = t(v);
      const Mat tpu = tf(u, +1), tpv = tf(v, +1);
      const Mat tmu = tf(u, -1), tmv = tf(v, -1);
      w_tt = std::max(w_tt, rel_residual(tu * tv, tv * tu));
      w_tp = std::max(w_tp, rel_residual(tu * tpv, tpv * tu));
      w_tm = std::max(w_tm, rel_residual(tu * tmv, tmv * tu));
      w_pm = std::max(w_pm, rel_residual(tpu * tmv, tmv * tpu));
      w_pp = std::max(w_pp, rel_residual(tpu * tpv, tpv * tpu));
      w_mm = std::max(w_mm, rel_residual(tmu * tmv, tmv * tmu));
    }
    rec.add("COMM.t.t", pts, w_tt, thr_comm);
    rec.add("COMM.t.tplus", pts, w_tp, thr_comm);
    rec.add("COMM.t.tminus", pts, w_tm, thr_comm);
    rec.add("COMM.tplus.tminus", pts, w_pm, thr_comm);
    rec.add("COMM.tplus.tplus", pts, w_pp, thr_comm);
    rec.add("COMM.tminus.tminus", pts, w_mm, thr_comm);
  }

  // crossing t(u) = t(-u+8eta) and the t+/t- link
  rec.add_max("CROSS.t", {pts[0], pts[1]}, [&](cplx u) {
    return rel_residual(t(u), t(-u + 8.0 * eta));
  }, thr_comm);
  {
    Mat wbig = twist_W();
    for (int j = 1; j < p.n_sites; ++j) wbig = kron(wbig, twist_W());
    rec.add_max("CROSS.tplus.tminus", {pts[0]}, [&](cplx u) {
      return rel_residual(tf(-u + 8.0 * eta, +1),
                          std::exp(8.0 * eta) * Mat(wbig * tf(u, -1) * wbig));
    }, thr_comm);
  }

  // quantum determinant at each theta_j
  const int dim = 1;
  const Mat idp = Mat::Identity(int(std::pow(6, p.n_sites)), int(std::pow(6, p.n_sites)));
  (void)dim;
  for (int j = 0; j < p.n_sites; ++j) {
    const cplx th = p.theta[j];
    Mat lhs = t(th) * t(th + 8.0 * eta);
    cplx sfac = (std::sinh(th - 6.0 * eta) * std::sinh(th - 8.0 * eta) *
                 std::sinh(th + 6.0 * eta) * std::sinh(th + 8.0 * eta)) /
                (std::sinh(th - 2.0 * eta) * std::sinh(th - 4.0 * eta) *
                 std::sinh(th + 2.0 * eta) * std::sinh(th + 4.0 * eta));
    cplx dq = h(1, th - 2.0 * eta) * h(2, th + 2.0 * eta) * ht(1, th - 2.0 * eta) *
              ht(2, th + 2.0 * eta);
    for (int i = 0; i < p.n_sites; ++i) {
      dq *= weights::a(th - p.theta[i], eta) * weights::e(th - p.theta[i] + 8.0 * eta, eta) *
            weights::a(th + p.theta[i], eta) * weights::e(th + p.theta[i] + 8.0 * eta, eta);
    }
    const double res = rel_residual(lhs, sfac * dq * idp);
    const cplx mean_diag = lhs.trace() / double(lhs.rows());
    const double off = rel_residual(lhs, mean_diag * idp);
    rec.add("QDET.theta" + std::to_string(j + 1), {th}, res, thr_deep,
            "off-scalar component: " + std::to_string(off));
    rec.add("QDET.offscalar.theta" + std::to_string(j + 1), {th}, off, 1e-8);
  }

  // fused transfer identities at u = +-theta_j
  for (int j = 0; j < p.n_sites; ++j) {
    for (int s : {+1, -1}) {
      const cplx th = double(s) * p.theta[j];
      const std::string tag =
          std::string(s > 0 ? "+" : "-") + "theta" + std::to_string(j + 1);
      cplx prod_rho = 1.0;
      for (int i = 0; i < p.n_sites; ++i)
        prod_rho *= weights::rho0t(th - p.theta[i], eta) * weights::rho0t(th + p.theta[i], eta);

      {  // Eq (5.25)
        Mat lhs = t(th) * t(th + 4.0 * eta);
        cplx pref = std::exp(8.0 * eta) * std::sinh(th + 4.0 * eta) *
                    std::sinh(th - 8.0 * eta) /
                    (std::sinh(th + 2.0 * eta) * std::sinh(th - 6.0 * eta));
        pref *= prod_rho * std::pow(4.0, 2 * p.n_sites);
        Mat rhs = pref * tf(th + 2.0 * eta, +1) * tf(th + 2.0 * eta, -1);
        rec.add("FUSE.t.5.25." + tag, {th}, rel_residual(lhs, rhs), thr_deep);
      }
      cplx pref0 = std::sinh(th + 6.0 * eta) * std::sinh(th - 8.0 * eta) /
                   (std::sinh(th + 2.0 * eta) * std::sinh(th - 4.0 * eta));
      pref0 *= prod_rho * std::pow(2.0, 2 * p.n_sites);
      {  // Eq (6.20)
        Mat lhs = t(th) * tf(th + 6.0 * eta, +1);
        Mat rhs = std::exp(8.0 * eta) * pref0 * h(2, th + 2.0 * eta) *
                  ht(1, th - 2.0 * eta) * tf(th + 2.0 * eta, -1);
        rec.add("FUSE.t.6.20." + tag, {th}, rel_residual(lhs, rhs), thr_deep);
      }
      {  // Eq (6.28)
        Mat lhs = t(th) * tf(th + 6.0 * eta, -1);
        Mat rhs = std::exp(-8.0 * eta) * pref0 * h(1, th - 2.0 * eta) *
                  ht(2, th + 2.0 * eta) * tf(th + 2.0 * eta, +1);
        rec.add("FUSE.t.6.28." + tag, {th}, rel_residual(lhs, rhs), thr_deep);
      }
    }
  }
  return rec.records;
}

nlohmann::json records_to_json(const std::vector<ResidualRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["check_id"] = r.check_id;
    j["params_digest"] = r.params_digest;
    nlohmann::json pts = nlohmann::json::array();
    for (cplx z : r.sample_points) pts.push_back({z.real(), z.imag()});
    j["sample_points"] = pts;
    j["residual"] = r.residual;
    j["threshold"] = r.threshold;
    j["passed"] = r.passed;
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    arr.push_back(j);
  }
  return arr;
}

bool all_passed(const std::vector<ResidualRecord>& records) {
  for (const auto& r : records)
    if (!r.passed) return false;
  return true;
}

}  // namespace qd3
