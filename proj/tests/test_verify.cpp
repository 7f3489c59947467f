#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qd3/verify.hpp"

using namespace qd3;

TEST_CASE("local identity catalog passes on the default profile") {
  auto vp = validate(default_profile(1));
  REQUIRE(vp.has_value());
  auto recs = check_local(*vp, 4);
  CHECK(recs.size() > 20);
  for (const auto& r : recs) {
    INFO(r.check_id, " residual=", r.residual);
    CHECK(r.passed);
    CHECK(r.residual < r.threshold);
  }
}

TEST_CASE("degeneration ranks and projector angles") {
  auto vp = validate(default_profile(1));
  REQUIRE(vp.has_value());
  auto recs = check_degenerations(*vp);
  bool saw_rank = false, saw_angle = false;
  for (const auto& r : recs) {
    INFO(r.check_id, " residual=", r.residual);
    CHECK(r.passed);
    if (r.check_id.find("RANK") != std::string::npos) saw_rank = true;
    if (r.check_id.find("ANGLE") != std::string::npos) saw_angle = true;
  }
  CHECK(saw_rank);
  CHECK(saw_angle);
}

TEST_CASE("fusion catalogs pass") {
  auto vp = validate(default_profile(1));
  REQUIRE(vp.has_value());
  for (const auto& r : check_fusion_r(*vp, 4)) {
    INFO(r.check_id, " residual=", r.residual);
    CHECK(r.passed);
  }
  for (const auto& r : check_fusion_k(*vp, 4)) {
    INFO(r.check_id, " residual=", r.residual);
    CHECK(r.passed);
  }
}

TEST_CASE("transfer catalog passes at N=2") {
  auto vp = validate(default_profile(2));
  REQUIRE(vp.has_value());
  auto recs = check_transfer(*vp);
  CHECK(all_passed(recs));
  bool saw_comm = false, saw_qdet = false, saw_link = false;
  for (const auto& r : recs) {
    INFO(r.check_id, " residual=", r.residual);
    CHECK(r.passed);
    if (r.check_id.find("COMM") != std::string::npos) saw_comm = true;
    if (r.check_id.find("QDET") != std::string::npos) saw_qdet = true;
    if (r.check_id.find("CROSS.tplus.tminus") != std::string::npos) saw_link = true;
  }
  CHECK(saw_comm);
  CHECK(saw_qdet);
  CHECK(saw_link);
}

TEST_CASE("records serialize with stable digests") {
  ModelParams p = default_profile(1);
  auto r1 = make_record("X", p, {cplx(0.5, 0.0)}, 1e-12, 1e-9);
  auto r2 = make_record("X", p, {cplx(0.5, 0.0)}, 1e-12, 1e-9);
  CHECK(r1.passed);
  CHECK(r1.params_digest == r2.params_digest);

  auto j = records_to_json({r1});
  CHECK(j.is_array());
  CHECK(j[0]["check_id"] == "X");
  CHECK(j[0]["passed"] == true);

  auto bad = make_record("Y", p, {}, 1e-3, 1e-9);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(all_passed({r1, bad}));
}
