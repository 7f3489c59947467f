#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qd3/spectra.hpp"

using namespace qd3;

namespace {

std::vector<cplx> grid() { return {{0.31, 0.0}, {0.77, 0.0}, {1.23, 0.0}, {-0.45, 0.0}}; }

}  // namespace

TEST_CASE("diagonalize family at N=1") {
  auto vp = validate(default_profile(1));
  REQUIRE(vp.has_value());
  SpectralFamily f = diagonalize_family(*vp, grid());
  CHECK(f.n_states == 6);
  CHECK(f.lambda.size() == 6);
  CHECK(f.lambda[0].size() == 4);

  // lambda_at must reproduce the tabulated grid values
  Vec at0 = f.lambda_at(f.u_grid[0]);
  for (int k = 0; k < 6; ++k)
    CHECK(std::abs(at0(k) - f.lambda[k][0]) / std::abs(f.lambda[k][0]) < 1e-10);

  // eigenvalue functional relations all hold
  for (const auto& r : check_eigen_relations(f)) {
    INFO(r.check_id, " residual=", r.residual);
    CHECK(r.passed);
  }

  // every state sits in an admissible asymptotic sector
  for (auto [m1, m2] : asymptotic_sectors(f)) {
    CHECK(m1 >= 0);
    CHECK(m2 >= 0);
    CHECK(m1 + m2 <= 2);
  }
}

TEST_CASE("T-Q expression is crossing symmetric for arbitrary roots") {
  ModelParams p = default_profile(1);
  // L1 = L2 + L3 + N = 2 with arbitrary (non-Bethe) roots
  BetheState s = make_bethe_state({{0.41, 0.23}, {-0.77, 0.11}}, {{0.9, -0.3}}, {}, p);
  CHECK(s.m1 == 1);
  CHECK(s.m2 == 0);
  for (cplx u : {cplx(0.66, 0.2), cplx(1.4, -0.35), cplx(-0.52, 0.0)}) {
    const cplx lhs = tq_lambda(u, s, p);
    const cplx rhs = tq_lambda(-u + 8.0 * p.eta, s, p);
    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
  }

  // counting-rule violation is rejected
  CHECK_THROWS_AS(make_bethe_state({{0.4, 0.0}}, {{0.9, 0.0}}, {}, p), std::invalid_argument);
}

TEST_CASE("bae residual guards") {
  ModelParams p = default_profile(1);
  BetheState dup = make_bethe_state({{0.4, 0.0}, {0.4, 0.0}}, {{0.9, 0.0}}, {}, p);
  CHECK_THROWS_AS(bae_residuals(dup, p), CoincidentRoots);

  CHECK_THROWS_AS(solve_bae(1, 1, 0, p, 4), std::invalid_argument);  // counting rule
  CHECK_THROWS_AS(solve_bae(5, 2, 2, p, 4), std::invalid_argument);  // L1 > 2N
}

TEST_CASE("solve_bae at homogeneous N=1 finds the physical ground sector state") {
  ModelParams p = default_profile(1, true);  // theta = 0
  auto states = solve_bae(1, 0, 0, p, 32);
  CHECK(!states.empty());

  // the root mu ~ 0.3471 solves the sector-(0,0) equations; its T-Q energy is
  // a frozen reference value from the independent prototype
  bool found = false;
  for (const auto& s : states) {
    REQUIRE(s.mu1.size() == 1);
    CHECK(s.bae_residual < 1e-9);
    if (std::abs(std::abs(s.mu1[0].real()) - 0.3471) < 1e-3 &&
        std::abs(s.mu1[0].imag()) < 1e-6) {
      found = true;
      const cplx e = energy_tq(s, p);
      CHECK(std::abs(e - cplx(-8.3375000031, 0.0)) < 1e-6);
    }
  }
  CHECK(found);
}

TEST_CASE("matching bethe states to the diagonalized spectrum") {
  ModelParams p = default_profile(1, true);
  auto vp = validate(p);
  REQUIRE(vp.has_value());
  SpectralFamily f = diagonalize_family(*vp, grid());
  auto states = solve_bae(1, 0, 0, p, 32);
  auto matches = match_tq_to_spectrum(f, states);
  REQUIRE(matches.size() == states.size());
  int n_matched = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (matches[i].state_index >= 0 && matches[i].max_deviation < 1e-6) {
      ++n_matched;
      // two-route energy agreement
      const cplx e1 = energy_tq(states[i], p);
      const cplx e2 = energy_curve(f, matches[i].state_index);
      CHECK(std::abs(e1 - e2) < 1e-5);
    }
  }
  CHECK(n_matched >= 1);
}

TEST_CASE("bethe state serializes") {
  ModelParams p = default_profile(1);
  BetheState s = make_bethe_state({{0.41, 0.23}, {-0.77, 0.11}}, {{0.9, -0.3}}, {}, p);
  auto j = bethe_state_to_json(s);
  CHECK(j["mu1"].size() == 2);
  CHECK(j["mu2"].size() == 1);
  CHECK(j["mu3"].size() == 0);
  CHECK(j.contains("x"));
}
