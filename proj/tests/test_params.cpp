#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "qd3/params.hpp"
using namespace qd3;

TEST_CASE("c3 derivation and constraint") {
  auto b = make_boundary({0.31, 0.0}, {0.57, 0.0}, {0.23, 0.0});
  // c3 = c(c+e^{-c2})/c1 = 0.31*(0.31+e^{-0.23})/0.57
  CHECK(std::abs(b.c3 - cplx(0.31 * (0.31 + std::exp(-0.23)) / 0.57, 0.0)) < 1e-15);
  CHECK(b.constraint_residual() < 1e-15);
  CHECK_THROWS_AS(derive_c3({1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}), ZeroDivisor);
}

TEST_CASE("validation catches degenerate configurations") {
  ModelParams p = default_profile(2);
  CHECK(validate(p).has_value());

  ModelParams bad = p;
  bad.theta[0] = 2.0 * bad.eta;  // theta at a degeneration point
  std::vector<std::string> v;
  CHECK_FALSE(validate(bad, &v).has_value());
  CHECK_FALSE(v.empty());

  ModelParams bad2 = p;
  bad2.eta = 0.0;
  CHECK_FALSE(validate(bad2).has_value());

  // homogeneous N=1 is valid; homogeneous N=2 is not (theta_j - theta_k = 0)
  CHECK(validate(default_profile(1, true)).has_value());
  CHECK_FALSE(validate(default_profile(2, true)).has_value());
}

TEST_CASE("json round trip") {
  ModelParams p = default_profile(2);
  p.rng_seed = 42;
  auto j = params_to_json(p);
  ModelParams q = params_from_json(j);
  CHECK(q.n_sites == 2);
  CHECK(std::abs(q.eta - p.eta) < 1e-15);
  CHECK(std::abs(q.left.c3 - p.left.c3) < 1e-15);
  CHECK(q.rng_seed == 42);
}

TEST_CASE("generic point sampling avoids exclusions") {
  std::mt19937_64 rng(7);
  std::vector<cplx> excl = {{0.2, 0.0}, {0.4, 0.0}, {0.8, 0.0}};
  for (int k = 0; k < 50; ++k) {
    cplx u = sample_generic_point(rng, excl);
    for (cplx e : excl) CHECK(std::abs(u - e) >= 1e-3);
  }
}
