#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "model.hpp"

using namespace dfvm;

TEST_CASE("model params defaults validate") {
  ModelParams mp;
  CHECK(mp.m == doctest::Approx(2.0));
  CHECK(mp.p_exp == doctest::Approx(0.0));
  CHECK(mp.q == doctest::Approx(1.0));
  CHECK(mp.E_s == doctest::Approx(0.0));
  CHECK(mp.alpha == doctest::Approx(0.0));
  CHECK(mp.epsilon == doctest::Approx(1e-10));
  CHECK_NOTHROW(validate(mp));
}

TEST_CASE("model params rejects out-of-range fields") {
  ModelParams mp;

  mp.m = 0.0;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp.m = -1.0;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp = ModelParams{};

  mp.p_exp = mp.m;  // p_exp must stay strictly below m
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp.p_exp = mp.m + 1.0;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp = ModelParams{};

  mp.q = 0.0;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp = ModelParams{};

  mp.E_s = -0.1;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp = ModelParams{};

  mp.alpha = 1.6;  // beyond +pi/2
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp.alpha = -1.6;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp.alpha = 1.5707963267948966;  // pi/2 itself is fine
  CHECK_NOTHROW(validate(mp));
  mp = ModelParams{};

  mp.epsilon = 0.0;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp.epsilon = -1e-10;
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
  mp = ModelParams{};

  mp.m = std::nan("");
  CHECK_THROWS_AS(validate(mp), std::invalid_argument);
}

TEST_CASE("regularize") {
  CHECK(regularize(0.0, 1e-10) == doctest::Approx(1e-10).epsilon(1e-14));
  CHECK(regularize(3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(regularize(-3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-15));
  // sqrt(0.25 + 1e-20) rounds to 0.5 at double precision
  CHECK(regularize(0.5, 1e-10) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(regularize(0.5, 1e-10) >= 0.5);
  CHECK_THROWS_AS(regularize(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(regularize(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("regularize is even and dominated by |u|") {
  for (double u : {0.0, 1e-12, 1e-6, 0.3, 1.0, 7.5}) {
    const double h = regularize(u, 1e-10);
    CHECK(h == regularize(-u, 1e-10));
    CHECK(h >= std::abs(u));
    CHECK(h >= 1e-10);
  }
}

TEST_CASE("diffusion coefficient") {
  ModelParams mp;  // m=2, p_exp=0
  CHECK(diffusion_coefficient(1.0, mp) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(diffusion_coefficient(0.0, mp) == doctest::Approx(2e-10).epsilon(1e-12));

  ModelParams mp31;
  mp31.m = 3.0;
  mp31.p_exp = 1.0;
  // (m - p) * h^(m-p-1) = 2 * 0.5^1
  CHECK(diffusion_coefficient(0.5, mp31) == doctest::Approx(1.0).epsilon(1e-15));

  // a(u) > 0 for all u when p_exp < m
  ModelParams mp15;
  mp15.m = 1.5;
  for (double u : {0.0, 0.1, 0.9, 4.0}) {
    CHECK(diffusion_coefficient(u, mp15) > 0.0);
  }
}

TEST_CASE("advection coefficient") {
  ModelParams mp;
  CHECK(advection_coefficient(0.7, mp, 0.0) == doctest::Approx(0.0));

  // +pi/2, m=2: b = -1 * h^1
  CHECK(advection_coefficient(1.0, mp, 1.5707963267948966) == doctest::Approx(-1.0).epsilon(1e-15));

  ModelParams mp3;
  mp3.m = 3.0;
  // -pi/2, m=3: b = +h^2 = 0.25
  CHECK(advection_coefficient(0.5, mp3, -1.5707963267948966) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("nondimensional scales") {
  ModelParams mp;  // m=2, p_exp=0

  SUBCASE("unit-ish scales") {
    PhysicalScales unit;
    unit.theta_s = 1.0;
    unit.E_s_dim = 2.0;
    // t_scale = K^2 (m-p)/(D th^2) = 2, x_scale = K (m-p)/(D th) = 2
    const NonDim nd = nondimensionalize(unit, mp, 1.0, 1.0);
    CHECK(nd.t_tilde == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(nd.x_tilde == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(nd.E_s_tilde == doctest::Approx(1.0).epsilon(1e-15));
    // the map is linear in (t, x)
    const NonDim nd2 = nondimensionalize(unit, mp, 0.5, 3.0);
    CHECK(nd2.t_tilde == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(nd2.x_tilde == doctest::Approx(6.0).epsilon(1e-15));
  }
  SUBCASE("K doubling quadruples the time scale") {
    PhysicalScales a;
    a.theta_s = 1.0;
    PhysicalScales b = a;
    b.K_s = 2.0;
    const NonDim na = nondimensionalize(a, mp, 1.0, 1.0);
    const NonDim nb = nondimensionalize(b, mp, 1.0, 1.0);
    CHECK(nb.t_tilde == doctest::Approx(4.0 * na.t_tilde).epsilon(1e-15));
    CHECK(nb.x_tilde == doctest::Approx(2.0 * na.x_tilde).epsilon(1e-15));
  }
  SUBCASE("degenerate m == p_exp rejected") {
    PhysicalScales ps;
    ModelParams bad;
    bad.m = 1.0;
    bad.p_exp = 1.0;
    CHECK_THROWS_AS(nondimensionalize(ps, bad, 1.0, 1.0), std::invalid_argument);
  }
  SUBCASE("bad scales rejected") {
    PhysicalScales ps;
    ps.D_s = 0.0;
    CHECK_THROWS_AS(nondimensionalize(ps, mp, 1.0, 1.0), std::invalid_argument);
    ps = PhysicalScales{};
    ps.theta_s = ps.theta_r;
    CHECK_THROWS_AS(nondimensionalize(ps, mp, 1.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("pressure head") {
  PhysicalScales ps;
  ps.theta_s = 1.0;
  ModelParams mp;
  mp.p_exp = 1.0;
  // psi(1) = 0 for any admissible parameters
  CHECK(pressure_head(1.0, ps, mp) == doctest::Approx(0.0));
  // (theta_s D_s)/(p K_s) (1 - u^-p) with unit scales, p=1, u=0.5 -> 1*(1-2) = -1
  CHECK(pressure_head(0.5, ps, mp) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_THROWS_AS(pressure_head(0.0, ps, mp), std::invalid_argument);
  CHECK_THROWS_AS(pressure_head(-0.5, ps, mp), std::invalid_argument);
  ModelParams p0;
  CHECK_THROWS_AS(pressure_head(0.5, ps, p0), std::invalid_argument);
}

TEST_CASE("permeability") {
  PhysicalScales ps;
  ModelParams mp;  // m=2
  CHECK(permeability(0.5, ps, mp) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(permeability(1.0, ps, mp) == doctest::Approx(1.0).epsilon(1e-15));
  ps.K_s = 3.0;
  CHECK(permeability(0.5, ps, mp) == doctest::Approx(0.75).epsilon(1e-15));
}
