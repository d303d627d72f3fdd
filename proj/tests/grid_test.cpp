#include <catch2/catch_amalgamated.hpp>

#include "yeeblock/grid.hpp"

using namespace yeeblock;

TEST_CASE("build_coefficients divides c*dt by each spacing") {
  GridSpec<double> g;
  g.nx = 2;
  g.ny = 3;
  g.nz = 1;
  g.dx = {1.0, 1.0};
  g.dy = {0.1, 0.2, 0.4};
  g.dz = {2.0};
  g.c = 1.0;

  SECTION("uniform axis, c*dt = 0.5") {
    g.dt = 0.5;
    auto co = build_coefficients(g);
    CHECK(co.cdx == std::vector<double>{0.5, 0.5});
  }
  SECTION("single division, c*dt = 1") {
    g.dt = 1.0;
    auto co = build_coefficients(g);
    CHECK(co.cdz == std::vector<double>{0.5});
  }
  SECTION("element-wise exact on a stretched axis, c*dt = 0.1") {
    g.dt = 0.1;
    auto co = build_coefficients(g);
    // each value is the one division c*dt/dy[j], bit-exact
    CHECK(co.cdy[0] == 0.1 / 0.1);
    CHECK(co.cdy[1] == 0.1 / 0.2);
    CHECK(co.cdy[2] == 0.1 / 0.4);
    CHECK(co.cdy == std::vector<double>{1.0, 0.5, 0.25});
  }
}

TEST_CASE("build_coefficients validates the grid") {
  GridSpec<double> g;
  g.nx = g.ny = g.nz = 1;
  g.dx = {1.0};
  g.dy = {1.0};
  g.dz = {-1.0};
  g.dt = 0.1;
  CHECK_THROWS_AS(build_coefficients(g), std::invalid_argument);
  g.dz = {1.0, 1.0};
  CHECK_THROWS_AS(build_coefficients(g), std::invalid_argument);
}

TEST_CASE("stable_dt evaluates the 3D leapfrog bound") {
  SECTION("unit cube, c=1, safety=1 gives 1/sqrt(3)") {
    GridSpec<double> g;
    g.nx = g.ny = g.nz = 4;
    g.dx.assign(4, 1.0);
    g.dy.assign(4, 1.0);
    g.dz.assign(4, 1.0);
    g.c = 1.0;
    CHECK_THAT(stable_dt(g, 1.0),
               Catch::Matchers::WithinRel(1.0 / std::sqrt(3.0), 1e-14));
  }
  SECTION("scales as h/(c*sqrt(3)) on uniform spacing") {
    const double h = 0.37, c = 2.5e8;
    GridSpec<double> g;
    g.nx = g.ny = g.nz = 2;
    g.dx.assign(2, h);
    g.dy.assign(2, h);
    g.dz.assign(2, h);
    g.c = c;
    CHECK_THAT(stable_dt(g, 1.0),
               Catch::Matchers::WithinRel(h / (c * std::sqrt(3.0)), 1e-14));
  }
  SECTION("uses the minimum spacing per axis and the safety factor") {
    GridSpec<double> g;
    g.nx = 2;
    g.ny = g.nz = 1;
    g.dx = {1.0, 5.0};
    g.dy = {2.0};
    g.dz = {2.0};
    g.c = 1.0;
    const double expect = 0.5 / std::sqrt(1.0 + 0.25 + 0.25);
    CHECK_THAT(stable_dt(g, 0.5), Catch::Matchers::WithinRel(expect, 1e-14));
    CHECK_THAT(stable_dt(g, 0.5), Catch::Matchers::WithinAbs(0.40825, 1e-5));
  }
  SECTION("rejects safety outside (0,1]") {
    GridSpec<double> g = make_uniform_grid<double>(2, 1.0, 1.0);
    CHECK_THROWS_AS(stable_dt(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(stable_dt(g, 1.5), std::invalid_argument);
  }
}

TEST_CASE("make_uniform_grid picks a stable dt") {
  auto g = make_uniform_grid<double>(8, 1.0, 1.0, 0.99);
  CHECK(g.dt <= stable_dt(g, 1.0));
  CHECK(g.dt == Catch::Approx(0.99 / std::sqrt(3.0)));
  auto gf = make_uniform_grid<float>(8, 1.0f, 1.0f, 0.99);
  CHECK(static_cast<double>(gf.dt) <= stable_dt(gf, 1.0) * (1 + 1e-7));
}
