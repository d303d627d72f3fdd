#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "yeeblock/fields.hpp"
#include "yeeblock/kernels.hpp"
#include "yeeblock/probe.hpp"
#include "yeeblock/source.hpp"

using namespace yeeblock;

namespace {

GridSpec<double> unit_grid(int n, double cdt_over_h) {
  // unit spacing, c = 1, dt chosen so c*dt/h = cdt_over_h
  GridSpec<double> g;
  g.nx = g.ny = g.nz = n;
  g.dx.assign(n, 1.0);
  g.dy.assign(n, 1.0);
  g.dz.assign(n, 1.0);
  g.c = 1.0;
  g.dt = cdt_over_h;
  return g;
}

template <class Real>
bool identical(const Array3<Real>& a, const Array3<Real>& b) {
  if (!a.same_extents(b)) return false;
  return std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

template <class Real>
bool identical(const FieldSet<Real>& a, const FieldSet<Real>& b) {
  for (Comp c : kAllComps)
    if (!identical(a.field(c), b.field(c))) return false;
  return true;
}

IndexBox everything() { return {{0, 1 << 20}, {0, 1 << 20}, {0, 1 << 20}}; }

}  // namespace

TEST_CASE("staggered extents follow the fixed table") {
  FieldSet<double> f({3, 4, 5});
  CHECK(f.ex.nx() == 3);
  CHECK(f.ex.ny() == 5);
  CHECK(f.ex.nz() == 6);
  CHECK(f.ey.nx() == 4);
  CHECK(f.ey.ny() == 4);
  CHECK(f.ey.nz() == 6);
  CHECK(f.ez.nx() == 4);
  CHECK(f.ez.ny() == 5);
  CHECK(f.ez.nz() == 5);
  CHECK(f.hx.nx() == 4);
  CHECK(f.hx.ny() == 4);
  CHECK(f.hx.nz() == 5);
  CHECK(f.hy.nx() == 3);
  CHECK(f.hy.ny() == 5);
  CHECK(f.hy.nz() == 5);
  CHECK(f.hz.nx() == 3);
  CHECK(f.hz.ny() == 4);
  CHECK(f.hz.nz() == 6);
}

TEST_CASE("ampere pass: zero fields stay zero") {
  auto g = unit_grid(4, 0.5);
  auto co = build_coefficients(g);
  FieldSet<double> f(g.dims());
  FieldSet<double> before = f;
  apply_ampere_range(f, co, intersect(everything(), detail::node_box(g.dims())));
  CHECK(identical(f, before));
}

TEST_CASE("ampere pass: uniform magnetic field has zero discrete curl") {
  auto g = unit_grid(4, 0.5);
  auto co = build_coefficients(g);
  FieldSet<double> f(g.dims());
  for (Comp c : kHComps) f.field(c).fill(3.25);
  FieldSet<double> before = f;
  apply_ampere_range(f, co, detail::node_box(g.dims()));
  CHECK(identical(f, before));
}

TEST_CASE("ampere pass: one hz face feeds its four edges with +-0.5") {
  auto g = unit_grid(4, 0.5);
  auto co = build_coefficients(g);
  FieldSet<double> f(g.dims());
  f.hz(2, 2, 2) = 1.0;
  apply_ampere_range(f, co, detail::node_box(g.dims()));

  CHECK(f.ex(2, 2, 2) == 0.5);
  CHECK(f.ex(2, 3, 2) == -0.5);
  CHECK(f.ey(2, 2, 2) == -0.5);
  CHECK(f.ey(3, 2, 2) == 0.5);

  // no other DoF moved
  int nonzero = 0;
  for (Comp c : kEComps) {
    const auto& a = f.field(c);
    for (int k = 0; k < a.nz(); ++k)
      for (int j = 0; j < a.ny(); ++j)
        for (int i = 0; i < a.nx(); ++i)
          if (a(i, j, k) != 0.0) ++nonzero;
  }
  CHECK(nonzero == 4);
}

TEST_CASE("faraday pass: single edge excitations reproduce the update") {
  auto g = unit_grid(4, 0.5);
  auto co = build_coefficients(g);

  SECTION("zero stays zero") {
    FieldSet<double> f(g.dims());
    FieldSet<double> before = f;
    apply_faraday_range(f, co, detail::node_box(g.dims()));
    CHECK(identical(f, before));
  }
  SECTION("ey(i,j,k+1)=1 gives hx(i,j,k)=+0.5") {
    FieldSet<double> f(g.dims());
    f.ey(1, 1, 2) = 1.0;
    apply_faraday_range(f, co, detail::node_box(g.dims()));
    CHECK(f.hx(1, 1, 1) == 0.5);
  }
  SECTION("ez(i,j+1,k)=1 gives hx(i,j,k)=-0.5") {
    FieldSet<double> f(g.dims());
    f.ez(1, 2, 1) = 1.0;
    apply_faraday_range(f, co, detail::node_box(g.dims()));
    CHECK(f.hx(1, 1, 1) == -0.5);
  }
}

TEST_CASE("range ops reject out-of-bounds boxes") {
  auto g = unit_grid(4, 0.5);
  auto co = build_coefficients(g);
  FieldSet<double> f(g.dims());
  IndexBox bad = {{0, 6}, {0, 4}, {0, 4}};
  CHECK_THROWS_AS(apply_ampere_range(f, co, bad), std::out_of_range);
  CHECK_THROWS_AS(apply_faraday_range(f, co, bad), std::out_of_range);
  IndexBox pec_edge = {{0, 4}, {0, 5}, {0, 5}};  // touches boundary planes
  CHECK_THROWS_AS(update_e_box(f, co, Comp::Ex, pec_edge), std::out_of_range);
}

TEST_CASE("pec boundary zeroes exactly the boundary tangential E") {
  auto g = unit_grid(4, 0.5);
  FieldSet<double> f(g.dims());

  SECTION("zero fields unchanged") {
    FieldSet<double> before = f;
    apply_pec_boundary(f);
    CHECK(identical(f, before));
  }
  SECTION("all-ones E keeps interior, zeroes the shell") {
    for (Comp c : kEComps) f.field(c).fill(1.0);
    apply_pec_boundary(f);
    for (Comp c : kEComps) {
      const auto& a = f.field(c);
      const IndexBox inner = curl_updatable_box(g.dims(), c);
      for (int k = 0; k < a.nz(); ++k)
        for (int j = 0; j < a.ny(); ++j)
          for (int i = 0; i < a.nx(); ++i) {
            const double expect = inner.contains(i, j, k) ? 1.0 : 0.0;
            REQUIRE(a(i, j, k) == expect);
          }
    }
  }
  SECTION("random fields: energy non-increasing at that instant") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Comp c : kAllComps) {
      auto& a = f.field(c);
      for (std::size_t n = 0; n < a.size(); ++n) a.data()[n] = u(rng);
    }
    HSnapshot<double> h(f);
    const double before = total_energy(g, f, h);
    apply_pec_boundary(f);
    const double after = total_energy(g, f, h);
    CHECK(after <= before);
  }
}

TEST_CASE("inject_current implements a soft source") {
  auto g = unit_grid(8, 0.5);
  FieldSet<double> f(g.dims());
  SourceSpec s;
  s.i = 4;
  s.j = 4;
  s.k = 4;
  s.component = Comp::Ez;

  SECTION("zero amplitude leaves the field bit-identical") {
    s.waveform = Waveform::pulse(0.0, 3.0);
    FieldSet<double> before = f;
    inject_current(f, s, 5, 0.5);
    CHECK(identical(f, before));
  }
  SECTION("increment is exactly -dt * J(step*dt)") {
    s.waveform = Waveform::pulse(2.0, 3.0);
    const double dt = 0.5;
    const long long step = 7;
    const double j = s.waveform.value(static_cast<double>(step) * dt);
    inject_current(f, s, step, dt);
    CHECK(f.ez(4, 4, 4) == -dt * j);
  }
  SECTION("pulse peak value: J(t0 + sigma) = A * exp(-1/2)") {
    const double A = 1.5, sigma = 2.0;
    s.waveform = Waveform::pulse(A, sigma);
    // the waveform is odd around t0; its extremum sits one sigma after t0
    const double peak = s.waveform.value(s.waveform.t0 + sigma);
    CHECK_THAT(peak, Catch::Matchers::WithinRel(A * std::exp(-0.5), 1e-15));
    const double dt = s.waveform.t0 + sigma;  // so step 1 lands on the peak
    inject_current(f, s, 1, dt);
    CHECK(f.ez(4, 4, 4) == -dt * peak);
  }
  SECTION("inactive after active_steps") {
    s.waveform = Waveform::pulse(1.0, 3.0);
    s.active_steps = 10;
    FieldSet<double> before = f;
    inject_current(f, s, 10, 0.5);
    CHECK(identical(f, before));
    inject_current(f, s, 9, 0.5);
    CHECK_FALSE(identical(f, before));
  }
  SECTION("positions on the boundary are rejected") {
    SourceSpec bad = s;
    bad.j = 0;
    CHECK_THROWS_AS(bad.validate(g.dims()), std::invalid_argument);
  }
}

TEST_CASE("sample_probes honours the stride and reads without mutating") {
  auto g = unit_grid(8, 0.5);
  FieldSet<double> f(g.dims());
  f.ez(4, 4, 4) = -0.125;
  std::vector<ProbeSpec> probes = {{4, 4, 4, Comp::Ez, 20},
                                   {1, 1, 1, Comp::Hx, 3}};

  CHECK(sample_probes(f, probes, 7, 0.5).empty());
  auto at40 = sample_probes(f, probes, 40, 0.5);
  REQUIRE(at40.size() == 1);
  CHECK(at40[0].probe == 0);
  CHECK(at40[0].value == -0.125);
  CHECK(at40[0].time == 20.0);

  auto at60 = sample_probes(f, probes, 60, 0.5);
  REQUIRE(at60.size() == 2);  // both strides divide 60

  SECTION("probe at the source cell sees exactly the injected value") {
    FieldSet<double> clean(g.dims());
    SourceSpec s;
    s.i = s.j = s.k = 4;
    s.component = Comp::Ez;
    s.waveform = Waveform::pulse(1.0, 2.0);
    inject_current(clean, s, 20, 0.5);
    auto r = sample_probes(clean, probes, 20, 0.5);
    REQUIRE(!r.empty());
    CHECK(r[0].value == -0.5 * s.waveform.value(10.0));
  }
}

TEST_CASE("probe records render one tab-separated line per sample") {
  std::vector<ProbeRecord> recs = {{40, 20.0, 0, -0.125}};
  CHECK(format_probe_records(recs, 17) == "40\t20\t0\t-0.125\n");
}

TEST_CASE("total_energy is the volume-weighted leapfrog invariant") {
  auto g = unit_grid(4, 0.5);
  FieldSet<double> f(g.dims());
  HSnapshot<double> h(f);

  CHECK(total_energy(g, f, h) == 0.0);

  f.ez(2, 2, 1) = 2.0;  // interior DoF, unit dual volume on a unit grid
  CHECK(total_energy(g, f, h) == 4.0);

  SECTION("H contributes the cross product of the two half levels") {
    f.zero();
    f.hx(2, 1, 1) = 3.0;
    HSnapshot<double> prev(f);
    f.hx(2, 1, 1) = 0.5;
    CHECK(total_energy(g, f, prev) == 1.5);
  }
  SECTION("extent mismatch is a contract violation") {
    FieldSet<double> other({3, 3, 3});
    HSnapshot<double> hh(other);
    CHECK_THROWS_AS(total_energy(g, f, hh), std::invalid_argument);
  }
}

TEST_CASE("field digest distinguishes any bit flip") {
  FieldSet<double> a({4, 4, 4}), b({4, 4, 4});
  CHECK(field_digest(a) == field_digest(b));
  b.hy(1, 2, 3) = 1e-300;
  CHECK(field_digest(a) != field_digest(b));
  b.hy(1, 2, 3) = 0.0;
  CHECK(field_digest_hex(a) == field_digest_hex(b));
  b.hy(1, 2, 3) = -0.0;  // sign bit only
  CHECK(field_digest(a) != field_digest(b));
}
