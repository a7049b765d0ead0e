#include <doctest.h>

#include <cmath>

#include "discflow/errors.hpp"
#include "discflow/euler_hierarchy.hpp"
#include "discflow/grids.hpp"
#include "discflow/hierarchy.hpp"
#include "support.hpp"

using namespace discflow;

namespace {

std::vector<double> radii() {
  std::vector<double> r;
  for (int i = 0; i <= 40; ++i) r.push_back(std::pow(50.0, i / 40.0));
  return r;
}

FourierData random_trace(int K) {
  FourierData t;
  t.cos.assign(K + 1, 0.0);
  t.sin.assign(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    t.cos[k] = testing::uniform(-1, 1);
    t.sin[k] = testing::uniform(-1, 1);
  }
  return t;
}

Params params(double delta) {
  Params p;
  p.omega = 1.0;
  p.delta = delta;
  p.f.cos = {0.1, 1.0, 0.0, 0.2};
  p.f.sin = {0.0, 0.3, 0.5};
  p.order = 2;
  return p;
}

}  // namespace

TEST_CASE("zero trace gives the zero order") {
  const EulerOrder e = solve_euler_order(1, FourierData{{0.0}, {0.0}}, 8);
  CHECK(e.u.is_zero());
  CHECK(e.v.is_zero());
}

TEST_CASE("single cosine trace gives the dipole") {
  const double c = 0.37;
  const EulerOrder e = solve_euler_order(1, FourierData{{0.0, c}, {0.0, 0.0}}, 8);
  for (double r : radii()) {
    CHECK(r * e.v.cos_at(1, r) == doctest::Approx(-c / r).epsilon(1e-14));
    CHECK(e.v.sin_at(1, r) == 0.0);
    // Potential flow: u = d_r of the potential, the tangential partner of v.
    CHECK(e.u.sin_at(1, r) == doctest::Approx(-c / (r * r)).epsilon(1e-14));
  }
  const double wall = e.v.value(0.4, 1.0);
  CHECK(wall == doctest::Approx(-c * std::cos(0.4)).epsilon(1e-14));
}

TEST_CASE("nonzero trace mean is rejected") {
  try {
    solve_euler_order(1, FourierData{{1e-3, 1.0}, {}}, 8);
    FAIL("nonzero mean accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Compatibility);
  }
}

TEST_CASE("orders superpose") {
  for (int t = 0; t < 20; ++t) {
    const FourierData a = random_trace(6), b = random_trace(6);
    FourierData s = a;
    for (int k = 0; k <= 6; ++k) {
      s.cos[k] += b.cos[k];
      s.sin[k] += b.sin[k];
    }
    const EulerOrder ea = solve_euler_order(1, a, 8), eb = solve_euler_order(1, b, 8);
    const EulerOrder es = solve_euler_order(1, s, 8);
    CHECK(max_on(es.u - ea.u - eb.u, radii(), 32) < 1e-12);
    CHECK(max_on(es.v - ea.v - eb.v, radii(), 32) < 1e-12);
  }
}

TEST_CASE("mode n decays like r^-(n+1)") {
  for (int n = 1; n <= 5; ++n) {
    FourierData t{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
    t.cos[n] = 0.8;
    t.sin[n] = -0.3;
    const EulerOrder e = solve_euler_order(1, t, 8);
    const double r1 = 4.0, r2 = 32.0;
    auto amp = [&](double r) { return std::hypot(e.v.cos_at(n, r), e.v.sin_at(n, r)); };
    const double slope = std::log(amp(r2) / amp(r1)) / std::log(r2 / r1);
    CHECK(std::abs(slope + (n + 1)) < 0.05);
  }
}

TEST_CASE("constructed hierarchy satisfies the outer equations") {
  const Hierarchy h = build_hierarchy(params(0.05), std::make_shared<const ThetaGrid>(16), LayerConfig{});
  REQUIRE(h.euler.size() == 4);
  for (std::size_t k = 1; k < h.euler.size(); ++k) {
    CHECK(h.compatibility[k] < 1e-9);
    const EulerMomentumResidual r = euler_momentum_residual(h.euler[k], h.euler[0]);
    CHECK(max_on(r.theta_eq, radii()) < 1e-8);
    CHECK(max_on(r.radial_eq, radii()) < 1e-8);
    // rv vanishes in the theta mean, so no source or sink is added.
    for (double r : radii()) CHECK(std::abs(h.euler[k].v.cos_at(0, r)) < 1e-14);
  }
}

TEST_CASE("compatibility detects a non-potential first order") {
  Hierarchy h = build_hierarchy(params(0.05), std::make_shared<const ThetaGrid>(16), LayerConfig{});
  // Swap the phase of the tangential partner; the velocity is no longer a gradient.
  EulerOrder& e1 = h.euler[1];
  PowerField u(e1.u.n_modes());
  for (int n = 1; n <= e1.u.n_modes(); ++n) {
    for (auto [m, c] : e1.u.sin_terms(n)) u.add_cos(n, m, c);
    for (auto [m, c] : e1.u.cos_terms(n)) u.add_sin(n, m, c);
  }
  for (auto [m, c] : e1.u.cos_terms(0)) u.add_cos(0, m, c);
  e1.u = u;
  EulerOrder e2 = solve_euler_order(2, FourierData{{0.0}, {0.0}}, e1.u.n_modes());
  assemble_euler_forcing(e2, {h.euler[0], h.euler[1]});
  const CompatibilityReport rep = check_compatibility(e2.f_e, radii());
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_mean > 1e-6);
}

TEST_CASE("radial corrector") {
  const auto g = RadialGrid::geometric(2000, 200.0);
  const auto& r = g->r();
  SUBCASE("homogeneous") {
    const CorrectorResult c = corrector_hk(0.7, std::vector<double>(g->size(), 0.0), *g);
    double e = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) e = std::max(e, std::abs(c.h[i] - 0.7 / r[i]));
    CHECK(e < 1e-14);
    CHECK(c.tilde_A == 0.7);
  }
  SUBCASE("power forcing") {
    std::vector<double> f(g->size());
    for (std::size_t i = 0; i < r.size(); ++i) f[i] = std::pow(r[i], -5);
    const CorrectorResult c = corrector_hk(1.0, f, *g);
    double e = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      e = std::max(e, std::abs(c.h[i] - (0.875 / r[i] + 0.125 * std::pow(r[i], -3))));
    CHECK(e < 1e-10);
    CHECK(c.h[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.ode_residual < 1e-8);
  }
  SUBCASE("grid mismatch") {
    CHECK_THROWS_AS(corrector_hk(1.0, std::vector<double>(3, 0.0), *g), Error);
  }
}

TEST_CASE("corrector enters the zero mode as A / r") {
  EulerOrder e = solve_euler_order(1, random_trace(3), 8);
  apply_corrector(e, -0.25);
  CHECK(e.corrected);
  for (double r : radii()) CHECK(e.u.cos_at(0, r) == doctest::Approx(-0.25 / r).epsilon(1e-15));
}

TEST_CASE("forcing needs corrected lower orders") {
  std::vector<EulerOrder> lower{limit_euler(1.0, 8), solve_euler_order(1, random_trace(3), 8)};
  EulerOrder e2 = solve_euler_order(2, FourierData{{0.0}, {0.0}}, 8);
  try {
    assemble_euler_forcing(e2, lower);
    FAIL("uncorrected order accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dependency);
  }
}
