#include <doctest.h>

#include <cmath>
#include <sstream>

#include "discflow/banded.hpp"
#include "discflow/errors.hpp"
#include "discflow/field_io.hpp"
#include "discflow/field_ops.hpp"
#include "support.hpp"

using namespace discflow;
using testing::sample_r;

TEST_CASE("theta derivative of cos theta is -sin theta exactly") {
  auto g = RadialGrid::geometric(50, 8.0);
  auto f = sample_r(g, 4, [](int k, bool s, double) { return (k == 1 && !s) ? 1.0 : 0.0; });
  auto d = differentiate(f, Derivative::Theta);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(d.b(1)[i] == -1.0);
    CHECK(d.a(1)[i] == 0.0);
  }
}

TEST_CASE("r derivative of r^-2 converges at fourth order") {
  double err[2];
  int n[2] = {200, 400};
  for (int j = 0; j < 2; ++j) {
    auto g = RadialGrid::geometric(n[j], 64.0);
    auto f = sample_r(g, 0, [](int, bool, double r) { return std::pow(r, -2.0); });
    auto d = differentiate(f, Derivative::R);
    double e = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double r = g->r()[i];
      e = std::max(e, std::abs(d.a(0)[i] + 2.0 * std::pow(r, -3.0)) / (2.0 * std::pow(r, -3.0)));
    }
    err[j] = e;
  }
  CHECK(err[1] < 1e-6);
  CHECK(err[0] / err[1] > 12.0);
}

TEST_CASE("s derivative equals r times the r derivative") {
  auto g = RadialGrid::geometric(300, 64.0);
  auto f = sample_r(g, 2, [](int k, bool, double r) { return 1.0 / r + 0.1 * k; });
  auto ds = differentiate(f, Derivative::S);
  auto dr = differentiate(f, Derivative::R);
  dr.scale_radial(g->r());
  CHECK(testing::max_coeff_diff(ds, dr) < 1e-10);
}

TEST_CASE("harmonic fields have vanishing Laplacian") {
  ThetaGrid tg(4);
  auto g = RadialGrid::geometric(800, 64.0);
  SUBCASE("r^-1 cos theta") {
    auto f = sample_r(g, 4, [](int k, bool s, double r) { return (k == 1 && !s) ? 1.0 / r : 0.0; });
    CHECK(sup_norm(laplacian(f, Coordinates::Polar), tg) < 1e-8);
  }
  SUBCASE("ln r") {
    auto f = sample_r(g, 4, [](int k, bool, double r) { return k == 0 ? std::log(r) : 0.0; });
    CHECK(sup_norm(laplacian(f, Coordinates::Polar), tg) < 1e-8);
  }
  SUBCASE("e^-s mode 1 in log-radial coordinates") {
    auto sg = RadialGrid::geometric(800, 64.0, RadialCoordinate::Log);
    auto f = sample_r(sg, 4, [](int k, bool s, double r) { return (k == 1 && s) ? 1.0 / r : 0.0; });
    CHECK(sup_norm(laplacian(f, Coordinates::LogRadial), tg) < 1e-8);
  }
}

TEST_CASE("stream function of simple flows") {
  ThetaGrid tg(4);
  auto g = RadialGrid::geometric(400, 64.0);
  SUBCASE("rotation 1/r") {
    auto u = sample_r(g, 4, [](int k, bool, double r) { return k == 0 ? 1.0 / r : 0.0; });
    FourierField v(g, 4);
    auto st = stream_from_velocity(u, v, tg);
    double e = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) e = std::max(e, std::abs(st.phi.a(0)[i] - std::log(g->r()[i])));
    CHECK(e < 1e-10);
    CHECK(sup_norm(st.vorticity, tg) < 1e-9);
  }
  SUBCASE("zero flow") {
    FourierField u(g, 4), v(g, 4);
    auto st = stream_from_velocity(u, v, tg);
    CHECK(sup_norm(st.phi, tg) == 0.0);
    CHECK(sup_norm(st.vorticity, tg) == 0.0);
  }
  SUBCASE("non-solenoidal input is rejected") {
    FourierField u(g, 4);
    auto v = sample_r(g, 4, [](int k, bool, double r) { return k == 0 ? (r - 1.0) / (r * r) : 0.0; });
    CHECK_THROWS_AS(stream_from_velocity(u, v, tg), Error);
  }
}

TEST_CASE("manufactured stream function is recovered") {
  ThetaGrid tg(6);
  auto g = RadialGrid::geometric(800, 64.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> ca(7), cb(7);
    for (int k = 0; k <= 6; ++k) {
      ca[k] = testing::uniform(-1, 1);
      cb[k] = k ? testing::uniform(-1, 1) : 0.0;
    }
    // Phi = x^2 exp(-x) (a_k cos + b_k sin), x = r - 1, clamped at r = 1.
    auto prof = [](double r) { return (r - 1) * (r - 1) * std::exp(-(r - 1)); };
    auto dprof = [](double r) { return (2 * (r - 1) - (r - 1) * (r - 1)) * std::exp(-(r - 1)); };
    auto phi = sample_r(g, 6, [&](int k, bool s, double r) { return (s ? cb[k] : ca[k]) * prof(r); });
    auto u = sample_r(g, 6, [&](int k, bool s, double r) { return (s ? cb[k] : ca[k]) * dprof(r); });
    // v = -Phi_theta / r.
    auto v = sample_r(g, 6, [&](int k, bool s, double r) {
      return (s ? ca[k] : -cb[k]) * k * prof(r) / r;
    });
    auto st = stream_from_velocity(u, v, tg, 1e-6);
    CHECK(testing::max_coeff_diff(st.phi, phi) < 1e-10);
    // Phi_theta + r v = 0.
    auto pt = differentiate(st.phi, Derivative::Theta);
    auto rv = v;
    rv.scale_radial(g->r());
    CHECK(sup_norm(pt + rv, tg) < 1e-10);
  }
}

TEST_CASE("spectral theta derivative commutes with nodal sampling") {
  const int K = 8;
  ThetaGrid tg(K);
  auto g = RadialGrid::geometric(20, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> ca(K + 1), cb(K + 1);
    for (int k = 0; k <= K; ++k) {
      ca[k] = testing::uniform(-1, 1);
      cb[k] = k ? testing::uniform(-1, 1) : 0.0;
    }
    auto f = sample_r(g, K, [&](int k, bool s, double r) { return (s ? cb[k] : ca[k]) / r; });
    auto nod = to_nodal(differentiate(f, Derivative::Theta), tg);
    double e = 0.0;
    for (int j = 0; j < tg.n_nodes(); ++j) {
      const double th = tg.node(j);
      for (std::size_t i = 0; i < g->size(); ++i) {
        double exact = 0.0;
        for (int k = 1; k <= K; ++k) exact += k * (-ca[k] * std::sin(k * th) + cb[k] * std::cos(k * th)) / g->r()[i];
        e = std::max(e, std::abs(nod[j * g->size() + i] - exact));
      }
    }
    CHECK(e < 1e-12);
  }
}

TEST_CASE("nodal round trip and dealiased products") {
  const int K = 8;
  ThetaGrid tg(K);
  auto g = RadialGrid::geometric(20, 4.0);
  auto f = sample_r(g, K, [](int k, bool s, double r) { return k <= 4 ? (s ? 0.3 : 1.0) * std::pow(r, -k) : 0.0; });
  auto back = from_nodal(to_nodal(f, tg), g, tg);
  CHECK(testing::max_coeff_diff(f, back) < 1e-13);
  // cos(3t) * cos(4t) = (cos t + cos 7t) / 2.
  auto a = sample_r(g, K, [](int k, bool s, double) { return k == 3 && !s ? 1.0 : 0.0; });
  auto b = sample_r(g, K, [](int k, bool s, double) { return k == 4 && !s ? 1.0 : 0.0; });
  auto p = multiply(a, b, tg);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(p.a(1)[i] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(p.a(7)[i] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(p.a(0)[i]) < 1e-14);
  }
  // Products above K are discarded, not aliased: cos(5t) cos(6t) -> cos t / 2.
  auto c = sample_r(g, K, [](int k, bool s, double) { return k == 5 && !s ? 1.0 : 0.0; });
  auto d = sample_r(g, K, [](int k, bool s, double) { return k == 6 && !s ? 1.0 : 0.0; });
  auto q = multiply(c, d, tg);
  for (int k = 0; k <= K; ++k) {
    const double expect = k == 1 ? 0.5 : 0.0;
    CHECK(std::abs(q.a(k)[3] - expect) < 1e-13);
  }
}

TEST_CASE("mismatched grids are rejected") {
  auto g1 = RadialGrid::geometric(20, 4.0);
  auto g2 = RadialGrid::geometric(24, 4.0);
  FourierField a(g1, 4), b(g2, 4), c(g1, 5);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a + c, Error);
  try {
    a += b;
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridMismatch);
  }
}

TEST_CASE("radial cumulative integral and tail") {
  auto g = RadialGrid::geometric(400, 64.0);
  std::vector<double> f(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) f[i] = std::pow(g->r()[i], -4.0);
  auto cum = g->cumulative_r(f);
  auto tail = g->tail_integral_r(f);
  for (std::size_t i = 0; i < g->size(); i += 37) {
    const double r = g->r()[i];
    CHECK(cum[i] == doctest::Approx((1.0 - std::pow(r, -3.0)) / 3.0).epsilon(1e-10));
    CHECK(tail[i] == doctest::Approx(std::pow(r, -3.0) / 3.0).epsilon(1e-8));
  }
}

TEST_CASE("zeta grid calculus is spectrally accurate") {
  auto z = ZetaGrid::chebyshev(160, 40.0);
  CHECK(z->nodes().front() == 0.0);
  std::vector<double> f(z->size());
  for (std::size_t i = 0; i < z->size(); ++i) f[i] = std::exp(-z->nodes()[i]);
  auto d = z->derivative(f, 1);
  auto c = z->cumulative(f);
  auto rgt = z->from_right(f);
  double e = 0.0;
  for (std::size_t i = 0; i < z->size(); ++i) {
    const double x = z->nodes()[i];
    e = std::max({e, std::abs(d[i] + f[i]), std::abs(c[i] - (1 - std::exp(-x))),
                  std::abs(rgt[i] - (std::exp(-x) - std::exp(-40.0)))});
  }
  CHECK(e < 1e-10);
}

TEST_CASE("banded solve agrees with dense LU on random systems") {
  const int n = 60, kl = 3, ku = 2;
  BandedComplex band(n, kl, ku);
  std::vector<cplx> dense(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
      cplx v(testing::uniform(-1, 1), testing::uniform(-1, 1));
      if (i == j) v += 6.0;
      band.at(i, j) = v;
      dense[i * n + j] = v;
    }
  band.factor();
  DenseComplexLU lu(n, dense);
  std::vector<cplx> rhs(n);
  for (auto& x : rhs) x = cplx(testing::uniform(-1, 1), testing::uniform(-1, 1));
  auto x1 = band.solve(rhs);
  auto x2 = lu.solve(rhs);
  double e = 0.0;
  for (int i = 0; i < n; ++i) e = std::max(e, std::abs(x1[i] - x2[i]));
  CHECK(e < 1e-12);
  CHECK(band.rcond() > 0.0);
}

TEST_CASE("doubles are written with round-trip precision") {
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(testing::uniform(-1, 1), static_cast<int>(testing::uniform(-60, 60)));
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("csv writers emit one row per node and mode") {
  ThetaGrid tg(2);
  auto g = RadialGrid::geometric(16, 2.0);
  auto f = sample_r(g, 2, [](int k, bool, double r) { return k + r; });
  std::ostringstream nod, modes;
  write_nodal_csv(nod, f, tg);
  write_modes_csv(modes, f);
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  CHECK(lines(nod.str()) == 1 + tg.n_nodes() * 16);
  CHECK(lines(modes.str()) == 1 + (2 * 2 + 1) * 16);
}
