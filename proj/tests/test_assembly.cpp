#include <doctest.h>

#include <cmath>

#include "discflow/assembly.hpp"
#include "discflow/errors.hpp"
#include "support.hpp"

using namespace discflow;

namespace {

auto theta16() {
  static auto tg = std::make_shared<const ThetaGrid>(16);
  return tg;
}

auto radial() {
  static auto g = RadialGrid::geometric(400, 64.0);
  return g;
}

Params params(double delta) {
  Params p;
  p.omega = 1.0;
  p.delta = delta;
  p.f.cos = {0.0, 1.0, 0.3};
  p.f.sin = {0.0, 0.0, -0.4};
  p.order = 2;
  return p;
}

const Hierarchy& hierarchy() {
  static const Hierarchy h = build_hierarchy(params(0.05), theta16(), LayerConfig{});
  return h;
}

double trace_error(const FourierField& f, const FourierData& target) {
  double m = 0.0;
  for (int k = 0; k <= f.n_modes(); ++k) {
    const double c = k < static_cast<int>(target.cos.size()) ? target.cos[k] : 0.0;
    const double s = k < static_cast<int>(target.sin.size()) ? target.sin[k] : 0.0;
    m = std::max(m, std::abs(f.a(k)[0] - c));
    if (k > 0) m = std::max(m, std::abs(f.b(k)[0] - s));
  }
  return m;
}

double sup_r4(const Residual& r) { return std::max(r.sup_r4_ru, r.sup_r4_rv); }

}  // namespace

TEST_CASE("cutoff profile") {
  const CutoffChi chi = build_chi();
  CHECK(chi.value(1.0) == 1.0);
  CHECK(chi.value(1.5) == 1.0);
  CHECK(chi.value(2.0) == 1.0);
  CHECK(chi.value(3.0) == 0.0);
  CHECK(chi.value(3.5) == 0.0);
  for (double r = 2.0; r <= 3.0; r += 0.05) {
    CHECK(chi.value(r) >= 0.0);
    CHECK(chi.value(r) <= 1.0);
    CHECK(chi.value(r) + chi.mirrored(r) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(chi.value(2.5) == doctest::Approx(0.5).epsilon(1e-14));
  // Jet against central differences.
  for (double r : {2.2, 2.5, 2.8}) {
    const auto j = chi.jet(r);
    const double h = 1e-4;
    for (int d = 0; d < CutoffChi::kMaxDerivative; ++d) {
      const double fd = (chi.jet(r + h)[d] - chi.jet(r - h)[d]) / (2 * h);
      CHECK(j[d + 1] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }
  // Flat ends: every derivative vanishes outside the transition.
  for (double r : {1.2, 1.99, 3.01, 10.0})
    for (int d = 1; d <= CutoffChi::kMaxDerivative; ++d) CHECK(chi.jet(r)[d] == 0.0);
}

TEST_CASE("divergence corrector inverts the theta derivative") {
  const auto g = radial();
  auto rho = [](double r) { return std::exp(-(r - 1)) / (r * r); };
  const FourierField K = testing::sample_r(g, 8, [&](int k, bool s, double r) { return k == 1 && s ? rho(r) : 0.0; });
  const FourierField h = divergence_corrector(K);
  const FourierField want = testing::sample_r(g, 8, [&](int k, bool s, double r) { return k == 1 && !s ? -rho(r) : 0.0; });
  CHECK(testing::max_coeff_diff(h, want) < 1e-15);
  CHECK(testing::max_coeff_diff(divergence_corrector(FourierField(g, 8)), FourierField(g, 8)) == 0.0);

  FourierField bad = K;
  for (auto& x : bad.a(0)) x = 1e-3;
  CHECK_THROWS_AS(divergence_corrector(bad), Error);
}

TEST_CASE("exact rotation jets have zero residual") {
  const int K = 8;
  for (double A : {1.0, 2.3}) {
    PowerField u(K), v(K), p(K);
    u.add_cos(0, 1, A);
    p.add_cos(0, 2, -0.5 * A * A);
    const auto g = radial();
    const ThetaGrid tg(K);
    for (double eps : {1.0, 0.1}) {
      const Residual r = momentum_residual(sample_jet(u, g, 3), sample_jet(v, g, 3), sample_jet(p, g, 3), eps, tg);
      CHECK(sup_norm(r.ru.value(), tg) < 1e-9);
      CHECK(sup_norm(r.rv.value(), tg) < 1e-9);
    }
  }
}

TEST_CASE("assembled field is solenoidal and meets the wall data") {
  const Hierarchy& h = hierarchy();
  for (double eps : {0.2, 0.1, 0.05}) {
    const ApproxSolution a = assemble(h, eps, radial());
    CHECK(sup_norm(divergence(a), *theta16()) < 1e-9);
    CHECK(a.divergence_after < 1e-9);
    CHECK(std::abs(a.corrector_mean) < 1e-9);
    FourierData wall = h.params.f;
    for (auto& c : wall.cos) c *= h.params.delta;
    for (auto& c : wall.sin) c *= h.params.delta;
    wall.cos[0] += h.params.omega;
    CHECK(trace_error(a.u.value(), wall) < 1e-10);
    CHECK(trace_error(a.v.value(), FourierData{}) < 1e-10);
  }
}

TEST_CASE("vorticity residual vanishes beyond the cutoff") {
  const ApproxSolution a = assemble(hierarchy(), 0.1, radial());
  const Residual r = residual(a, *theta16());
  CHECK(r.support_violation < 1e-9);
}

TEST_CASE("unperturbed disc assembles to pure rotation") {
  const Hierarchy h = build_hierarchy(params(0.0), theta16(), LayerConfig{});
  const ApproxSolution a = assemble(h, 0.1, radial());
  const Residual r = residual(a, *theta16());
  CHECK(sup_r4(r) < 1e-9);
  CHECK(sup_norm(a.v.value(), *theta16()) == 0.0);
}

TEST_CASE("residual falls faster than eps^(N+0.6)") {
  const Hierarchy& h = hierarchy();
  const double r1 = sup_r4(residual(assemble(h, 0.1, radial()), *theta16()));
  const double r2 = sup_r4(residual(assemble(h, 0.05, radial()), *theta16()));
  CHECK(std::log2(r1 / r2) > h.order() + 0.6);
}

TEST_CASE("assembly rejects a nonpositive eps") {
  CHECK_THROWS_AS(assemble(hierarchy(), 0.0, radial()), Error);
  CHECK_THROWS_AS(assemble(hierarchy(), -0.1, radial()), Error);
}
