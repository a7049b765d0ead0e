#include <doctest.h>

#include <cmath>
#include <complex>

#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"
#include "discflow/hierarchy.hpp"
#include "discflow/prandtl.hpp"
#include "support.hpp"

using namespace discflow;

namespace {

std::shared_ptr<const ThetaGrid> theta16() {
  static auto tg = std::make_shared<const ThetaGrid>(16);
  return tg;
}

Params params(double delta, FourierData f) {
  Params p;
  p.omega = 1.0;
  p.delta = delta;
  p.f = std::move(f);
  p.order = 2;
  return p;
}

BoundaryLayerOrder leading(const Params& p, LayerContext& ctx, const LayerConfig& cfg = {}) {
  const double tw = compute_tilde_omega(p).tilde_omega;
  ctx = make_layer_context(cfg, theta16(), tw);
  return solve_leading_layer(layer_boundary_data(p, tw), ctx, cfg);
}

// Field on the zeta grid constant in zeta, equal to the wall value of an outer field.
FourierField trace_of(const PowerField& f, const LayerContext& ctx) {
  FourierField out = ctx.zeros();
  for (int k = 0; k <= ctx.n_modes; ++k)
    for (std::size_t i = 0; i < out.n_points(); ++i) {
      out.a(k)[i] = f.cos_at(k, 1.0);
      if (k > 0) out.b(k)[i] = f.sin_at(k, 1.0);
    }
  return out;
}

FourierField dz(const FourierField& f, int m = 1) { return differentiate(f, Derivative::Native, m); }
FourierField dt(const FourierField& f) { return differentiate(f, Derivative::Theta); }
FourierField times_zeta(FourierField f) {
  f.scale_radial(f.grid().nodes());
  return f;
}

}  // namespace

TEST_CASE("zero wall data gives the zero layer") {
  // omega + delta f is constant, so it equals the averaged rate.
  Params p = params(0.2, FourierData{{1.0}, {}});
  LayerContext ctx;
  const BoundaryLayerOrder l = leading(p, ctx);
  CHECK(sup_norm(l.u_p, *ctx.theta) < 1e-15);
  CHECK(sup_norm(l.v_p_next, *ctx.theta) < 1e-15);
}

TEST_CASE("small data: mode one follows the linear Stokes-layer profile") {
  Params p = params(1e-3, FourierData{{0.0, 1.0}, {}});
  LayerContext ctx;
  const BoundaryLayerOrder l = leading(p, ctx);
  const auto z = l.u_p.mode(1);
  const std::complex<double> lam = std::sqrt(std::complex<double>(0.0, ctx.tilde_omega));
  const auto& zeta = ctx.zeta->nodes();
  double err = 0.0;
  for (std::size_t i = 0; i < zeta.size(); ++i) err = std::max(err, std::abs(z[i] - p.delta * std::exp(-lam * zeta[i])));
  CHECK(err / p.delta < 1e-2);

  // Fitted decay rate over zeta in [2, 10].
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    if (zeta[i] < 2.0 || zeta[i] > 10.0) continue;
    const double y = std::log(std::abs(z[i]));
    sx += zeta[i];
    sy += y;
    sxx += zeta[i] * zeta[i];
    sxy += zeta[i] * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(-slope / std::sqrt(ctx.tilde_omega / 2) - 1.0) < 0.1);
}

TEST_CASE("leading layer is linear in delta") {
  const FourierData f{{0.0, 1.0, 0.4}, {0.0, 0.0, 0.7}};
  double sup[3];
  int j = 0;
  for (double d : {0.08, 0.04, 0.02}) {
    LayerContext ctx;
    const BoundaryLayerOrder l = leading(params(d, f), ctx);
    sup[j++] = sup_norm(l.u_p, *ctx.theta);
  }
  CHECK(std::abs(sup[0] / sup[1] / 2.0 - 1.0) < 0.1);
  CHECK(std::abs(sup[1] / sup[2] / 2.0 - 1.0) < 0.1);
}

TEST_CASE("normal velocity of every order has zero theta mean") {
  for (int t = 0; t < 4; ++t) {
    FourierData f;
    f.cos = {testing::uniform(-1, 1), testing::uniform(-1, 1), testing::uniform(-1, 1)};
    f.sin = {0.0, testing::uniform(-1, 1), testing::uniform(-1, 1)};
    const Hierarchy h = build_hierarchy(params(testing::uniform(0.01, 0.1), f), theta16(), LayerConfig{});
    for (const auto& l : h.layers) CHECK(max_theta_mean(l.v_p_next) < 1e-10);
    for (double d : h.divergence) CHECK(d < 1e-9);
  }
}

TEST_CASE("far-field constant obeys the linear bound in delta") {
  // A_1 is a zero-mode quantity fed by products of nonzero modes; the bound
  // |A_1| <= C delta holds with room to spare and |A_1| / delta falls with delta.
  const FourierData f{{0.2, 1.0, 0.5}, {0.0, 0.3}};
  double prev = INFINITY;
  for (double d : {0.08, 0.04, 0.02}) {
    const Hierarchy h = build_hierarchy(params(d, f), theta16(), LayerConfig{});
    const double ratio = std::abs(h.layers[1].A) / d;
    CHECK(ratio < prev);
    CHECK(ratio < 1e-2);
    CHECK(h.layers[1].A_consistent);
    prev = ratio;
  }
}

TEST_CASE("collector reproduces the displayed first-order forcings") {
  const Params p = params(0.05, FourierData{{0.0, 1.0}, {0.0, 0.0, 0.5}});
  const Hierarchy h = build_hierarchy(p, theta16(), LayerConfig{});
  const LayerContext& ctx = h.ctx;
  const ThetaGrid& tg = *ctx.theta;
  const double tw = h.tilde_omega();
  const double U1 = tw, dU1 = -tw;  // base flow tw / r at the wall

  const FourierField& u0 = h.layers[0].u_p;
  const FourierField& v1 = h.layers[0].v_p_next;
  const FourierField& p1 = h.layers[0].p_p_next;
  const FourierField& u1 = h.layers[1].u_p;
  const FourierField ue1 = trace_of(h.euler[1].u, ctx);
  const FourierField ve1 = trace_of(h.euler[1].v, ctx);
  const FourierField dr_ve1 = trace_of(h.euler[1].v.d_r(), ctx);
  const FourierField dt_ue1 = trace_of(h.euler[1].u.d_theta(), ctx);
  auto mul = [&](const FourierField& a, const FourierField& b) { return multiply(a, b, tg); };

  SUBCASE("theta momentum") {
    // Display, with the theta derivative of the first layer pressure added.
    FourierField f = times_zeta(dz(u0, 2)) + dz(u0);
    f -= mul(u0, dt_ue1 + ve1 + v1);
    f -= mul(ue1, dt(u0));
    f -= dU1 * times_zeta(dt(u0));
    f -= times_zeta(mul(dr_ve1 + ve1 + v1, dz(u0)));
    f -= (U1 + dU1) * v1;
    f -= dt(p1);
    const FourierField collected = assemble_forcing(1, h.euler, h.layers, ctx).f;
    CHECK(sup_norm(f, tg) > 1e-4);
    CHECK(sup_norm(collected - f, tg) < 1e-12);
  }

  SUBCASE("radial momentum") {
    const FourierField dt_ve1 = trace_of(h.euler[1].v.d_theta(), ctx);
    FourierField w = ctx.zeros();
    for (auto& x : w.a(0)) x = tw;
    FourierField g = mul(u0, dt_ve1) + mul(w + u0, dt(v1)) + mul(ve1 + v1, dz(v1)) - dz(v1, 2);
    g -= 2.0 * mul(w + u0, u1);
    g -= (2.0 * dU1) * times_zeta(u0);
    g -= 2.0 * mul(u0, ue1);
    g += times_zeta(dz(p1));
    const FourierField collected = assemble_forcing(1, h.euler, h.layers, ctx).g;
    CHECK(sup_norm(g, tg) > 1e-4);
    CHECK(sup_norm(collected - g, tg) < 1e-12);
  }
}

TEST_CASE("zero forcing and zero traces give the zero higher layer") {
  const Params p = params(0.05, FourierData{{0.0, 1.0}, {}});
  LayerContext ctx;
  const BoundaryLayerOrder l0 = leading(p, ctx);
  const BoundaryLayerOrder l = solve_higher_layer(1, ctx.zeros(), PowerField(16), ctx.zeros(), l0.u_p, ctx, {});
  CHECK(sup_norm(l.u_p, *ctx.theta) == 0.0);
  CHECK(l.A == 0.0);
}

TEST_CASE("manufactured higher layer is recovered") {
  const Params p = params(0.05, FourierData{{0.0, 1.0}, {0.0, 0.0, 0.3}});
  LayerContext ctx;
  const BoundaryLayerOrder l0 = leading(p, ctx);
  const ThetaGrid& tg = *ctx.theta;
  // Outer trace t(theta) = 0.02 cos theta - 0.01 sin 2 theta.
  PowerField ue(16);
  ue.add_cos(1, 2, 0.02);
  ue.add_sin(2, 3, -0.01);
  const double A = 3e-3;
  const auto& z = ctx.zeta->nodes();
  FourierField ustar = ctx.zeros();
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double e = std::exp(-z[i]), g = std::exp(-0.5 * z[i] * z[i]);
    ustar.a(0)[i] = A * (1.0 - e) + 1e-3 * z[i] * e;
    ustar.a(1)[i] = -0.02 * g + 0.004 * z[i] * e;
    ustar.b(2)[i] = 0.01 * g;
    ustar.a(3)[i] = 0.002 * z[i] * z[i] * e;
  }
  const FourierField& vprev = l0.v_p_next;
  const FourierField forcing =
      linearized_layer_operator(ustar, l0.u_p, ctx) - multiply(times_zeta(vprev), dz(l0.u_p), tg);
  const BoundaryLayerOrder l = solve_higher_layer(1, forcing, ue, vprev, l0.u_p, ctx, {});
  FourierField rec = l.u_p;
  for (auto& x : rec.a(0)) x += l.A;
  CHECK(testing::max_coeff_diff(rec, ustar) < 1e-8);
  CHECK(l.A == doctest::Approx(A).epsilon(1e-6));
  CHECK(l.A_consistent);
}

TEST_CASE("layer pressure integrates from infinity") {
  LayerContext ctx = make_layer_context({}, theta16(), 1.0);
  const auto& z = ctx.zeta->nodes();
  CHECK(sup_norm(layer_pressure(ctx.zeros()), *ctx.theta) == 0.0);

  FourierField g = ctx.zeros();
  for (std::size_t i = 0; i < z.size(); ++i) g.a(0)[i] = std::exp(-z[i]);
  const FourierField pr = layer_pressure(g);
  double e = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) e = std::max(e, std::abs(pr.a(0)[i] - std::exp(-z[i])));
  CHECK(e < 1e-12);

  for (int t = 0; t < 10; ++t) {
    FourierField r = ctx.zeros();
    std::vector<double> c(6);
    for (auto& x : c) x = testing::uniform(-1, 1);
    for (std::size_t i = 0; i < z.size(); ++i) {
      r.a(0)[i] = c[0] * std::exp(-c[1] * c[1] * z[i] - 0.3 * z[i]);
      r.a(2)[i] = c[2] * z[i] * std::exp(-0.5 * z[i]);
      r.b(3)[i] = c[3] * std::exp(-0.1 * (z[i] - 3) * (z[i] - 3)) * std::exp(-0.2 * z[i]);
    }
    const FourierField q = layer_pressure(r);
    CHECK(sup_norm(dz(q) + r, *ctx.theta) < 1e-10);
  }
}

TEST_CASE("lift profiles start at one and carry no net flux") {
  for (LiftKind kind : {LiftKind::Gaussian, LiftKind::CompactBump}) {
    const Lift k(kind);
    CHECK(k.value(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(k.integral(40.0)) < 1e-10);
    for (double z : {0.3, 1.1, 2.7}) {
      const double h = 1e-5;
      CHECK(k.d1(z) == doctest::Approx((k.value(z + h) - k.value(z - h)) / (2 * h)).epsilon(1e-6));
      CHECK(k.d2(z) == doctest::Approx((k.d1(z + h) - k.d1(z - h)) / (2 * h)).epsilon(1e-6));
    }
    CHECK(parse_lift(k.name()) == kind);
  }
  CHECK_THROWS_AS(parse_lift("triangle"), Error);
}
