#include <algorithm>
#include <cmath>

#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"
#include "discflow/layer_solver.hpp"
#include "discflow/prandtl.hpp"

namespace discflow {

namespace {

std::vector<double> sample(const LayerContext& ctx, double (Lift::*fn)(double) const) {
  const auto& z = ctx.zeta->nodes();
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = (ctx.lift.*fn)(z[i]);
  return out;
}

FourierField lifted_trace(const PowerField& euler_u, const LayerContext& ctx) {
  FourierField b = wall_trace(euler_u, ctx.zeta);
  b.scale_radial(sample(ctx, &Lift::value));
  return b;
}

}  // namespace

BoundaryLayerOrder solve_higher_layer(int k, const FourierField& forcing, const PowerField& euler_u,
                                      const FourierField& v_prev, const FourierField& u0,
                                      const LayerContext& ctx, const LayerConfig& cfg) {
  const ThetaGrid& tg = *ctx.theta;
  const FourierField bk = lifted_trace(euler_u, ctx);
  const FourierField u0z = differentiate(u0, Derivative::Native);
  FourierField zv = v_prev;
  zv.scale_radial(ctx.zeta->nodes());
  const FourierField rhs0 = forcing + multiply(zv, u0z, tg);
  // u_p = U - b kappa with U(0) = 0.
  const FourierField F = rhs0 + linearized_layer_operator(bk, u0, ctx);

  auto split = [&](const FourierField& U) {
    return linearized_layer_operator(U, u0, ctx) - ctx.tilde_omega * differentiate(U, Derivative::Theta) +
           differentiate(U, Derivative::Native, 2);
  };

  ModeSolver solver(ctx, FarCondition::Neumann);
  BoundaryLayerOrder out;
  out.k = k;
  FourierField U = solver.solve(F, nullptr);
  int growth = 0;
  double prev = INFINITY;
  for (int it = 1;; ++it) {
    FourierField next = solver.solve(F - split(U), nullptr);
    const double upd = relative_change(next, U);
    U = std::move(next);
    out.telemetry.updates.push_back(upd);
    out.telemetry.iterations = it;
    out.telemetry.last_update = upd;
    if (upd < cfg.tol || U.max_coefficient() == 0.0) break;
    growth = upd > prev ? growth + 1 : 0;
    prev = upd;
    if (growth >= 3 || it >= cfg.max_iter || !std::isfinite(upd))
      throw Error(ErrorKind::Nonconvergence, "higher layer Picard iteration failed to converge", upd);
  }

  FourierField up = U - bk;
  out.telemetry.residual =
      sup_norm(interior_residual_field(linearized_layer_operator(up, u0, ctx) - rhs0), tg);

  // Limit constant: far-field average, cross-checked by U_0(Z) = int zeta G_0.
  const auto& z = ctx.zeta->nodes();
  const double Z = ctx.zeta->z_max();
  double acc = 0.0;
  int cnt = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] >= 0.9 * Z) {
      acc += up.a(0)[i];
      ++cnt;
    }
  out.A = acc / cnt;
  const FourierField G = F - split(U);
  std::vector<double> zg(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) zg[i] = z[i] * G.a(0)[i];
  out.A_check = ctx.zeta->integrate(zg);
  out.A_consistent = std::abs(out.A - out.A_check) <= 1e-6;

  for (auto& x : up.a(0)) x -= out.A;
  out.u_p = std::move(up);
  out.w = layer_flux(out.u_p);
  out.v_p_next = out.w - zv;
  return out;
}

BoundaryLayerOrder lift_patch(int k, const PowerField& euler_u, const FourierField& v_prev,
                              const LayerContext& ctx) {
  BoundaryLayerOrder out;
  out.k = k;
  out.u_p = -1.0 * lifted_trace(euler_u, ctx);
  FourierField bt = wall_trace(euler_u.d_theta(), ctx.zeta);
  bt.scale_radial(sample(ctx, &Lift::integral));
  out.w = bt;
  FourierField zv = v_prev;
  zv.scale_radial(ctx.zeta->nodes());
  out.v_p_next = out.w - zv;
  return out;
}

double layer_divergence_residual(const BoundaryLayerOrder& order, const FourierField& v_prev,
                                 const ThetaGrid& tg) {
  FourierField zv = v_prev;
  zv.scale_radial(order.u_p.grid().nodes());
  const FourierField div = differentiate(order.u_p, Derivative::Theta) +
                           differentiate(order.v_p_next, Derivative::Native) +
                           differentiate(zv, Derivative::Native);
  return sup_norm(div, tg);
}

}  // namespace discflow
