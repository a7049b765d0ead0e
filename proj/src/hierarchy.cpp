#include "discflow/hierarchy.hpp"

#include <cmath>

#include "discflow/errors.hpp"

namespace discflow {

namespace {

FourierData wall_values(const FourierField& f) {
  FourierData d;
  d.cos.resize(f.n_modes() + 1);
  d.sin.resize(f.n_modes() + 1);
  for (int k = 0; k <= f.n_modes(); ++k) {
    d.cos[k] = f.a(k)[0];
    d.sin[k] = k == 0 ? 0.0 : f.b(k)[0];
  }
  return d;
}

std::vector<double> probe_radii() {
  std::vector<double> r;
  for (int i = 0; i <= 60; ++i) r.push_back(std::pow(64.0, i / 60.0));
  return r;
}

}  // namespace

Hierarchy build_hierarchy(const Params& p, std::shared_ptr<const ThetaGrid> theta, const LayerConfig& cfg) {
  p.validate();
  if (std::abs(p.delta) > cfg.delta_max)
    throw Error(ErrorKind::InvalidRegime, "delta exceeds the configured delta_max", p.delta);
  Hierarchy h;
  h.params = p;
  h.bw = compute_tilde_omega(p);
  h.wall_data = layer_boundary_data(p, h.bw.tilde_omega);
  h.ctx = make_layer_context(cfg, theta, h.bw.tilde_omega);
  const int K = h.ctx.n_modes;
  const int N = p.order;
  const ThetaGrid& tg = *h.ctx.theta;
  const auto radii = probe_radii();

  h.euler.push_back(limit_euler(h.bw.tilde_omega, K));
  h.compatibility.push_back(0.0);
  h.layers.push_back(solve_leading_layer(h.wall_data, h.ctx, cfg));
  h.divergence.push_back(layer_divergence_residual(h.layers[0], h.ctx.zeros(), tg));

  for (int k = 1; k <= N + 1; ++k) {
    const FourierField v_prev = h.layers[k - 1].v_p_next;
    EulerOrder e = solve_euler_order(k, wall_values(v_prev), K);
    assemble_euler_forcing(e, h.euler);
    h.compatibility.push_back(check_compatibility(e.f_e, radii).max_mean);
    h.euler.push_back(std::move(e));
    EulerOrder& ek = h.euler.back();

    if (k <= N) {
      const LayerForcing lf = assemble_forcing(k, h.euler, h.layers, h.ctx);
      BoundaryLayerOrder lk =
          solve_higher_layer(k, lf.f, ek.u, v_prev, h.layers[0].u_p, h.ctx, cfg);
      apply_corrector(ek, lk.A);
      h.layers.push_back(std::move(lk));
      const LayerForcing lg = assemble_forcing(k, h.euler, h.layers, h.ctx);
      h.layers.back().p_p_next = layer_pressure(lg.g);
    } else {
      apply_corrector(ek, 0.0);
      h.layers.push_back(lift_patch(k, ek.u, v_prev, h.ctx));
    }
    euler_pressure(ek, h.euler[0]);
    h.divergence.push_back(layer_divergence_residual(h.layers.back(), v_prev, tg));
  }
  return h;
}

}  // namespace discflow
