#pragma once

#include <memory>
#include <string>
#include <vector>

#include "discflow/batchelor_wood.hpp"
#include "discflow/euler_hierarchy.hpp"
#include "discflow/fourier_field.hpp"
#include "discflow/grids.hpp"
#include "discflow/series.hpp"

namespace discflow {

// Profile kappa with kappa(0) = 1 and zero integral over the half-line, used
// to lift the wall data of the higher layers.
enum class LiftKind { Gaussian, CompactBump };

class Lift {
 public:
  explicit Lift(LiftKind kind = LiftKind::Gaussian);
  LiftKind kind() const { return kind_; }
  double value(double z) const;
  double d1(double z) const;
  double d2(double z) const;
  // int_0^z kappa.
  double integral(double z) const;
  std::string name() const;

 private:
  LiftKind kind_;
  double c_ = 0.0;  // slope of the linear factor
  std::vector<double> cum_z_, cum_v_;
};

LiftKind parse_lift(const std::string& name);

struct LayerConfig {
  int n_zeta = 160;
  double z_max = 40.0;
  double tol = 1e-13;
  int max_iter = 400;
  double delta_max = 0.3;
  LiftKind lift = LiftKind::Gaussian;
};

struct LayerContext {
  std::shared_ptr<const ZetaGrid> zeta;
  std::shared_ptr<const ThetaGrid> theta;
  int n_modes = 16;
  double tilde_omega = 1.0;
  Lift lift;

  std::shared_ptr<const Grid1D> grid() const { return zeta; }
  FourierField zeros() const { return FourierField(zeta, n_modes); }
};

LayerContext make_layer_context(const LayerConfig& cfg, std::shared_ptr<const ThetaGrid> theta,
                                double tilde_omega);

struct SolveTelemetry {
  int iterations = 0;
  double last_update = 0.0;
  double residual = 0.0;
  std::vector<double> updates;
};

// One order of the inner expansion.  u_p is the shifted profile (A_k removed),
// w = int_zeta^infinity d_theta u_p, so that v_p_next = w - zeta v_p^{(k)}.
struct BoundaryLayerOrder {
  int k = 0;
  FourierField u_p;
  FourierField v_p_next;
  FourierField p_p_next;
  FourierField w;
  double A = 0.0;
  double A_check = 0.0;
  bool A_consistent = true;
  SolveTelemetry telemetry;
};

struct LayerForcing {
  FourierField f;  // theta momentum
  FourierField g;  // radial momentum
};

// Nonlinear leading layer with u_p(theta, 0) = g(theta), decay at Z.
BoundaryLayerOrder solve_leading_layer(const FourierData& g, const LayerContext& ctx,
                                       const LayerConfig& cfg);

// Linearized layer operator around the leading profile u0:
// (w + u0) d_theta u + u d_theta u0 + vbar d_zeta u - (int_0^zeta d_theta u) d_zeta u0 - d_zeta^2 u,
// with vbar = -int_0^zeta d_theta u0.
FourierField linearized_layer_operator(const FourierField& u, const FourierField& u0,
                                       const LayerContext& ctx);

// Expansion inputs with every known order up to layer order k.  Null/empty
// entries beyond the supplied vectors are zero.
ExpansionInputs expansion_inputs(const std::vector<EulerOrder>& euler,
                                 const std::vector<BoundaryLayerOrder>& layers);

// f_{p,k}: minus the eps^k coefficient of the layer theta momentum with the
// order-k unknowns u_p^{(k)}, v_p^{(k+1)}, v_e^{(k+1)} set to zero.
// g_{p,k}: the eps^k coefficient of the radial momentum without p_p^{(k+1)};
// computed only when layers[k] is present.
LayerForcing assemble_forcing(int k, const std::vector<EulerOrder>& euler,
                              const std::vector<BoundaryLayerOrder>& layers, const LayerContext& ctx);

// Solve the order-k layer for the lifted unknown, un-lift, extract A_k and
// shift.  euler_trace = u_e^{(k)}(theta, 1) before correction; v_prev = v_p^{(k)}.
BoundaryLayerOrder solve_higher_layer(int k, const FourierField& forcing, const PowerField& euler_u,
                                      const FourierField& v_prev, const FourierField& u0,
                                      const LayerContext& ctx, const LayerConfig& cfg);

// p with -d_zeta p = g and p(infinity) = 0.
FourierField layer_pressure(const FourierField& g);

// int_zeta^Z d_theta u.
FourierField layer_flux(const FourierField& u);

// Top order of the inner expansion: the patch -u_e^{(k)}(theta,1) kappa(zeta).
BoundaryLayerOrder lift_patch(int k, const PowerField& euler_u, const FourierField& v_prev,
                              const LayerContext& ctx);

// Residual of the divergence relation d_theta u_p^{(k)} + d_zeta v_p^{(k+1)} + d_zeta(zeta v_p^{(k)}).
double layer_divergence_residual(const BoundaryLayerOrder& order, const FourierField& v_prev,
                                 const ThetaGrid& tg);

// Largest |int_0^{2pi} f dtheta| over the zeta nodes.
double max_theta_mean(const FourierField& f);

}  // namespace discflow
