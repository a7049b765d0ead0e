#include "discflow/batchelor_wood.hpp"

#include <cmath>
#include <numbers>

#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

double FourierData::eval(double theta) const {
  double v = 0.0;
  for (std::size_t k = 0; k < cos.size(); ++k) v += cos[k] * std::cos(k * theta);
  for (std::size_t k = 1; k < sin.size(); ++k) v += sin[k] * std::sin(k * theta);
  return v;
}

double FourierData::mean_square() const {
  double s = 0.0;
  for (std::size_t k = 0; k < cos.size(); ++k) s += (k == 0 ? 1.0 : 0.5) * cos[k] * cos[k];
  for (std::size_t k = 1; k < sin.size(); ++k) s += 0.5 * sin[k] * sin[k];
  return s;
}

int FourierData::max_mode() const {
  int m = 0;
  for (std::size_t k = 0; k < cos.size(); ++k)
    if (cos[k] != 0.0) m = std::max(m, static_cast<int>(k));
  for (std::size_t k = 0; k < sin.size(); ++k)
    if (sin[k] != 0.0) m = std::max(m, static_cast<int>(k));
  return m;
}

void Params::validate() const {
  if (!(omega > 0.0)) throw Error(ErrorKind::Config, "omega must be positive");
  if (!(delta >= 0.0)) throw Error(ErrorKind::Config, "delta must be nonnegative");
  if (lambda) {
    if (!(*lambda > 0.0)) throw Error(ErrorKind::Config, "lambda must be positive");
  } else if (!(epsilon > 0.0)) {
    throw Error(ErrorKind::Config, "epsilon must be positive");
  }
  if (order < 0) throw Error(ErrorKind::Config, "order must be nonnegative");
  if (!f.sin.empty() && f.sin[0] != 0.0) throw Error(ErrorKind::Config, "f_sin[0] must be zero");
  for (double c : f.cos)
    if (!std::isfinite(c)) throw Error(ErrorKind::Config, "f_cos entries must be finite");
  for (double c : f.sin)
    if (!std::isfinite(c)) throw Error(ErrorKind::Config, "f_sin entries must be finite");
}

double Params::eps() const { return lambda ? 1.0 / std::sqrt(*lambda) : epsilon; }

BWResult compute_tilde_omega(const Params& p) {
  BWResult r;
  r.omega_sq = p.omega * p.omega;
  // (1/pi) int f = 2 mean(f); (1/2pi) int f^2 = mean(f^2).
  r.cross = 2.0 * p.omega * p.delta * p.f.mean();
  r.square = p.delta * p.delta * p.f.mean_square();
  const double radicand = r.omega_sq + r.cross + r.square;
  if (!(radicand > 0.0))
    throw Error(ErrorKind::InvalidRegime, "mean of (omega + delta f)^2 is not positive", radicand);
  r.tilde_omega = std::sqrt(radicand);
  return r;
}

FourierData layer_boundary_data(const Params& p, double tilde_omega) {
  FourierData g;
  g.cos.assign(std::max<std::size_t>(p.f.cos.size(), 1), 0.0);
  for (std::size_t k = 0; k < p.f.cos.size(); ++k) g.cos[k] = p.delta * p.f.cos[k];
  g.cos[0] += p.omega - tilde_omega;
  g.sin.assign(p.f.sin.size(), 0.0);
  for (std::size_t k = 0; k < p.f.sin.size(); ++k) g.sin[k] = p.delta * p.f.sin[k];
  return g;
}

FlowFields rescale_lambda(const FlowFields& unit, double lambda) {
  FlowFields out = unit;
  out.u *= lambda;
  out.v *= lambda;
  out.p *= lambda * lambda;
  return out;
}

MomentumResidual momentum_residual(const FlowFields& s, double nu, const ThetaGrid& tg) {
  const RadialGrid& g = radial_grid_of(s.u);
  const auto& r = g.r();
  const std::size_t n = g.size();
  std::vector<double> inv_r(n);
  for (std::size_t i = 0; i < n; ++i) inv_r[i] = 1.0 / r[i];

  const FourierField u_t = differentiate(s.u, Derivative::Theta);
  const FourierField v_t = differentiate(s.v, Derivative::Theta);
  const FourierField u_s = differentiate(s.u, Derivative::S);
  const FourierField v_s = differentiate(s.v, Derivative::S);
  const FourierField p_t = differentiate(s.p, Derivative::Theta);
  const FourierField p_s = differentiate(s.p, Derivative::S);
  // r u_rr + u_r + u_tt / r = (u_ss + u_tt) / r.
  FourierField lap_u = differentiate(s.u, Derivative::S, 2) + differentiate(s.u, Derivative::Theta, 2);
  FourierField lap_v = differentiate(s.v, Derivative::S, 2) + differentiate(s.v, Derivative::Theta, 2);

  MomentumResidual res;
  // r v u_r = v u_s, r p_r = p_s.
  res.ru = multiply(s.u, u_t, tg) + multiply(s.v, u_s, tg) + multiply(s.u, s.v, tg) + p_t;
  res.rv = multiply(s.u, v_t, tg) + multiply(s.v, v_s, tg) - multiply(s.u, s.u, tg) + p_s;
  FourierField visc_u = lap_u + 2.0 * v_t - s.u;
  FourierField visc_v = lap_v - 2.0 * u_t - s.v;
  visc_u.scale_radial(inv_r);
  visc_v.scale_radial(inv_r);
  res.ru -= nu * visc_u;
  res.rv -= nu * visc_v;
  return res;
}

}  // namespace discflow
