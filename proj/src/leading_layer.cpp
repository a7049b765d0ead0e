#include <algorithm>
#include <cmath>
#include <numbers>

#include "discflow/banded.hpp"
#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"
#include "discflow/layer_solver.hpp"
#include "discflow/prandtl.hpp"

namespace discflow {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

double bump(double z) {
  if (z >= 2.0) return 0.0;
  const double q = 1.0 - 0.25 * z * z;
  return std::exp(1.0 - 1.0 / q);
}

// Composite 5-point Gauss-Legendre on [a, b].
template <class F>
double gauss_integral(F f, double a, double b, int panels) {
  static const double r = std::sqrt(10.0 / 7.0);
  static const double x[5] = {0.0, std::sqrt(5.0 - 2.0 * r) / 3.0, -std::sqrt(5.0 - 2.0 * r) / 3.0,
                              std::sqrt(5.0 + 2.0 * r) / 3.0, -std::sqrt(5.0 + 2.0 * r) / 3.0};
  static const double s70 = std::sqrt(70.0);
  static const double w[5] = {128.0 / 225.0, (322.0 + 13.0 * s70) / 900.0, (322.0 + 13.0 * s70) / 900.0,
                              (322.0 - 13.0 * s70) / 900.0, (322.0 - 13.0 * s70) / 900.0};
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int q = 0; q < 5; ++q) acc += w[q] * f(mid + 0.5 * h * x[q]);
  }
  return 0.5 * h * acc;
}

}  // namespace

Lift::Lift(LiftKind kind) : kind_(kind) {
  if (kind_ == LiftKind::CompactBump) {
    const double i0 = gauss_integral(bump, 0.0, 2.0, 400);
    const double i1 = gauss_integral([](double z) { return z * bump(z); }, 0.0, 2.0, 400);
    c_ = -i0 / i1;
  } else {
    c_ = -kSqrtPi;
  }
}

double Lift::value(double z) const {
  if (kind_ == LiftKind::Gaussian) return (1.0 + c_ * z) * std::exp(-z * z);
  return (1.0 + c_ * z) * bump(z);
}

double Lift::d1(double z) const {
  if (kind_ == LiftKind::Gaussian) {
    const double a = -c_;
    return std::exp(-z * z) * (-a - 2.0 * z + 2.0 * a * z * z);
  }
  if (z >= 2.0) return 0.0;
  const double q = 1.0 - 0.25 * z * z;
  const double B = bump(z);
  const double B1 = B * (-z / (2.0 * q * q));
  return c_ * B + (1.0 + c_ * z) * B1;
}

double Lift::d2(double z) const {
  if (kind_ == LiftKind::Gaussian) {
    const double a = -c_;
    return std::exp(-z * z) * (-2.0 + 6.0 * a * z + 4.0 * z * z - 4.0 * a * z * z * z);
  }
  if (z >= 2.0) return 0.0;
  const double q = 1.0 - 0.25 * z * z;
  const double B = bump(z);
  const double B1 = B * (-z / (2.0 * q * q));
  const double B2 = B * (z * z / (4.0 * std::pow(q, 4)) - 1.0 / (2.0 * q * q) - z * z / (2.0 * q * q * q));
  return 2.0 * c_ * B1 + (1.0 + c_ * z) * B2;
}

double Lift::integral(double z) const {
  if (kind_ == LiftKind::Gaussian) {
    const double a = -c_;
    return 0.5 * kSqrtPi * std::erf(z) - 0.5 * a * (1.0 - std::exp(-z * z));
  }
  const double top = std::min(z, 2.0);
  if (top <= 0.0) return 0.0;
  return gauss_integral([this](double t) { return value(t); }, 0.0, top, 200);
}

std::string Lift::name() const { return kind_ == LiftKind::Gaussian ? "gaussian" : "compact_bump"; }

LiftKind parse_lift(const std::string& name) {
  if (name == "gaussian") return LiftKind::Gaussian;
  if (name == "compact_bump") return LiftKind::CompactBump;
  throw Error(ErrorKind::Config, "unknown lift '" + name + "' (expected gaussian or compact_bump)");
}

LayerContext make_layer_context(const LayerConfig& cfg, std::shared_ptr<const ThetaGrid> theta,
                                double tilde_omega) {
  if (cfg.n_zeta < 16) throw Error(ErrorKind::Config, "n_zeta must be at least 16");
  if (!(cfg.z_max > 0)) throw Error(ErrorKind::Config, "z_max must be positive");
  LayerContext ctx;
  ctx.zeta = ZetaGrid::chebyshev(cfg.n_zeta, cfg.z_max);
  ctx.theta = std::move(theta);
  ctx.n_modes = ctx.theta->n_modes();
  ctx.tilde_omega = tilde_omega;
  ctx.lift = Lift(cfg.lift);
  return ctx;
}

ModeSolver::ModeSolver(const LayerContext& ctx, FarCondition far) : ctx_(ctx), far_(far) {
  const auto& z = *ctx.zeta;
  const int n = static_cast<int>(z.size());
  const auto& d1 = z.d1();
  const auto& d2 = z.d2();
  lu_.reserve(ctx.n_modes + 1);
  for (int k = 0; k <= ctx.n_modes; ++k) {
    std::vector<cplx> m(static_cast<std::size_t>(n) * n, 0.0);
    const cplx ikw(0.0, k * ctx.tilde_omega);
    for (int i = 1; i < n - 1; ++i) {
      for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = -d2[static_cast<std::size_t>(i) * n + j];
      m[static_cast<std::size_t>(i) * n + i] += ikw;
    }
    m[0] = 1.0;
    const std::size_t last = static_cast<std::size_t>(n - 1) * n;
    if (far_ == FarCondition::Dirichlet)
      m[last + n - 1] = 1.0;
    else
      for (int j = 0; j < n; ++j) m[last + j] = d1[last + j];
    lu_.emplace_back(n, m);
    if (lu_.back().rcond() < 1e-14)
      throw Error(ErrorKind::IllConditioned, "layer mode operator is singular", lu_.back().rcond());
  }
}

FourierField ModeSolver::solve(const FourierField& rhs, const FourierData* wall) const {
  FourierField out(ctx_.zeta, ctx_.n_modes);
  const std::size_t n = ctx_.zeta->size();
  for (int k = 0; k <= ctx_.n_modes; ++k) {
    auto r = rhs.mode(k);
    cplx w0 = 0.0;
    if (wall) {
      const double a = k < static_cast<int>(wall->cos.size()) ? wall->cos[k] : 0.0;
      const double b = (k > 0 && k < static_cast<int>(wall->sin.size())) ? wall->sin[k] : 0.0;
      w0 = {a, -b};
    }
    r[0] = w0;
    r[n - 1] = 0.0;
    out.set_mode(k, lu_[k].solve(std::move(r)));
  }
  return out;
}

double relative_change(const FourierField& next, const FourierField& prev) {
  double diff = 0.0, scale = 0.0;
  for (int k = 0; k <= next.n_modes(); ++k) {
    for (std::size_t i = 0; i < next.n_points(); ++i) {
      diff = std::max({diff, std::abs(next.a(k)[i] - prev.a(k)[i]), std::abs(next.b(k)[i] - prev.b(k)[i])});
      scale = std::max({scale, std::abs(next.a(k)[i]), std::abs(next.b(k)[i])});
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

FourierField zeta_cumulative(const FourierField& f) {
  FourierField out(f.grid_ptr(), f.n_modes());
  for (int k = 0; k <= f.n_modes(); ++k) {
    auto ca = f.grid().cumulative(f.a(k));
    std::copy(ca.begin(), ca.end(), out.a(k).begin());
    if (k > 0) {
      auto cb = f.grid().cumulative(f.b(k));
      std::copy(cb.begin(), cb.end(), out.b(k).begin());
    }
  }
  return out;
}

FourierField layer_flux(const FourierField& u) {
  const auto* z = dynamic_cast<const ZetaGrid*>(&u.grid());
  if (!z) throw Error(ErrorKind::GridMismatch, "layer flux needs a zeta grid");
  const FourierField ut = differentiate(u, Derivative::Theta);
  FourierField out(u.grid_ptr(), u.n_modes());
  for (int k = 1; k <= u.n_modes(); ++k) {
    auto a = z->from_right(ut.a(k));
    auto b = z->from_right(ut.b(k));
    std::copy(a.begin(), a.end(), out.a(k).begin());
    std::copy(b.begin(), b.end(), out.b(k).begin());
  }
  return out;
}

FourierField layer_pressure(const FourierField& g) {
  const auto* z = dynamic_cast<const ZetaGrid*>(&g.grid());
  if (!z) throw Error(ErrorKind::GridMismatch, "layer pressure needs a zeta grid");
  FourierField out(g.grid_ptr(), g.n_modes());
  for (int k = 0; k <= g.n_modes(); ++k) {
    auto a = z->from_right(g.a(k));
    std::copy(a.begin(), a.end(), out.a(k).begin());
    if (k > 0) {
      auto b = z->from_right(g.b(k));
      std::copy(b.begin(), b.end(), out.b(k).begin());
    }
  }
  return out;
}

double max_theta_mean(const FourierField& f) {
  double m = 0.0;
  for (double x : f.a(0)) m = std::max(m, 2.0 * std::numbers::pi * std::abs(x));
  return m;
}

FourierField linearized_layer_operator(const FourierField& u, const FourierField& u0, const LayerContext& ctx) {
  const ThetaGrid& tg = *ctx.theta;
  const FourierField ut = differentiate(u, Derivative::Theta);
  const FourierField uz = differentiate(u, Derivative::Native);
  const FourierField u0t = differentiate(u0, Derivative::Theta);
  const FourierField u0z = differentiate(u0, Derivative::Native);
  const FourierField vbar = -1.0 * zeta_cumulative(u0t);
  FourierField out = ctx.tilde_omega * ut - differentiate(u, Derivative::Native, 2);
  out += multiply(u0, ut, tg);
  out += multiply(u, u0t, tg);
  out += multiply(vbar, uz, tg);
  out -= multiply(zeta_cumulative(ut), u0z, tg);
  return out;
}

FourierField interior_residual_field(FourierField f) {
  const std::size_t n = f.n_points();
  for (int k = 0; k <= f.n_modes(); ++k) {
    f.a(k)[0] = f.a(k)[n - 1] = 0.0;
    f.b(k)[0] = f.b(k)[n - 1] = 0.0;
  }
  return f;
}

BoundaryLayerOrder solve_leading_layer(const FourierData& g, const LayerContext& ctx, const LayerConfig& cfg) {
  const ThetaGrid& tg = *ctx.theta;
  ModeSolver solver(ctx, FarCondition::Dirichlet);
  auto nonlinear = [&](const FourierField& u) {
    const FourierField ut = differentiate(u, Derivative::Theta);
    const FourierField uz = differentiate(u, Derivative::Native);
    const FourierField vbar = -1.0 * zeta_cumulative(ut);
    return multiply(u, ut, tg) + multiply(vbar, uz, tg);
  };

  BoundaryLayerOrder out;
  out.k = 0;
  FourierField u = solver.solve(ctx.zeros(), &g);
  int growth = 0;
  double prev = INFINITY;
  for (int it = 1;; ++it) {
    FourierField next = solver.solve(-1.0 * nonlinear(u), &g);
    const double upd = relative_change(next, u);
    u = std::move(next);
    out.telemetry.updates.push_back(upd);
    out.telemetry.iterations = it;
    out.telemetry.last_update = upd;
    if (upd < cfg.tol) break;
    growth = upd > prev ? growth + 1 : 0;
    prev = upd;
    if (growth >= 3 || it >= cfg.max_iter || !std::isfinite(upd))
      throw Error(ErrorKind::Nonconvergence, "leading layer Picard iteration failed to converge", upd);
  }

  const FourierField ut = differentiate(u, Derivative::Theta);
  FourierField res = ctx.tilde_omega * ut + nonlinear(u) - differentiate(u, Derivative::Native, 2);
  out.telemetry.residual = sup_norm(interior_residual_field(res), tg);

  out.u_p = u;
  out.w = layer_flux(u);
  out.v_p_next = out.w;
  // Radial momentum at order zero: d_zeta p^{(1)} = 2 w u0 + u0^2.
  FourierField g1 = 2.0 * ctx.tilde_omega * u + multiply(u, u, tg);
  out.p_p_next = -1.0 * layer_pressure(g1);
  const std::size_t n = u.n_points();
  out.A_check = u.a(0)[n - 2];
  return out;
}

}  // namespace discflow
