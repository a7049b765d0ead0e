#include "discflow/euler_hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "discflow/errors.hpp"

namespace discflow {

EulerOrder limit_euler(double tilde_omega, int n_modes) {
  EulerOrder e;
  e.k = 0;
  e.u = PowerField(n_modes);
  e.v = PowerField(n_modes);
  e.p = PowerField(n_modes);
  e.f_e = PowerField(n_modes);
  e.g_e = PowerField(n_modes);
  e.u.add_cos(0, 1, tilde_omega);
  e.p.add_cos(0, 2, -0.5 * tilde_omega * tilde_omega);
  e.corrected = true;
  e.has_pressure = true;
  return e;
}

EulerOrder solve_euler_order(int k, const FourierData& t, int n_modes, double tol) {
  const double mean = t.mean();
  if (std::abs(mean) > tol)
    throw Error(ErrorKind::Compatibility, "wall trace of the normal velocity has nonzero mean", mean);
  EulerOrder e;
  e.k = k;
  e.u = PowerField(n_modes);
  e.v = PowerField(n_modes);
  e.p = PowerField(n_modes);
  e.f_e = PowerField(n_modes);
  e.g_e = PowerField(n_modes);
  e.c.assign(n_modes, {0.0, 0.0});
  for (int n = 1; n <= n_modes; ++n) {
    const double alpha = n < static_cast<int>(t.cos.size()) ? -t.cos[n] : 0.0;
    const double beta = n < static_cast<int>(t.sin.size()) ? -t.sin[n] : 0.0;
    e.c[n - 1] = {0.5 * alpha, -0.5 * beta};
    e.v.add_cos(n, n + 1, alpha);
    e.v.add_sin(n, n + 1, beta);
    e.u.add_sin(n, n + 1, alpha);
    e.u.add_cos(n, n + 1, -beta);
  }
  return e;
}

void assemble_euler_forcing(EulerOrder& target, const std::vector<EulerOrder>& lower) {
  const int k = target.k;
  if (static_cast<int>(lower.size()) < k)
    throw Error(ErrorKind::Dependency, "Euler forcing needs every lower order");
  for (int i = 0; i < k; ++i)
    if (!lower[i].corrected) throw Error(ErrorKind::Dependency, "lower Euler order not corrected");
  const int K = target.u.n_modes();
  PowerField f(K), g(K);
  for (int i = 1; i <= k - 1; ++i) {
    const EulerOrder& a = lower[i];
    const EulerOrder& b = lower[k - i];
    const PowerField rv = a.v.times_r_power(1);
    f -= product(a.u, b.u.d_theta());
    f -= product(rv, b.u.d_r());
    f -= product(a.v, b.u);
    g -= product(a.u, b.v.d_theta());
    g -= product(rv, b.v.d_r());
    g += product(a.u, b.u);
  }
  if (k >= 2) {
    const EulerOrder& m = lower[k - 2];
    const PowerField& u = m.u;
    f += (laplacian(u) - u.times_r_power(-2)).times_r_power(1);
    f += 2.0 * m.v.d_theta().times_r_power(-1);
    g += laplacian(m.v.times_r_power(1));
  }
  target.f_e = std::move(f);
  target.g_e = std::move(g);
}

CompatibilityReport check_compatibility(const PowerField& f_e, const std::vector<double>& radii, double tol) {
  CompatibilityReport rep;
  for (double r : radii) rep.max_mean = std::max(rep.max_mean, 2.0 * std::numbers::pi * std::abs(f_e.cos_at(0, r)));
  rep.pass = rep.max_mean < tol;
  return rep;
}

namespace {

// High-order second derivative in s, used only for the corrector diagnostic.
std::vector<double> second_derivative_s(std::span<const double> f, const RadialGrid& g) {
  const int n = static_cast<int>(g.size());
  const int half = 4;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    int start, width;
    if (i - half >= 0 && i + half < n) {
      start = i - half;
      width = 2 * half + 1;
    } else {
      width = 10;
      start = i - half < 0 ? 0 : n - width;
    }
    auto w = fd_weights(g.s()[i], std::span<const double>(g.s().data() + start, width), 2);
    double acc = 0.0;
    for (int l = 0; l < width; ++l) acc += w[2][l] * f[start + l];
    out[i] = acc;
  }
  return out;
}

}  // namespace

CorrectorResult corrector_hk(double A, std::span<const double> f, const RadialGrid& grid) {
  const auto& r = grid.r();
  const std::size_t n = grid.size();
  if (f.size() != n) throw Error(ErrorKind::GridMismatch, "corrector forcing does not match grid");
  std::vector<double> fs2(n), f1mr2(n);
  for (std::size_t i = 0; i < n; ++i) {
    fs2[i] = f[i] * r[i] * r[i];
    f1mr2[i] = f[i] * (1.0 - r[i] * r[i]);
  }
  const auto t2 = grid.tail_integral_r(fs2);
  const auto t0 = grid.tail_integral_r(f);
  CorrectorResult res;
  res.tilde_A = A + 0.5 * (t0[0] - t2[0]);
  res.h.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    res.h[i] = res.tilde_A / r[i] + 0.5 * t2[i] / r[i] - 0.5 * r[i] * t0[i];
  res.h[0] = A + 0.5 * (t0[0] - t2[0]) + 0.5 * t2[0] - 0.5 * t0[0];

  // r h_rr + h_r - h / r = (h_ss - h) / r.
  const auto hss = second_derivative_s(res.h, grid);
  for (std::size_t i = 0; i < n; ++i)
    res.ode_residual = std::max(res.ode_residual, std::abs((hss[i] - res.h[i]) / r[i] - r[i] * f[i]));
  return res;
}

void apply_corrector(EulerOrder& order, double A) {
  order.A = A;
  order.tilde_A = A;
  order.u.add_cos(0, 1, A);
  order.corrected = true;
}

void euler_pressure(EulerOrder& order, const EulerOrder& base) {
  if (!order.corrected) throw Error(ErrorKind::Dependency, "pressure needs the corrected order");
  const PowerField& ue = base.u;
  PowerField p = order.f_e.nonzero_modes().theta_antiderivative();
  p -= product(ue, order.u.nonzero_modes());
  PowerField G = order.g_e.zero_mode();
  G += 2.0 * product(ue, order.u).zero_mode();
  G -= product(ue, order.v.d_theta()).zero_mode();
  p += integrate_r_inverse_from_infinity(G);
  order.p = std::move(p);
  order.has_pressure = true;
}

EulerMomentumResidual euler_momentum_residual(const EulerOrder& o, const EulerOrder& base) {
  const PowerField& ue = base.u;
  EulerMomentumResidual r{PowerField(o.u.n_modes()), PowerField(o.u.n_modes())};
  r.theta_eq = product(ue, o.u.d_theta()) + product(o.v.times_r_power(1), ue.d_r()) + product(ue, o.v) +
               o.p.d_theta() - o.f_e;
  r.radial_eq = product(ue, o.v.d_theta()) - 2.0 * product(ue, o.u) + o.p.d_r().times_r_power(1) - o.g_e;
  return r;
}

double max_on(const PowerField& f, const std::vector<double>& radii, int n_theta) {
  double m = 0.0;
  const int K = f.n_modes();
  for (double r : radii) {
    std::vector<double> a(K + 1), b(K + 1);
    for (int k = 0; k <= K; ++k) {
      a[k] = f.cos_at(k, r);
      b[k] = f.sin_at(k, r);
    }
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n_theta;
      double v = 0.0;
      for (int k = 0; k <= K; ++k) v += a[k] * std::cos(k * th) + b[k] * std::sin(k * th);
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

}  // namespace discflow
