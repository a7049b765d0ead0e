#include "discflow/field_ops.hpp"

#include <cmath>
#include <cstdio>

#include "discflow/errors.hpp"

namespace discflow {

const RadialGrid& radial_grid_of(const FourierField& f) {
  auto* g = dynamic_cast<const RadialGrid*>(&f.grid());
  if (!g) throw Error(ErrorKind::GridMismatch, "operation needs a radial grid");
  return *g;
}

namespace {

FourierField theta_derivative(const FourierField& f, int order) {
  FourierField out(f.grid_ptr(), f.n_modes());
  for (int k = 1; k <= f.n_modes(); ++k) {
    // Apply (A, B) -> (k B, -k A) order times.
    auto A = f.a(k), B = f.b(k);
    auto oa = out.a(k), ob = out.b(k);
    const double kp = std::pow(static_cast<double>(k), order);
    for (std::size_t i = 0; i < f.n_points(); ++i) {
      double a = A[i], b = B[i];
      switch (order % 4) {
        case 0: oa[i] = kp * a; ob[i] = kp * b; break;
        case 1: oa[i] = kp * b; ob[i] = -kp * a; break;
        case 2: oa[i] = -kp * a; ob[i] = -kp * b; break;
        default: oa[i] = -kp * b; ob[i] = kp * a; break;
      }
    }
  }
  return out;
}

template <class Op>
FourierField radial_apply(const FourierField& f, Op op) {
  FourierField out(f.grid_ptr(), f.n_modes());
  for (int k = 0; k <= f.n_modes(); ++k) {
    auto da = op(f.a(k));
    std::copy(da.begin(), da.end(), out.a(k).begin());
    if (k > 0) {
      auto db = op(f.b(k));
      std::copy(db.begin(), db.end(), out.b(k).begin());
    }
  }
  return out;
}

}  // namespace

FourierField differentiate(const FourierField& f, Derivative which, int order) {
  if (order < 0) throw Error(ErrorKind::Precondition, "negative derivative order");
  switch (which) {
    case Derivative::Theta:
      return theta_derivative(f, order);
    case Derivative::Native:
      return radial_apply(f, [&](std::span<const double> p) { return f.grid().derivative(p, order); });
    case Derivative::S: {
      radial_grid_of(f);
      return radial_apply(f, [&](std::span<const double> p) { return f.grid().derivative(p, order); });
    }
    case Derivative::R: {
      const RadialGrid& g = radial_grid_of(f);
      if (order == 1) return radial_apply(f, [&](std::span<const double> p) { return g.d_dr(p); });
      if (order == 2) return radial_apply(f, [&](std::span<const double> p) { return g.d2_dr2(p); });
      // Higher orders by repeated application.
      FourierField out = f;
      for (int m = 0; m < order; ++m)
        out = radial_apply(out, [&](std::span<const double> p) { return g.d_dr(p); });
      return out;
    }
  }
  return f;
}

FourierField laplacian(const FourierField& f, Coordinates coords) {
  if (coords == Coordinates::LogRadial) {
    return differentiate(f, Derivative::S, 2) + differentiate(f, Derivative::Theta, 2);
  }
  const RadialGrid& g = radial_grid_of(f);
  // r^2 Delta = d_s^2 + d_theta^2 in the native coordinate.
  FourierField out = differentiate(f, Derivative::S, 2) + differentiate(f, Derivative::Theta, 2);
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = 1.0 / (g.r()[i] * g.r()[i]);
  out.scale_radial(w);
  return out;
}

FourierField theta_antiderivative(const FourierField& f) {
  FourierField out(f.grid_ptr(), f.n_modes());
  for (int k = 1; k <= f.n_modes(); ++k) {
    // d/dtheta (a/k sin - b/k cos) = a cos + b sin.
    auto A = f.a(k), B = f.b(k);
    auto oa = out.a(k), ob = out.b(k);
    for (std::size_t i = 0; i < f.n_points(); ++i) {
      oa[i] = -B[i] / k;
      ob[i] = A[i] / k;
    }
  }
  return out;
}

FourierField polar_divergence(const FourierField& u, const FourierField& v) {
  u.check_compatible(v);
  const RadialGrid& g = radial_grid_of(v);
  FourierField rv = v;
  rv.scale_radial(g.r());
  return differentiate(u, Derivative::Theta) + differentiate(rv, Derivative::R);
}

StreamState stream_from_velocity(const FourierField& u, const FourierField& v, const ThetaGrid& tg,
                                 double tol) {
  u.check_compatible(v);
  const RadialGrid& g = radial_grid_of(u);
  StreamState st;
  st.u = u;
  st.v = v;
  const FourierField div = polar_divergence(u, v);
  st.divergence_norm = sup_norm(div, tg);
  double wall = 0.0;
  for (int k = 0; k <= v.n_modes(); ++k) wall = std::max({wall, std::abs(v.a(k)[0]), std::abs(v.b(k)[0])});
  if (st.divergence_norm > tol || wall > tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "velocity is not admissible: |div| = %.3e, |v(1)| = %.3e",
                  st.divergence_norm, wall);
    throw Error(ErrorKind::Inconsistency, buf, std::max(st.divergence_norm, wall));
  }
  st.phi = FourierField(u.grid_ptr(), u.n_modes());
  for (int k = 0; k <= u.n_modes(); ++k) {
    auto ca = g.cumulative_r(u.a(k));
    std::copy(ca.begin(), ca.end(), st.phi.a(k).begin());
    if (k > 0) {
      auto cb = g.cumulative_r(u.b(k));
      std::copy(cb.begin(), cb.end(), st.phi.b(k).begin());
    }
  }
  FourierField ru = u;
  ru.scale_radial(g.r());
  st.vorticity = differentiate(v, Derivative::Theta) - differentiate(ru, Derivative::R);
  std::vector<double> inv_r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) inv_r[i] = 1.0 / g.r()[i];
  st.vorticity.scale_radial(inv_r);
  return st;
}

}  // namespace discflow
