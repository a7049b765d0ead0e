#include <algorithm>
#include <cmath>

#include "discflow/error_solver.hpp"
#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

double fit_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::Precondition, "fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::Precondition, "log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TheoremReport verify_theorem1(const FullSolution& s, const ApproxSolution& a, double tilde_omega, double delta,
                              const ThetaGrid& tg) {
  const RadialGrid& g = radial_grid_of(s.u);
  const std::size_t n = g.size();
  TheoremReport rep;
  rep.tilde_omega = tilde_omega;
  rep.c1 = g.r()[n - 1] * s.u.a(0)[n - 1] - tilde_omega;

  FourierField eu = s.u - a.u_p0;
  for (std::size_t i = 0; i < n; ++i) eu.a(0)[i] -= (tilde_omega + rep.c1) / g.r()[i];
  const auto su = sup_theta(eu, tg);
  const auto sv = sup_theta(s.v, tg);

  std::vector<double> r, yu, yv;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.r()[i] < 2.0 || g.r()[i] > 16.0) continue;
    r.push_back(g.r()[i]);
    yu.push_back(std::max(su[i], 1e-300));
    yv.push_back(std::max(sv[i], 1e-300));
  }
  rep.exponent_u = fit_exponent(r, yu);
  rep.exponent_v = fit_exponent(r, yv);

  rep.radii = {2.0, 4.0, 8.0, 16.0};
  std::vector<double> at;
  for (double x : rep.radii) at.push_back(std::log(x));
  const auto iu = g.interpolate(su, at);
  const auto iv = g.interpolate(sv, at);
  for (std::size_t j = 0; j < at.size(); ++j) {
    const double r2 = rep.radii[j] * rep.radii[j];
    rep.e_u_r2.push_back(r2 * iu[j]);
    rep.e_v_r2.push_back(r2 * iv[j]);
  }
  const double scale = a.epsilon * std::abs(delta);
  rep.bound_constant = scale > 0.0 ? rep.e_v_r2[0] / scale : 0.0;
  return rep;
}

}  // namespace discflow
