#include <algorithm>
#include <cmath>

#include "discflow/assembly.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

Residual momentum_residual(const JetField& u, const JetField& v, const JetField& p, double epsilon,
                           const ThetaGrid& tg) {
  const RadialGrid& g = radial_grid_of(u.value());
  const auto r = radial_power(g, 1, 3);
  const auto inv_r = radial_power(g, -1, 3);
  const double nu = epsilon * epsilon;
  const JetField rv = v.scale(r);

  Residual res;
  JetField ru = multiply(u, u.d_theta(), tg) + multiply(rv, u.d_r(), tg) + multiply(u, v, tg) + p.d_theta();
  JetField visc_u = u.d_r().d_r().scale(r) + u.d_r() + (u.d_theta(2) + 2.0 * v.d_theta() - u).scale(inv_r);
  res.ru = (ru - nu * visc_u).truncated(1);

  JetField rr = multiply(u, v.d_theta(), tg) + multiply(rv, v.d_r(), tg) - multiply(u, u, tg) + p.d_r().scale(r);
  JetField visc_v = v.d_r().d_r().scale(r) + v.d_r() + (v.d_theta(2) - 2.0 * u.d_theta() - v).scale(inv_r);
  res.rv = (rr - nu * visc_v).truncated(1);

  FourierField rv_t = differentiate(res.rv.value(), Derivative::Theta);
  rv_t.scale_radial(inv_r[0]);
  res.omega = rv_t - res.ru[1];

  const auto su = sup_theta(res.ru.value(), tg);
  const auto sv = sup_theta(res.rv.value(), tg);
  const auto so = sup_theta(res.omega, tg);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r4 = std::pow(g.r()[i], 4);
    res.sup_r4_ru = std::max(res.sup_r4_ru, r4 * su[i]);
    res.sup_r4_rv = std::max(res.sup_r4_rv, r4 * sv[i]);
    if (g.r()[i] > 3.5) res.support_violation = std::max(res.support_violation, so[i]);
  }
  return res;
}

Residual residual(const ApproxSolution& a, const ThetaGrid& tg) {
  return momentum_residual(a.u, a.v, a.p, a.epsilon, tg);
}

}  // namespace discflow
