#include <cmath>
#include <numbers>

#include "discflow/error_solver.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

namespace {

// int_0^{S} int_T (e^{w s} f)^2 dtheta ds.
double weighted_l2(const FourierField& f, double w) {
  const RadialGrid& g = radial_grid_of(f);
  std::vector<double> dens(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double acc = 2.0 * f.a(0)[i] * f.a(0)[i];
    for (int k = 1; k <= f.n_modes(); ++k) acc += f.a(k)[i] * f.a(k)[i] + f.b(k)[i] * f.b(k)[i];
    dens[i] = std::numbers::pi * acc * std::exp(2.0 * w * g.s()[i]);
  }
  return g.integrate(dens);
}

FourierField ds(const FourierField& f, int m = 1) { return differentiate(f, Derivative::Native, m); }
FourierField dt(const FourierField& f, int m = 1) { return differentiate(f, Derivative::Theta, m); }

}  // namespace

double NormReport::norm() const { return std::sqrt(total); }

NormReport energy_norm(const FourierField& phi, double epsilon) {
  radial_grid_of(phi);
  const FourierField p0 = phi.zero_mode();
  const FourierField p1 = phi.single_mode(1);
  const FourierField ph = phi.high_modes();
  const FourierField pn = phi.nonzero_modes();

  // e^s Delta_s Phi_1 and its s-derivative e^s (psi + psi_s).
  const FourierField psi1 = ds(p1, 2) + dt(p1, 2);
  const FourierField psi1_s = ds(psi1);

  NormReport r;
  auto add = [&](const char* name, int power, const FourierField& f, double w) {
    NormComponent c;
    c.name = name;
    c.eps_power = power;
    c.value = weighted_l2(f, w);
    c.weighted = std::pow(epsilon, power) * c.value;
    r.total += c.weighted;
    r.components.push_back(std::move(c));
  };
  add("es_psi1_s", 20, psi1 + psi1_s, 1.0);
  add("es_psi1_theta", 18, dt(psi1), 1.0);
  add("phi0_sss", 16, ds(p0, 3), 0.0);
  add("phi0_ssss", 16, ds(p0, 4), 0.0);
  add("e05s_phi_thetasss", 16, dt(ds(phi, 3)), 0.5);
  add("e05s_phine_ssss", 16, ds(pn, 4), 0.5);
  add("es_phih_tttt", 6, dt(ph, 4), 1.0);
  add("es_phih_ttts", 6, dt(ds(ph), 3), 1.0);
  add("es_phih_ttss", 6, dt(ds(ph, 2), 2), 1.0);
  add("e05s_phi1_tttt", 6, dt(p1, 4), 0.5);
  add("e05s_phi1_ttts", 6, dt(ds(p1), 3), 0.5);
  add("e05s_phi1_ttss", 6, dt(ds(p1, 2), 2), 0.5);
  add("phi0_ss", 6, ds(p0, 2), 0.0);
  add("phi0_s", 6, ds(p0), 0.0);
  return r;
}

}  // namespace discflow
