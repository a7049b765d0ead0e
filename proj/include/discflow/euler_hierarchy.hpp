#pragma once

#include <complex>
#include <vector>

#include "discflow/batchelor_wood.hpp"
#include "discflow/power_field.hpp"

namespace discflow {

// One order of the outer expansion.  u carries the radial corrector h_k once
// apply_corrector has run; before that its zero mode is zero.
struct EulerOrder {
  int k = 0;
  std::vector<std::complex<double>> c;  // c_n, n = 1..K, of r v = sum c_n r^{-|n|} e^{i n theta}
  PowerField u, v, p;
  PowerField f_e, g_e;
  double A = 0.0;
  double tilde_A = 0.0;
  bool corrected = false;
  bool has_pressure = false;
};

// Taylor-Couette base flow tilde_omega / r with p = -tilde_omega^2 / (2 r^2).
EulerOrder limit_euler(double tilde_omega, int n_modes);

// Closed-form order from the wall trace t(theta) = v_p^{(k)}(theta, 0);
// v_e^{(k)}(theta, 1) = -t.
EulerOrder solve_euler_order(int k, const FourierData& wall_trace, int n_modes, double tol = 1e-10);

// Forcings of the order-k system built from corrected orders 0..k-1.
void assemble_euler_forcing(EulerOrder& target, const std::vector<EulerOrder>& lower);

struct CompatibilityReport {
  double max_mean = 0.0;  // max_r |int_0^{2pi} f_e dtheta|
  bool pass = false;
};
CompatibilityReport check_compatibility(const PowerField& f_e, const std::vector<double>& radii,
                                        double tol = 1e-9);

struct CorrectorResult {
  std::vector<double> h;
  double tilde_A = 0.0;
  double ode_residual = 0.0;  // max_r |r (Delta - r^-2) h - r f|
};

// Radial corrector for the zero mode: r (Delta - r^-2) h = r f, h(1) = A.
CorrectorResult corrector_hk(double A, std::span<const double> f, const RadialGrid& grid);

// Order-k correction with f_k = 0 (the pre-correction zero mode is zero), so
// h_k = A_k / r exactly.
void apply_corrector(EulerOrder& order, double A);

// Pressure from both momentum equations; needs f_e, g_e and the corrected u.
void euler_pressure(EulerOrder& order, const EulerOrder& base);

struct EulerMomentumResidual {
  PowerField theta_eq;
  PowerField radial_eq;
};
EulerMomentumResidual euler_momentum_residual(const EulerOrder& order, const EulerOrder& base);

// Max over the radii and theta nodes of |field|.
double max_on(const PowerField& f, const std::vector<double>& radii, int n_theta = 64);

}  // namespace discflow
