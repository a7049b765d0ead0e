#pragma once

#include <optional>
#include <vector>

#include "discflow/fourier_field.hpp"

namespace discflow {

// f(theta) = sum_k cos_k cos(k theta) + sin_k sin(k theta); sin_0 must be 0.
struct FourierData {
  std::vector<double> cos;
  std::vector<double> sin;

  double eval(double theta) const;
  double mean() const { return cos.empty() ? 0.0 : cos[0]; }
  double mean_square() const;
  int max_mode() const;
};

struct Params {
  double omega = 1.0;
  double delta = 0.05;
  double epsilon = 0.1;
  std::optional<double> lambda;
  FourierData f;
  int order = 2;

  void validate() const;
  // epsilon, or lambda^{-1/2} when lambda is set.
  double eps() const;
};

struct BWResult {
  double tilde_omega = 0.0;
  double omega_sq = 0.0;
  double cross = 0.0;   // (omega delta / pi) int f
  double square = 0.0;  // (delta^2 / 2 pi) int f^2
};

BWResult compute_tilde_omega(const Params& p);

// Boundary data of the leading layer, g = omega + delta f - tilde omega.
FourierData layer_boundary_data(const Params& p, double tilde_omega);

struct FlowFields {
  FourierField u, v, p;
};

// Unit-rotation solution at epsilon = lambda^{-1/2} mapped to the
// fixed-viscosity problem: (u, v) -> lambda (u, v), p -> lambda^2 p.
FlowFields rescale_lambda(const FlowFields& unit, double lambda);

// Polar momentum residuals (each multiplied by r) of (u, v, p) with kinematic
// viscosity nu, evaluated with grid derivatives on a radial grid.
struct MomentumResidual {
  FourierField ru;  // theta equation
  FourierField rv;  // radial equation
};
MomentumResidual momentum_residual(const FlowFields& s, double nu, const ThetaGrid& tg);

}  // namespace discflow
