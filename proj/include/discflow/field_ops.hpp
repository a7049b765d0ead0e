#pragma once

#include <string>

#include "discflow/fourier_field.hpp"

namespace discflow {

enum class Derivative { Theta, R, S, Native };
enum class Coordinates { Polar, LogRadial };

FourierField differentiate(const FourierField& f, Derivative which, int order = 1);
FourierField laplacian(const FourierField& f, Coordinates coords);

// Zero-mean antiderivative in theta, mode by mode.  The zero mode of the input
// is ignored.
FourierField theta_antiderivative(const FourierField& f);

struct StreamState {
  FourierField phi;
  FourierField u;
  FourierField v;
  FourierField vorticity;
  double divergence_norm = 0.0;
};

// Phi = int_1^r u dr.  Rejects inputs whose discrete divergence exceeds tol.
StreamState stream_from_velocity(const FourierField& u, const FourierField& v, const ThetaGrid& tg,
                                 double tol = 1e-6);

// Discrete divergence d_theta u + d_r(r v) on a radial grid.
FourierField polar_divergence(const FourierField& u, const FourierField& v);

const RadialGrid& radial_grid_of(const FourierField& f);

}  // namespace discflow
