#pragma once

#include <array>
#include <memory>
#include <vector>

#include "discflow/fourier_field.hpp"
#include "discflow/hierarchy.hpp"

namespace discflow {

// Smooth step: 1 on [1, 2], 0 on [3, inf), built from psi(x) = exp(-1/x).
class CutoffChi {
 public:
  static constexpr int kMaxDerivative = 4;
  double value(double r) const { return jet(r)[0]; }
  // Derivatives 0..4 at r.
  std::array<double, kMaxDerivative + 1> jet(double r) const;
  // Mirrored transition r -> chi(5 - r).
  double mirrored(double r) const { return value(5.0 - r); }
};

CutoffChi build_chi();

// A field on the radial grid together with its first few r-derivatives.
class JetField {
 public:
  JetField() = default;
  explicit JetField(std::vector<FourierField> d) : d_(std::move(d)) {}
  static JetField zeros(std::shared_ptr<const Grid1D> grid, int n_modes, int order);

  int order() const { return static_cast<int>(d_.size()) - 1; }
  const FourierField& operator[](int j) const { return d_.at(j); }
  FourierField& operator[](int j) { return d_.at(j); }
  const FourierField& value() const { return d_.at(0); }

  JetField& operator+=(const JetField& o);
  JetField& operator-=(const JetField& o);
  JetField& operator*=(double c);

  JetField d_theta(int order = 1) const;
  // Drops the highest derivative.
  JetField d_r() const;
  JetField truncated(int order) const;
  // Multiply by a radial function given by its derivatives [j][node].
  JetField scale(const std::vector<std::vector<double>>& radial) const;

 private:
  std::vector<FourierField> d_;
};

JetField operator+(JetField a, const JetField& b);
JetField operator-(JetField a, const JetField& b);
JetField operator*(double c, JetField a);
// Leibniz product with dealiased pointwise multiplication.
JetField multiply(const JetField& a, const JetField& b, const ThetaGrid& tg);

// Derivatives 0..order of r^p at the grid radii.
std::vector<std::vector<double>> radial_power(const RadialGrid& g, int p, int order);

struct ApproxSolution {
  double epsilon = 0.0;
  int order = 0;
  std::shared_ptr<const RadialGrid> grid;
  JetField u, v, p;
  FourierField u_e, v_e, p_e;  // outer parts
  FourierField u_p, v_p, p_p;  // cut-off layer parts
  FourierField u_p0;           // chi times the leading layer alone
  FourierField h;              // eps^{-N} times the divergence corrector
  double corrector_mean = 0.0;
  double divergence_before = 0.0;
  double divergence_after = 0.0;
};

// Divergence corrector: h with d_theta h = K for a zero-mean K.
FourierField divergence_corrector(const FourierField& K, double tol = 1e-9);

ApproxSolution assemble(const Hierarchy& h, double epsilon, std::shared_ptr<const RadialGrid> grid);

// d_theta u + v + r d_r v from the jets.
FourierField divergence(const ApproxSolution& a);

struct Residual {
  JetField ru, rv;        // r-multiplied momentum residuals (ru up to first r-derivative)
  FourierField omega;     // (1/r) d_theta R_v - d_r R_u
  double sup_r4_ru = 0.0;
  double sup_r4_rv = 0.0;
  double support_violation = 0.0;  // sup_{r > 3.5} |R_omega|
};

// Momentum residuals of jets (u, v, p) with viscosity eps^2.
Residual momentum_residual(const JetField& u, const JetField& v, const JetField& p, double epsilon,
                           const ThetaGrid& tg);
Residual residual(const ApproxSolution& a, const ThetaGrid& tg);

// Jets of an exact outer field on the grid.
JetField sample_jet(const PowerField& f, std::shared_ptr<const RadialGrid> grid, int order);

}  // namespace discflow
