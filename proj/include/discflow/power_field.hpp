#pragma once

#include <map>
#include <vector>

#include "discflow/fourier_field.hpp"

namespace discflow {

// Closed-form field  sum_k sum_m (a_{k,m} cos k theta + b_{k,m} sin k theta) r^{-m}
// with integer exponents m.  Products, theta and r derivatives stay exact;
// only modes above K are discarded.
class PowerField {
 public:
  using Terms = std::map<int, double>;

  explicit PowerField(int n_modes = 16);

  int n_modes() const { return K_; }
  const Terms& cos_terms(int k) const { return a_.at(k); }
  const Terms& sin_terms(int k) const { return b_.at(k); }

  // Add c cos(k theta) r^{-m} (resp. sin); negative k folds with parity.
  void add_cos(int k, int m, double c);
  void add_sin(int k, int m, double c);

  PowerField& operator+=(const PowerField& o);
  PowerField& operator-=(const PowerField& o);
  PowerField& operator*=(double c);

  PowerField d_theta() const;
  PowerField d_r() const;
  PowerField times_r_power(int j) const;
  PowerField zero_mode() const;
  PowerField nonzero_modes() const;
  // Zero-mean antiderivative in theta.
  PowerField theta_antiderivative() const;

  double value(double theta, double r) const;
  // Cos/sin amplitudes of mode k at radius r.
  double cos_at(int k, double r) const;
  double sin_at(int k, double r) const;
  // Sample on the r-values of a grid.
  FourierField sample(std::shared_ptr<const Grid1D> grid, const std::vector<double>& r) const;

  double max_abs_coefficient() const;
  bool is_zero() const { return max_abs_coefficient() == 0.0; }
  int min_exponent() const;

 private:
  void add_term(std::vector<Terms>& t, int k, int m, double c);
  int K_;
  std::vector<Terms> a_, b_;
};

PowerField operator+(PowerField x, const PowerField& y);
PowerField operator-(PowerField x, const PowerField& y);
PowerField operator*(double c, PowerField x);
PowerField product(const PowerField& f, const PowerField& g);

// Polar Laplacian d_rr + d_r / r + d_tt / r^2.
PowerField laplacian(const PowerField& f);

// p(r) = -int_r^inf G(s)/s ds for a theta-independent G; requires decay.
PowerField integrate_r_inverse_from_infinity(const PowerField& g);

}  // namespace discflow
