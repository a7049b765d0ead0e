#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "discflow/grids.hpp"
#include "discflow/theta_grid.hpp"

namespace discflow {

// f(theta, x_i) = sum_k A_k(x_i) cos(k theta) + B_k(x_i) sin(k theta), k = 0..K.
// B_0 is kept identically zero.
class FourierField {
 public:
  FourierField() = default;
  FourierField(std::shared_ptr<const Grid1D> grid, int n_modes);

  int n_modes() const { return K_; }
  std::size_t n_points() const { return n_; }
  const Grid1D& grid() const { return *grid_; }
  const std::shared_ptr<const Grid1D>& grid_ptr() const { return grid_; }
  bool empty() const { return !grid_; }

  std::span<double> a(int k) { return {a_.data() + idx(k), n_}; }
  std::span<const double> a(int k) const { return {a_.data() + idx(k), n_}; }
  std::span<double> b(int k) { return {b_.data() + idx(k), n_}; }
  std::span<const double> b(int k) const { return {b_.data() + idx(k), n_}; }

  // Complex amplitude z_k = A_k - i B_k so that d/dtheta acts as i k.
  std::vector<std::complex<double>> mode(int k) const;
  void set_mode(int k, std::span<const std::complex<double>> z);

  double value(double theta, std::size_t i) const;

  FourierField zero_mode() const;
  FourierField single_mode(int k) const;
  FourierField nonzero_modes() const;
  FourierField high_modes() const;

  FourierField& operator+=(const FourierField& o);
  FourierField& operator-=(const FourierField& o);
  FourierField& operator*=(double c);
  // Multiply every mode by a radial profile.
  FourierField& scale_radial(std::span<const double> w);

  // Largest coefficient magnitude; cheap proxy for "is this zero".
  double max_coefficient() const;

  void check_compatible(const FourierField& o) const;

 private:
  std::size_t idx(int k) const { return static_cast<std::size_t>(k) * n_; }
  std::shared_ptr<const Grid1D> grid_;
  int K_ = 0;
  std::size_t n_ = 0;
  std::vector<double> a_, b_;
};

FourierField operator+(FourierField x, const FourierField& y);
FourierField operator-(FourierField x, const FourierField& y);
FourierField operator*(double c, FourierField x);

// Nodal values are stored [theta node][radial node].
std::vector<double> to_nodal(const FourierField& f, const ThetaGrid& tg, bool padded = false);
FourierField from_nodal(std::span<const double> values, std::shared_ptr<const Grid1D> grid,
                        const ThetaGrid& tg, bool padded = false);

// Pseudo-spectral product on the padded grid, truncated to K modes; exact for
// band-limited inputs.
FourierField multiply(const FourierField& f, const FourierField& g, const ThetaGrid& tg);

// Maximum of |f| over the theta nodes and all radial nodes.
double sup_norm(const FourierField& f, const ThetaGrid& tg);
// sup over theta nodes at each radial node.
std::vector<double> sup_theta(const FourierField& f, const ThetaGrid& tg);

}  // namespace discflow
