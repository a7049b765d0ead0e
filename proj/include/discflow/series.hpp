#pragma once

#include <memory>
#include <vector>

#include "discflow/fourier_field.hpp"
#include "discflow/power_field.hpp"

namespace discflow {

// Truncated series sum_{p=lo}^{hi} eps^p c_p(theta, zeta) with coefficients on
// the zeta grid.  Empty coefficients stand for zero.
class Series {
 public:
  Series(std::shared_ptr<const Grid1D> grid, int n_modes, int lo, int hi);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool has(int p) const;
  // Coefficient of eps^p; a zero field if absent.
  FourierField coefficient(int p) const;
  void add(int p, const FourierField& f);

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(double c);

  Series d_theta(int order = 1) const;
  Series d_zeta(int order = 1) const;
  // Multiply by eps^j.
  Series shift(int j) const;
  // Multiply every coefficient by zeta^j.
  Series times_zeta(int j) const;

  const std::shared_ptr<const Grid1D>& grid() const { return grid_; }
  int n_modes() const { return K_; }

 private:
  std::shared_ptr<const Grid1D> grid_;
  int K_, lo_, hi_;
  std::vector<FourierField> c_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(double c, Series a);
Series product(const Series& a, const Series& b, const ThetaGrid& tg);

// (1 + eps zeta) eps^{-1} d_zeta, i.e. r d_r in the layer variable.
Series layer_r_dr(const Series& s);
// Multiplication by 1/r = sum_j (-eps zeta)^j.
Series layer_inverse_r(const Series& s);

// Field constant in zeta equal to the trace of an outer field at r = 1.
FourierField wall_trace(const PowerField& f, std::shared_ptr<const Grid1D> zeta_grid);

// Taylor expansion of an outer field about r = 1 in powers of eps zeta,
// placed at eps^{base + j}.
Series taylor_at_wall(const PowerField& f, int base, std::shared_ptr<const Grid1D> zeta_grid,
                      int lo, int hi);

// Everything known about the two-scale expansion when an order is collected.
// Index = power of eps; a null or empty entry is treated as zero.
struct ExpansionInputs {
  std::vector<const PowerField*> ue, ve;
  std::vector<FourierField> up, vp, pp;
};

// Coefficient of eps^k in the layer part of the theta and radial momentum
// operators (each multiplied by r) evaluated on the composite expansion.
FourierField collect_theta(int k, const ExpansionInputs& in, std::shared_ptr<const Grid1D> zeta_grid,
                           const ThetaGrid& tg);
FourierField collect_radial(int k, const ExpansionInputs& in, std::shared_ptr<const Grid1D> zeta_grid,
                            const ThetaGrid& tg);

}  // namespace discflow
