#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace discflow {

// A one-dimensional node set with calculus in its native coordinate.
class Grid1D {
 public:
  virtual ~Grid1D() = default;

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& nodes() const { return x_; }

  virtual std::vector<double> derivative(std::span<const double> f, int order) const = 0;
  // Running integral from the first node, in the native coordinate.
  virtual std::vector<double> cumulative(std::span<const double> f) const = 0;
  virtual std::vector<double> interpolate(std::span<const double> f,
                                          std::span<const double> at) const = 0;
  virtual std::string describe() const = 0;

  // Integral over the whole grid.
  double integrate(std::span<const double> f) const { return cumulative(f).back(); }

 protected:
  std::vector<double> x_;
};

enum class RadialCoordinate { Radius, Log };

struct Stencil {
  int start = 0;
  std::vector<double> weights;
};

// Geometric radial grid: uniform in s = ln r on [0, ln R_max], so r_0 = 1 and
// s_0 = 0 exactly.  Native calculus is in s; r-derivatives use r d/dr = d/ds.
class RadialGrid : public Grid1D {
 public:
  static std::shared_ptr<const RadialGrid> geometric(int n, double r_max,
                                                     RadialCoordinate kind = RadialCoordinate::Radius);

  RadialCoordinate kind() const { return kind_; }
  const std::vector<double>& s() const { return x_; }
  const std::vector<double>& r() const { return r_; }
  double step() const { return h_; }
  double r_max() const { return r_.back(); }

  // Finite-difference rows in s, order 1..4, at least fourth-order accurate.
  const Stencil& stencil(int order, std::size_t i) const;

  std::vector<double> derivative(std::span<const double> f, int order) const override;
  std::vector<double> d_dr(std::span<const double> f) const;
  std::vector<double> d2_dr2(std::span<const double> f) const;

  std::vector<double> cumulative(std::span<const double> f) const override;
  // Running integral in r from r = 1: int_1^{r_i} f dr.
  std::vector<double> cumulative_r(std::span<const double> f) const;
  // int_{r_i}^{infinity} f dr, with the part beyond R_max taken from a
  // power-law fit over the last decade of the grid.
  std::vector<double> tail_integral_r(std::span<const double> f) const;

  std::vector<double> interpolate(std::span<const double> f,
                                  std::span<const double> at) const override;
  std::string describe() const override;

 private:
  RadialGrid() = default;
  std::vector<double> r_;
  double h_ = 0;
  RadialCoordinate kind_ = RadialCoordinate::Radius;
  std::vector<std::vector<Stencil>> stencils_;   // [order-1][node]
  std::vector<std::vector<double>> cum_weights_; // per interval, 8 weights
  std::vector<int> cum_start_;
};

// Chebyshev-Lobatto nodes on [0, Z], first node exactly 0.
class ZetaGrid : public Grid1D {
 public:
  static std::shared_ptr<const ZetaGrid> chebyshev(int n, double z_max);

  double z_max() const { return x_.back(); }
  // Dense differentiation matrices, row-major n x n.
  const std::vector<double>& d1() const { return d1_; }
  const std::vector<double>& d2() const { return d2_; }
  const std::vector<double>& integration_matrix() const { return q_; }

  std::vector<double> derivative(std::span<const double> f, int order) const override;
  std::vector<double> cumulative(std::span<const double> f) const override;
  // int_{zeta_i}^{Z} f
  std::vector<double> from_right(std::span<const double> f) const;
  std::vector<double> interpolate(std::span<const double> f,
                                  std::span<const double> at) const override;
  // Row-major matrix mapping nodal values to values at the given points;
  // points beyond Z are mapped to zero rows.
  std::vector<double> interpolation_matrix(std::span<const double> at) const;
  std::string describe() const override;

 private:
  ZetaGrid() = default;
  std::vector<double> d1_, d2_, q_, bw_;
};

// Apply a dense row-major n x n matrix.
std::vector<double> matvec(const std::vector<double>& a, std::span<const double> x);

// Finite-difference weights (Fornberg) for derivatives 0..m at z from nodes x.
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int m);

}  // namespace discflow
