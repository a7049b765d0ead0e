#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "discflow/fourier_field.hpp"
#include "discflow/grids.hpp"
#include "discflow/theta_grid.hpp"

namespace testing {

using discflow::FourierField;

// Field whose cos/sin coefficient of mode k at coordinate x is prof(k, is_sin, x).
inline FourierField sample(std::shared_ptr<const discflow::Grid1D> grid, int K,
                           const std::function<double(int, bool, double)>& prof) {
  FourierField f(grid, K);
  const auto& x = grid->nodes();
  for (int k = 0; k <= K; ++k)
    for (std::size_t i = 0; i < x.size(); ++i) {
      f.a(k)[i] = prof(k, false, x[i]);
      if (k > 0) f.b(k)[i] = prof(k, true, x[i]);
    }
  return f;
}

// Same, with the profile given as a function of r on a radial grid.
inline FourierField sample_r(std::shared_ptr<const discflow::RadialGrid> grid, int K,
                             const std::function<double(int, bool, double)>& prof) {
  FourierField f(grid, K);
  for (int k = 0; k <= K; ++k)
    for (std::size_t i = 0; i < grid->size(); ++i) {
      f.a(k)[i] = prof(k, false, grid->r()[i]);
      if (k > 0) f.b(k)[i] = prof(k, true, grid->r()[i]);
    }
  return f;
}

inline double max_coeff_diff(const FourierField& x, const FourierField& y) {
  double m = 0.0;
  for (int k = 0; k <= x.n_modes(); ++k)
    for (std::size_t i = 0; i < x.n_points(); ++i) {
      m = std::max(m, std::abs(x.a(k)[i] - y.a(k)[i]));
      m = std::max(m, std::abs(x.b(k)[i] - y.b(k)[i]));
    }
  return m;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace testing
