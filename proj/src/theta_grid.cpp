#include "discflow/theta_grid.hpp"

#include <cmath>
#include <numbers>

#include "discflow/errors.hpp"

namespace discflow {

namespace {

void fill_tables(int K, int M, std::vector<double>& c, std::vector<double>& s) {
  c.assign(static_cast<std::size_t>(M) * (K + 1), 0.0);
  s.assign(c.size(), 0.0);
  for (int j = 0; j < M; ++j) {
    for (int k = 0; k <= K; ++k) {
      // Reduce k*j modulo M first so large products keep full accuracy.
      const double arg = 2.0 * std::numbers::pi * static_cast<double>((k * j) % M) / M;
      c[static_cast<std::size_t>(j) * (K + 1) + k] = std::cos(arg);
      s[static_cast<std::size_t>(j) * (K + 1) + k] = std::sin(arg);
    }
  }
}

}  // namespace

ThetaGrid::ThetaGrid(int n_modes, int n_nodes) : K_(n_modes) {
  if (K_ < 0) throw Error(ErrorKind::Precondition, "negative Fourier truncation");
  M_ = n_nodes > 0 ? n_nodes : 3 * K_ > 2 * K_ + 2 ? 3 * K_ : 2 * K_ + 2;
  if (M_ < 2 * K_ + 2) throw Error(ErrorKind::Precondition, "theta grid needs M >= 2K+2");
  Mp_ = (3 * M_) / 2;
  if (Mp_ < 3 * K_ + 2) Mp_ = 3 * K_ + 2;
  if (Mp_ % 2) ++Mp_;
  fill_tables(K_, M_, cos_, sin_);
  fill_tables(K_, Mp_, cosp_, sinp_);
}

double ThetaGrid::node(int j) const { return 2.0 * std::numbers::pi * j / M_; }

}  // namespace discflow
