#pragma once

#include <vector>

namespace discflow {

// Uniform periodic nodes theta_j = 2 pi j / M together with the trig tables
// used to move between nodal values and cos/sin coefficients.  A second,
// padded node set (at least 3K+2 nodes) is kept for dealiased products.
class ThetaGrid {
 public:
  explicit ThetaGrid(int n_modes = 16, int n_nodes = 0);

  int n_modes() const { return K_; }
  int n_nodes() const { return M_; }
  int n_padded() const { return Mp_; }
  double node(int j) const;

  // Tables are stored row-major as [node][mode].
  const std::vector<double>& cos_table(bool padded) const { return padded ? cosp_ : cos_; }
  const std::vector<double>& sin_table(bool padded) const { return padded ? sinp_ : sin_; }

 private:
  int K_;
  int M_;
  int Mp_;
  std::vector<double> cos_, sin_, cosp_, sinp_;
};

}  // namespace discflow
