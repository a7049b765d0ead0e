#pragma once

#include <vector>

#include "discflow/banded.hpp"
#include "discflow/prandtl.hpp"

namespace discflow {

enum class FarCondition { Dirichlet, Neumann };

// Per-mode inverse of i k w - d_zeta^2 on the Chebyshev grid with a wall value
// at zeta = 0 and a Dirichlet or Neumann condition at Z.
class ModeSolver {
 public:
  ModeSolver(const LayerContext& ctx, FarCondition far);
  // Boundary rows of rhs are overwritten by the wall data (zero if null) and 0.
  FourierField solve(const FourierField& rhs, const FourierData* wall) const;

 private:
  const LayerContext& ctx_;
  FarCondition far_;
  std::vector<DenseComplexLU> lu_;
};

double relative_change(const FourierField& next, const FourierField& prev);
FourierField zeta_cumulative(const FourierField& f);
// Copy with the two boundary rows zeroed.
FourierField interior_residual_field(FourierField f);

}  // namespace discflow
