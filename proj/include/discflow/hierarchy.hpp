#pragma once

#include <memory>
#include <vector>

#include "discflow/batchelor_wood.hpp"
#include "discflow/euler_hierarchy.hpp"
#include "discflow/prandtl.hpp"

namespace discflow {

// The epsilon-independent part of the construction: Euler orders 0..N+1 and
// layer orders 0..N+1, the last one being the lift patch.
struct Hierarchy {
  Params params;
  BWResult bw;
  FourierData wall_data;
  LayerContext ctx;
  std::vector<EulerOrder> euler;
  std::vector<BoundaryLayerOrder> layers;
  std::vector<double> compatibility;  // max_r |mean f_e^{(k)}|, k = 0..N+1
  std::vector<double> divergence;     // layer divergence relation per order

  int order() const { return params.order; }
  double tilde_omega() const { return bw.tilde_omega; }
};

Hierarchy build_hierarchy(const Params& p, std::shared_ptr<const ThetaGrid> theta, const LayerConfig& cfg);

}  // namespace discflow
