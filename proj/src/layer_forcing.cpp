#include "discflow/errors.hpp"
#include "discflow/prandtl.hpp"

namespace discflow {

ExpansionInputs expansion_inputs(const std::vector<EulerOrder>& euler,
                                 const std::vector<BoundaryLayerOrder>& layers) {
  ExpansionInputs in;
  for (const auto& e : euler) {
    in.ue.push_back(&e.u);
    in.ve.push_back(&e.v);
  }
  in.up.resize(layers.size());
  in.vp.resize(layers.size() + 1);
  in.pp.resize(layers.size() + 1);
  for (std::size_t m = 0; m < layers.size(); ++m) {
    in.up[m] = layers[m].u_p;
    in.vp[m + 1] = layers[m].v_p_next;
    in.pp[m + 1] = layers[m].p_p_next;
  }
  return in;
}

LayerForcing assemble_forcing(int k, const std::vector<EulerOrder>& euler,
                              const std::vector<BoundaryLayerOrder>& layers, const LayerContext& ctx) {
  if (k < 1) throw Error(ErrorKind::Precondition, "forcing is defined for orders k >= 1");
  if (static_cast<int>(layers.size()) < k || static_cast<int>(euler.size()) < k + 1)
    throw Error(ErrorKind::Dependency, "forcing of order k needs layers 0..k-1 and Euler orders 0..k");
  const ThetaGrid& tg = *ctx.theta;
  const std::vector<EulerOrder> outer(euler.begin(), euler.begin() + k + 1);

  LayerForcing out;
  {
    const std::vector<BoundaryLayerOrder> lower(layers.begin(), layers.begin() + k);
    ExpansionInputs in = expansion_inputs(outer, lower);
    out.f = -1.0 * collect_theta(k, in, ctx.zeta, tg);
  }
  if (static_cast<int>(layers.size()) > k) {
    const std::vector<BoundaryLayerOrder> known(layers.begin(), layers.begin() + k + 1);
    ExpansionInputs in = expansion_inputs(outer, known);
    in.pp[k + 1] = FourierField();
    out.g = collect_radial(k, in, ctx.zeta, tg);
  }
  return out;
}

}  // namespace discflow
