#include <cmath>

#include "discflow/assembly.hpp"
#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

namespace {

constexpr int kJetOrder = 3;

// Values of a zeta-grid field and its r-derivatives at r = 1 + eps zeta.
JetField layer_jet(const FourierField& f, const std::vector<double>& interp, double eps,
                   std::shared_ptr<const RadialGrid> grid) {
  std::vector<FourierField> d;
  FourierField cur = f;
  double scale = 1.0;
  for (int j = 0; j <= kJetOrder; ++j) {
    if (j > 0) {
      cur = differentiate(cur, Derivative::Native);
      scale /= eps;
    }
    FourierField out(grid, f.n_modes());
    for (int k = 0; k <= f.n_modes(); ++k) {
      auto a = matvec(interp, cur.a(k));
      for (std::size_t i = 0; i < a.size(); ++i) out.a(k)[i] = scale * a[i];
      if (k > 0) {
        auto b = matvec(interp, cur.b(k));
        for (std::size_t i = 0; i < b.size(); ++i) out.b(k)[i] = scale * b[i];
      }
    }
    d.push_back(std::move(out));
  }
  return JetField(std::move(d));
}

std::vector<std::vector<double>> chi_derivatives(const RadialGrid& g, int first, int order) {
  const CutoffChi chi = build_chi();
  std::vector<std::vector<double>> out(order + 1, std::vector<double>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto jet = chi.jet(g.r()[i]);
    for (int j = 0; j <= order; ++j) out[j][i] = jet[first + j];
  }
  return out;
}

std::vector<std::vector<double>> square(const std::vector<std::vector<double>>& c) {
  std::vector<std::vector<double>> out(c.size(), std::vector<double>(c[0].size(), 0.0));
  for (std::size_t j = 0; j < c.size(); ++j) {
    double binom = 1.0;
    for (std::size_t i = 0; i <= j; ++i) {
      if (i > 0) binom = binom * (j - i + 1) / i;
      for (std::size_t n = 0; n < c[0].size(); ++n) out[j][n] += binom * c[i][n] * c[j - i][n];
    }
  }
  return out;
}

}  // namespace

FourierField divergence_corrector(const FourierField& K, double tol) {
  const double mean = K.zero_mode().max_coefficient();
  if (mean > tol) throw Error(ErrorKind::CorrectorInfeasible, "divergence defect has nonzero theta mean", mean);
  return theta_antiderivative(K);
}

FourierField divergence(const ApproxSolution& a) {
  const JetField rv = a.v.scale(radial_power(*a.grid, 1, 1));
  return differentiate(a.u.value(), Derivative::Theta) + rv[1];
}

ApproxSolution assemble(const Hierarchy& h, double eps, std::shared_ptr<const RadialGrid> grid) {
  if (!(eps > 0.0)) throw Error(ErrorKind::Precondition, "epsilon must be positive");
  const int N = h.order();
  if (static_cast<int>(h.euler.size()) != N + 2 || static_cast<int>(h.layers.size()) != N + 2)
    throw Error(ErrorKind::Dependency, "hierarchy does not contain orders 0..N+1");
  const int K = h.ctx.n_modes;
  const RadialGrid& g = *grid;

  ApproxSolution a;
  a.epsilon = eps;
  a.order = N;
  a.grid = grid;

  PowerField ue(K), ve(K), pe(K);
  double ek = 1.0;
  for (int k = 0; k <= N + 1; ++k, ek *= eps) {
    ue += ek * h.euler[k].u;
    ve += ek * h.euler[k].v;
    pe += ek * h.euler[k].p;
  }
  const JetField ue_j = sample_jet(ue, grid, kJetOrder);
  const JetField ve_j = sample_jet(ve, grid, kJetOrder);
  const JetField pe_j = sample_jet(pe, grid, kJetOrder);

  FourierField U = h.ctx.zeros(), W = h.ctx.zeros(), P = h.ctx.zeros();
  ek = 1.0;
  for (int k = 0; k <= N + 1; ++k, ek *= eps) {
    U += ek * h.layers[k].u_p;
    W += ek * h.layers[k].w;
    if (k >= 1 && !h.layers[k - 1].p_p_next.empty()) P += ek * h.layers[k - 1].p_p_next;
  }
  std::vector<double> zeta(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) zeta[i] = (g.r()[i] - 1.0) / eps;
  const auto interp = h.ctx.zeta->interpolation_matrix(zeta);
  const JetField U_j = layer_jet(U, interp, eps, grid);
  const JetField W_j = layer_jet(W, interp, eps, grid);
  const JetField P_j = layer_jet(P, interp, eps, grid);

  const auto chi = chi_derivatives(g, 0, kJetOrder);
  const auto dchi = chi_derivatives(g, 1, kJetOrder);
  const auto inv_r = radial_power(g, -1, kJetOrder);

  const JetField up_j = U_j.scale(chi);
  a.u_p0 = layer_jet(h.layers[0].u_p, interp, eps, grid).scale(chi).value();
  const JetField vp_j = (eps * W_j).scale(inv_r).scale(chi);
  const JetField pp_j = P_j.scale(square(chi));
  // r chi' V_P = eps chi' W.
  const JetField defect = (eps * W_j).scale(dchi);
  std::vector<FourierField> corr;
  a.corrector_mean = 0.0;
  for (int j = 0; j <= kJetOrder; ++j) {
    a.corrector_mean = std::max(a.corrector_mean, defect[j].zero_mode().max_coefficient());
    corr.push_back(-1.0 * divergence_corrector(defect[j]));
  }
  const JetField corr_j(std::move(corr));

  a.u = ue_j + up_j + corr_j;
  a.v = ve_j + vp_j;
  a.p = pe_j + pp_j;
  a.u_e = ue_j.value();
  a.v_e = ve_j.value();
  a.p_e = pe_j.value();
  a.u_p = up_j.value();
  a.v_p = vp_j.value();
  a.p_p = pp_j.value();
  a.h = std::pow(eps, -N) * corr_j.value();

  const ThetaGrid& tg = *h.ctx.theta;
  a.divergence_after = sup_norm(divergence(a), tg);
  ApproxSolution before = a;
  before.u = ue_j + up_j;
  a.divergence_before = sup_norm(divergence(before), tg);
  return a;
}

}  // namespace discflow
