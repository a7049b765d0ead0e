#include "discflow/error_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

namespace {

constexpr int kBand = 8;

bool same_nodes(const Grid1D& a, const Grid1D& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.nodes()[i] - b.nodes()[i]) > 1e-13) return false;
  return true;
}

// Same coefficients on another radial grid (interpolating in s when the nodes differ).
FourierField resample(const FourierField& f, std::shared_ptr<const RadialGrid> to) {
  FourierField out(to, f.n_modes());
  const bool same = same_nodes(f.grid(), *to);
  for (int k = 0; k <= f.n_modes(); ++k) {
    auto put = [&](std::span<const double> src, std::span<double> dst) {
      if (same) {
        std::copy(src.begin(), src.end(), dst.begin());
      } else {
        auto v = f.grid().interpolate(src, to->s());
        std::copy(v.begin(), v.end(), dst.begin());
      }
    };
    put(f.a(k), out.a(k));
    if (k > 0) put(f.b(k), out.b(k));
  }
  return out;
}

std::vector<double> exp_s(const RadialGrid& g, double p) {
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::exp(p * g.s()[i]);
  return w;
}

FourierField scaled(FourierField f, const std::vector<double>& w) {
  f.scale_radial(w);
  return f;
}

FourierField d_s(const FourierField& f, int order = 1) { return differentiate(f, Derivative::Native, order); }
FourierField d_t(const FourierField& f, int order = 1) { return differentiate(f, Derivative::Theta, order); }

// Sparse row accumulator.
struct RowBuilder {
  std::map<int, cplx> w;
  void add_stencil(const Stencil& st, cplx c) {
    for (std::size_t l = 0; l < st.weights.size(); ++l) w[st.start + static_cast<int>(l)] += c * st.weights[l];
  }
  void add(int j, cplx c) { w[j] += c; }
};

}  // namespace

TransportCoefficients transport_coefficients(const ApproxSolution& a, const Residual& res,
                                             std::shared_ptr<const RadialGrid> s_grid, const ThetaGrid& tg) {
  (void)tg;
  const RadialGrid& g = *a.grid;
  std::vector<double> r(g.r().begin(), g.r().end());

  const FourierField& u = a.u[0];
  const FourierField& v = a.v[0];
  // q = u + r u_r - v_theta, psi = r q.
  FourierField ru_r = scaled(a.u[1], r);
  FourierField q = u + ru_r - d_t(v);
  FourierField q_r = 2.0 * a.u[1] + scaled(a.u[2], r) - d_t(a.v[1]);
  FourierField psi = scaled(q, r);
  FourierField psi_s = scaled(q + scaled(q_r, r), r);

  TransportCoefficients c;
  c.epsilon = a.epsilon;
  c.grid = s_grid;
  c.u = resample(u, s_grid);
  c.v = resample(v, s_grid);
  c.u_s = resample(ru_r, s_grid);
  c.v_s = resample(scaled(a.v[1], r), s_grid);
  c.psi = resample(psi, s_grid);
  c.psi_s = resample(psi_s, s_grid);
  c.r_omega = resample(res.omega, s_grid);
  c.r_u = resample(res.ru.value(), s_grid);
  return c;
}

ErrorState zero_state(std::shared_ptr<const RadialGrid> grid, int n_modes) {
  ErrorState e;
  e.phi = FourierField(grid, n_modes);
  e.u = e.phi;
  e.v = e.phi;
  e.psi = e.phi;
  return e;
}

ErrorState state_from_phi(FourierField phi) {
  const RadialGrid& g = radial_grid_of(phi);
  const auto em = exp_s(g, -1.0);
  ErrorState e;
  e.u = scaled(d_s(phi), em);
  e.v = -1.0 * scaled(d_t(phi), em);
  e.psi = d_s(phi, 2) + d_t(phi, 2);
  e.phi = std::move(phi);
  return e;
}

LinearOperator::LinearOperator(const TransportCoefficients& c)
    : grid_(c.grid), K_(c.u.n_modes()), n_(c.grid->size()) {
  const RadialGrid& g = *grid_;
  const double nu = c.epsilon * c.epsilon;
  u0_.resize(n_);
  psi0_term_.resize(n_);
  visc_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double em = std::exp(-g.s()[i]);
    visc_[i] = nu * em;
    u0_[i] = c.u.a(0)[i];
    psi0_term_[i] = em * (c.psi_s.a(0)[i] - 2.0 * c.psi.a(0)[i]);
  }
  ops_.reserve(K_ + 1);
  for (int k = 0; k <= K_; ++k) {
    BandedComplex m(static_cast<int>(n_), kBand, kBand);
    int i = 0;
    for (const Row& row : rows(k)) {
      for (std::size_t l = 0; l < row.w.size(); ++l) m.at(i, row.start + static_cast<int>(l)) = row.w[l];
      ++i;
    }
    m.factor();
    ops_.push_back(std::move(m));
  }
}

std::vector<LinearOperator::Row> LinearOperator::rows(int k) const {
  const RadialGrid& g = *grid_;
  const int n = static_cast<int>(n_);
  std::vector<Row> out(n);
  const double kk = k;
  const cplx ik(0.0, kk);
  for (int i = 0; i < n; ++i) {
    RowBuilder b;
    if (k == 0) {
      if (i == 0) {
        b.add(0, 1.0);
      } else if (i == n - 1) {
        b.add_stencil(g.stencil(1, i), 1.0);
        b.add(i, 1.0);
      } else {
        b.add_stencil(g.stencil(2, i), visc_[i]);
        b.add(i, -visc_[i]);
      }
    } else if (i == 0) {
      b.add(0, 1.0);
    } else if (i == 1) {
      b.add_stencil(g.stencil(1, 0), 1.0);
    } else if (i == n - 2) {
      b.add_stencil(g.stencil(1, n - 1), 1.0);
      b.add(n - 1, kk);
    } else if (i == n - 1) {
      b.add_stencil(g.stencil(2, n - 1), 1.0);
      b.add(n - 1, -kk * kk);
    } else {
      const double nu = visc_[i];
      const double k2 = kk * kk;
      b.add_stencil(g.stencil(4, i), nu);
      b.add_stencil(g.stencil(3, i), -4.0 * nu);
      b.add_stencil(g.stencil(2, i), nu * (4.0 - 2.0 * k2) - ik * u0_[i]);
      b.add_stencil(g.stencil(1, i), 4.0 * nu * k2);
      b.add(i, nu * (k2 * k2 - 4.0 * k2) + ik * u0_[i] * k2 + ik * psi0_term_[i]);
    }
    Row& row = out[i];
    row.start = b.w.begin()->first;
    row.w.assign(b.w.rbegin()->first - row.start + 1, 0.0);
    for (const auto& [j, v] : b.w) row.w[j - row.start] = v;
  }
  return out;
}

std::vector<cplx> LinearOperator::apply_mode(int k, std::span<const cplx> phi) const {
  if (k < 1 || k > K_) throw Error(ErrorKind::Precondition, "mode index outside 1..K");
  std::vector<cplx> out(n_);
  const auto rs = rows(k);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t l = 0; l < rs[i].w.size(); ++l) out[i] += rs[i].w[l] * phi[rs[i].start + l];
  return out;
}

std::vector<double> LinearOperator::apply_zero_mode(std::span<const double> u0) const {
  std::vector<double> out(n_);
  const auto rs = rows(0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t l = 0; l < rs[i].w.size(); ++l) acc += rs[i].w[l].real() * u0[rs[i].start + l];
    out[i] = acc;
  }
  return out;
}

std::vector<cplx> LinearOperator::dense_matrix(int k) const {
  std::vector<cplx> m(n_ * n_);
  const auto rs = rows(k);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t l = 0; l < rs[i].w.size(); ++l) m[i * n_ + rs[i].start + l] = rs[i].w[l];
  return m;
}

ErrorState LinearOperator::solve(const FourierField& rhs_stream, std::span<const double> rhs_u0) const {
  const int n = static_cast<int>(n_);
  FourierField phi(grid_, K_);
  for (int k = 1; k <= K_; ++k) {
    std::vector<cplx> b = rhs_stream.mode(k);
    b[0] = b[1] = b[n - 2] = b[n - 1] = 0.0;
    phi.set_mode(k, ops_[k].solve(std::move(b)));
  }
  std::vector<cplx> b0(rhs_u0.begin(), rhs_u0.end());
  b0[0] = b0[n - 1] = 0.0;
  const auto u0c = ops_[0].solve(b0);
  std::vector<double> u0(n_), g(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    u0[i] = u0c[i].real();
    g[i] = std::exp(grid_->s()[i]) * u0[i];
  }
  const auto phi0 = grid_->cumulative(g);
  std::copy(phi0.begin(), phi0.end(), phi.a(0).begin());

  ErrorState e = state_from_phi(std::move(phi));
  const auto lhs = apply_zero_mode(u0);
  for (int i = 1; i + 1 < n; ++i)
    e.zero_mode_residual = std::max(e.zero_mode_residual, std::abs(lhs[i] - b0[i].real()));
  return e;
}

StepForcing step_forcing(const TransportCoefficients& c, const ErrorState& prev, const ThetaGrid& tg) {
  const RadialGrid& g = *c.grid;
  const auto e2 = exp_s(g, 2.0);
  const FourierField& u = prev.u;
  const FourierField& v = prev.v;

  // Vorticity form: everything except the mode-diagonal transport by the
  // zero modes of u^a and of the coefficient of v.
  FourierField psi_t = d_t(prev.psi);
  FourierField psi_s2 = d_s(prev.psi) - 2.0 * prev.psi;
  FourierField coef_v = c.psi_s - 2.0 * c.psi;
  FourierField stream = multiply(c.u.nonzero_modes() + u, psi_t, tg) + multiply(c.v + v, psi_s2, tg) +
                        multiply(u, d_t(c.psi), tg) + multiply(v, coef_v.nonzero_modes(), tg) -
                        scaled(c.r_omega, e2);

  // Zero mode of the theta momentum convection.
  FourierField u_t = d_t(u), u_s = d_s(u);
  FourierField ut = c.u + u;
  FourierField conv = multiply(c.u, u_t, tg) + multiply(u, d_t(c.u), tg) + multiply(u, u_t, tg) +
                      multiply(c.v, u_s, tg) + multiply(v, c.u_s, tg) + multiply(v, u_s, tg) +
                      multiply(ut, v, tg) + multiply(u, c.v, tg);
  StepForcing f;
  f.stream = std::move(stream);
  f.u0.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f.u0[i] = conv.a(0)[i] + c.r_u.a(0)[i];
  return f;
}

ErrorState linear_step(const LinearOperator& op, const StepForcing& f) { return op.solve(f.stream, f.u0); }

FullSolution full_solution(const ApproxSolution& a, const ErrorState& e) {
  FullSolution s;
  s.u = a.u.value() + resample(e.u, a.grid);
  s.v = a.v.value() + resample(e.v, a.grid);
  return s;
}

namespace {

// Jet in r of an s-grid field: f, f_r, f_rr, f_rrr.
JetField r_jet(const FourierField& f, std::shared_ptr<const RadialGrid> target) {
  const RadialGrid& g = radial_grid_of(f);
  const FourierField f1 = d_s(f), f2 = d_s(f, 2), f3 = d_s(f, 3);
  std::vector<FourierField> d;
  d.push_back(f);
  d.push_back(scaled(f1, exp_s(g, -1.0)));
  d.push_back(scaled(f2 - f1, exp_s(g, -2.0)));
  d.push_back(scaled(f3 - 3.0 * f2 + 2.0 * f1, exp_s(g, -3.0)));
  for (auto& x : d) x = resample(x, target);
  return JetField(std::move(d));
}

// sup r^2 |f| away from the boundary rows of the discrete problem.
double weighted_sup(const FourierField& f, const ThetaGrid& tg) {
  constexpr std::size_t kSkip = 4;
  const RadialGrid& g = radial_grid_of(f);
  const auto s = sup_theta(f, tg);
  double m = 0.0;
  for (std::size_t i = kSkip; i + kSkip < g.size(); ++i) m = std::max(m, g.r()[i] * g.r()[i] * s[i]);
  return m;
}

std::string history_text(const PicardHistory& h) {
  std::string out;
  char buf[32];
  for (double x : h.update) {
    std::snprintf(buf, sizeof buf, "%s%.3e", out.empty() ? "" : ",", x);
    out += buf;
  }
  return out;
}

}  // namespace

PicardResult picard_solve(const ApproxSolution& a, const Residual& res, double delta,
                          std::shared_ptr<const RadialGrid> s_grid, const ThetaGrid& tg,
                          const PicardConfig& cfg) {
  if (a.epsilon > cfg.eps_max) throw Error(ErrorKind::InvalidRegime, "epsilon exceeds eps_max", a.epsilon);
  if (std::abs(delta) > cfg.delta_max) throw Error(ErrorKind::InvalidRegime, "delta exceeds delta_max", delta);

  const TransportCoefficients c = transport_coefficients(a, res, s_grid, tg);
  const LinearOperator op(c);
  const int K = a.u.value().n_modes();

  PicardResult out;
  ErrorState state = zero_state(s_grid, K);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    ErrorState next = linear_step(op, step_forcing(c, state, tg));
    next.iterations = it;
    const double upd = energy_norm(next.phi - state.phi, a.epsilon).norm();
    const double size = energy_norm(next.phi, a.epsilon).norm();
    const double rel = size > 0.0 ? upd / size : 0.0;
    auto& h = out.history;
    if (!h.update.empty()) h.ratio.push_back(h.update.back() > 0.0 ? rel / h.update.back() : 0.0);
    h.update.push_back(rel);
    h.energy.push_back(size);
    state = std::move(next);
    if (!std::isfinite(rel)) break;
    if (rel < cfg.tol) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged && cfg.throw_on_failure)
    throw Error(ErrorKind::Nonconvergence, "Picard iteration did not converge; updates " + history_text(out.history),
                out.history.update.empty() ? 0.0 : out.history.update.back());

  // Diagnostics on the final iterate.
  const RadialGrid& g = *s_grid;
  const auto ep = exp_s(g, 1.0);
  out.divergence = sup_norm(d_t(state.u) + scaled(d_s(scaled(state.v, ep)), exp_s(g, -1.0)), tg);
  out.stream_consistency = sup_norm(d_s(state.phi) - scaled(state.u, ep), tg) +
                           sup_norm(d_t(state.phi) + scaled(state.v, ep), tg);
  out.zero_mode_residual = state.zero_mode_residual;

  const JetField eu = r_jet(state.u, a.grid), ev = r_jet(state.v, a.grid);
  const JetField p0 = JetField::zeros(a.grid, K, 3);
  const Residual full = momentum_residual(a.u + eu, a.v + ev, p0, a.epsilon, tg);
  out.full_vorticity_residual = weighted_sup(full.omega, tg);
  out.approx_vorticity_residual = weighted_sup(res.omega, tg);
  out.state = std::move(state);
  return out;
}

}  // namespace discflow
