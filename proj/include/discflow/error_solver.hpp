#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discflow/assembly.hpp"
#include "discflow/banded.hpp"
#include "discflow/fourier_field.hpp"
#include "discflow/grids.hpp"

namespace discflow {

// Coefficients of the error system in (theta, s), s = ln r.  psi is
// Delta_s Phi^a = (e^s u^a)_s - (e^s v^a)_theta.
struct TransportCoefficients {
  double epsilon = 0.0;
  std::shared_ptr<const RadialGrid> grid;  // uniform in s
  FourierField u, v;                       // u^a, v^a
  FourierField u_s, v_s;
  FourierField psi, psi_s;
  FourierField r_omega;  // R_omega^a
  FourierField r_u;      // R_u^a (r-multiplied theta equation)
};

TransportCoefficients transport_coefficients(const ApproxSolution& a, const Residual& res,
                                             std::shared_ptr<const RadialGrid> s_grid,
                                             const ThetaGrid& tg);

struct ErrorState {
  FourierField phi;  // stream function, Phi_s = e^s u, Phi_theta = -e^s v
  FourierField u, v;
  FourierField psi;  // Delta_s Phi
  int iterations = 0;
  // Zero-mode equation residual of the velocity solved in the last step.
  double zero_mode_residual = 0.0;
};

// Error state with every component zero on the given grid.
ErrorState zero_state(std::shared_ptr<const RadialGrid> grid, int n_modes);
// u, v and psi recomputed from phi.
ErrorState state_from_phi(FourierField phi);

// The mode-diagonal part of the stream-function operator together with the
// zero-mode velocity operator, factored once per coefficient set.
class LinearOperator {
 public:
  explicit LinearOperator(const TransportCoefficients& c);

  int n_modes() const { return K_; }
  std::size_t size() const { return n_; }

  // rhs_stream: right-hand side of the fourth-order equation (all modes, the
  // zero mode is ignored); rhs_u0: right-hand side of the zero-mode equation.
  ErrorState solve(const FourierField& rhs_stream, std::span<const double> rhs_u0) const;

  // Discrete operator applied to a mode-k profile (k >= 1), boundary rows
  // included.
  std::vector<cplx> apply_mode(int k, std::span<const cplx> phi) const;
  std::vector<double> apply_zero_mode(std::span<const double> u0) const;
  // Row-major dense copy of the mode-k matrix (k = 0 is the zero-mode operator).
  std::vector<cplx> dense_matrix(int k) const;
  double rcond(int k) const { return ops_.at(k).rcond(); }

 private:
  struct Row {
    int start = 0;
    std::vector<cplx> w;
  };
  std::vector<Row> rows(int k) const;

  std::shared_ptr<const RadialGrid> grid_;
  int K_;
  std::size_t n_;
  std::vector<double> u0_, psi0_term_, visc_;
  std::vector<BandedComplex> ops_;
};

// Forcing of one Picard step, given the previous iterate.
struct StepForcing {
  FourierField stream;
  std::vector<double> u0;
};

StepForcing step_forcing(const TransportCoefficients& c, const ErrorState& prev, const ThetaGrid& tg);

ErrorState linear_step(const LinearOperator& op, const StepForcing& f);

struct NormComponent {
  std::string name;
  int eps_power = 0;
  double value = 0.0;     // squared L^2 norm over T x [0, S_max]
  double weighted = 0.0;  // eps^power * value
};

struct NormReport {
  std::vector<NormComponent> components;
  double total = 0.0;  // sum of weighted components, i.e. ||Phi||_E^2
  double norm() const;
};

NormReport energy_norm(const FourierField& phi, double epsilon);

struct PicardConfig {
  double tol = 1e-10;
  int max_iter = 50;
  double eps_max = 0.3;
  double delta_max = 0.2;
  bool throw_on_failure = true;
};

struct PicardHistory {
  std::vector<double> update;  // relative update in the energy norm
  std::vector<double> energy;  // ||Phi||_E after each step
  std::vector<double> ratio;   // successive update ratios
};

struct PicardResult {
  ErrorState state;
  PicardHistory history;
  bool converged = false;
  double divergence = 0.0;   // sup |u_theta + e^{-s} (e^s v)_s|
  double stream_consistency = 0.0;
  double zero_mode_residual = 0.0;
  // sup r^2 |R_omega| of apx + error, skipping four nodes at each end
  double full_vorticity_residual = 0.0;
  double approx_vorticity_residual = 0.0;  // same for apx alone
};

// Throws Error(Nonconvergence) carrying the history in the message when the
// iteration does not reach the tolerance (unless throw_on_failure is off).
PicardResult picard_solve(const ApproxSolution& a, const Residual& res, double delta,
                          std::shared_ptr<const RadialGrid> s_grid, const ThetaGrid& tg,
                          const PicardConfig& cfg = {});

// Approximate solution plus error on the radial grid.
struct FullSolution {
  FourierField u, v;
};
FullSolution full_solution(const ApproxSolution& a, const ErrorState& e);

// One-dimensional Hardy inequalities on [0, infinity).  With alpha unset the
// s^{-2} form is checked; otherwise the e^{alpha s} form.
struct HardyCheck {
  std::string sample;
  double alpha = 0.0;
  bool weighted = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

struct TestFunction {
  std::string name;
  std::function<double(double)> f, df;
  double s_max = 60.0;
};

HardyCheck hardy_check(const TestFunction& f, std::optional<double> alpha, double tol = 1e-8);

struct TheoremReport {
  double tilde_omega = 0.0;
  double c1 = 0.0;
  std::vector<double> radii;   // 2, 4, 8, 16
  std::vector<double> e_u_r2;  // r^2 e_u(r)
  std::vector<double> e_v_r2;
  double exponent_u = 0.0;     // fitted over r in [2, 16]
  double exponent_v = 0.0;
  double bound_constant = 0.0; // e_v(2) * 4 / (eps delta)
};

TheoremReport verify_theorem1(const FullSolution& s, const ApproxSolution& a, double tilde_omega,
                              double delta, const ThetaGrid& tg);

// Least-squares slope of log y against log x.
double fit_exponent(std::span<const double> x, std::span<const double> y);

}  // namespace discflow
