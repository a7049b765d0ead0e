#include <algorithm>
#include <array>
#include <cmath>

#include "discflow/error_solver.hpp"
#include "discflow/errors.hpp"

namespace discflow {

namespace {

constexpr std::array<double, 5> kX = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                      0.9061798459386640};
constexpr std::array<double, 5> kW = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                      0.4786286704993665, 0.2369268850561891};
constexpr double kPanel = 0.02;

template <class F>
double integrate(F&& g, double b) {
  const int panels = static_cast<int>(std::ceil(b / kPanel));
  const double h = b / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int q = 0; q < 5; ++q) acc += 0.5 * h * kW[q] * g(mid + 0.5 * h * kX[q]);
  }
  return acc;
}

}  // namespace

HardyCheck hardy_check(const TestFunction& t, std::optional<double> alpha, double tol) {
  const double S = t.s_max;
  const double f0 = t.f(0.0);
  const double fS = t.f(S);
  HardyCheck h;
  h.sample = t.name;
  h.weighted = alpha.has_value();
  if (!alpha) {
    if (std::abs(f0) > 1e-14) throw Error(ErrorKind::Precondition, "Hardy test function must vanish at s = 0", f0);
    if (fS * fS / S > 1e-14) throw Error(ErrorKind::Precondition, "test function violates f^2/s -> 0", fS);
    h.lhs = integrate([&](double s) { const double v = t.f(s) / s; return v * v; }, S);
    h.rhs = 4.0 * integrate([&](double s) { const double d = t.df(s); return d * d; }, S);
  } else {
    const double a = *alpha;
    if (a == 0.0) throw Error(ErrorKind::Precondition, "weighted Hardy form needs alpha != 0");
    if (a < 0.0 && std::abs(f0) > 1e-14)
      throw Error(ErrorKind::Precondition, "test function must vanish at s = 0 for alpha < 0", f0);
    if (fS * fS * std::exp(a * S) > 1e-14)
      throw Error(ErrorKind::Precondition, "test function violates e^{alpha s} f^2 -> 0", fS);
    h.alpha = a;
    h.lhs = integrate([&](double s) { const double v = t.f(s); return std::exp(a * s) * v * v; }, S);
    h.rhs = 4.0 / (a * a) * integrate([&](double s) { const double d = t.df(s); return std::exp(a * s) * d * d; }, S);
  }
  h.ratio = h.rhs > 0.0 ? h.lhs / h.rhs : (h.lhs > 0.0 ? INFINITY : 0.0);
  h.pass = h.ratio <= 1.0 + tol;
  return h;
}

}  // namespace discflow
