#include <cmath>

#include "discflow/assembly.hpp"
#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

namespace {

constexpr int kN = CutoffChi::kMaxDerivative + 1;
using Taylor = std::array<double, kN>;  // Taylor coefficients in t = r - r0

Taylor div(const Taylor& a, const Taylor& b) {
  Taylor c{};
  for (int n = 0; n < kN; ++n) {
    double s = a[n];
    for (int j = 1; j <= n; ++j) s -= b[j] * c[n - j];
    c[n] = s / b[0];
  }
  return c;
}

Taylor exp_of(const Taylor& a) {
  Taylor c{};
  c[0] = std::exp(a[0]);
  for (int n = 1; n < kN; ++n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += j * a[j] * c[n - j];
    c[n] = s / n;
  }
  return c;
}

// psi(x0 + sign * t) with psi(x) = exp(-1/x) for x > 0.
Taylor psi(double x0, double sign) {
  Taylor c{};
  if (x0 <= 0.0) return c;
  Taylor inv{};
  for (int n = 0; n < kN; ++n) inv[n] = -std::pow(-sign, n) / std::pow(x0, n + 1);
  return exp_of(inv);
}

}  // namespace

std::array<double, CutoffChi::kMaxDerivative + 1> CutoffChi::jet(double r) const {
  std::array<double, kN> out{};
  if (r <= 2.0) {
    out[0] = 1.0;
    return out;
  }
  if (r >= 3.0) return out;
  const Taylor a = psi(3.0 - r, -1.0);
  const Taylor b = psi(r - 2.0, 1.0);
  Taylor den{};
  for (int n = 0; n < kN; ++n) den[n] = a[n] + b[n];
  const Taylor c = div(a, den);
  double fact = 1.0;
  for (int n = 0; n < kN; ++n) {
    if (n > 0) fact *= n;
    out[n] = c[n] * fact;
  }
  return out;
}

CutoffChi build_chi() { return CutoffChi{}; }

JetField JetField::zeros(std::shared_ptr<const Grid1D> grid, int n_modes, int order) {
  std::vector<FourierField> d;
  for (int j = 0; j <= order; ++j) d.emplace_back(grid, n_modes);
  return JetField(std::move(d));
}

JetField& JetField::operator+=(const JetField& o) {
  const int m = std::min(order(), o.order());
  d_.resize(m + 1);
  for (int j = 0; j <= m; ++j) d_[j] += o.d_[j];
  return *this;
}

JetField& JetField::operator-=(const JetField& o) {
  const int m = std::min(order(), o.order());
  d_.resize(m + 1);
  for (int j = 0; j <= m; ++j) d_[j] -= o.d_[j];
  return *this;
}

JetField& JetField::operator*=(double c) {
  for (auto& f : d_) f *= c;
  return *this;
}

JetField JetField::d_theta(int order) const {
  std::vector<FourierField> d;
  for (const auto& f : d_) d.push_back(differentiate(f, Derivative::Theta, order));
  return JetField(std::move(d));
}

JetField JetField::d_r() const {
  if (d_.size() < 2) throw Error(ErrorKind::Precondition, "jet has no derivative left");
  return JetField(std::vector<FourierField>(d_.begin() + 1, d_.end()));
}

JetField JetField::truncated(int order) const {
  return JetField(std::vector<FourierField>(d_.begin(), d_.begin() + std::min<int>(order + 1, d_.size())));
}

JetField JetField::scale(const std::vector<std::vector<double>>& radial) const {
  const int m = std::min<int>(order(), static_cast<int>(radial.size()) - 1);
  std::vector<FourierField> d;
  for (int j = 0; j <= m; ++j) {
    FourierField acc(d_[0].grid_ptr(), d_[0].n_modes());
    double binom = 1.0;
    for (int i = 0; i <= j; ++i) {
      if (i > 0) binom = binom * (j - i + 1) / i;
      FourierField t = d_[j - i];
      t.scale_radial(radial[i]);
      acc += binom * t;
    }
    d.push_back(std::move(acc));
  }
  return JetField(std::move(d));
}

JetField operator+(JetField a, const JetField& b) { return a += b; }
JetField operator-(JetField a, const JetField& b) { return a -= b; }
JetField operator*(double c, JetField a) { return a *= c; }

JetField multiply(const JetField& a, const JetField& b, const ThetaGrid& tg) {
  const int m = std::min(a.order(), b.order());
  std::vector<FourierField> d;
  for (int j = 0; j <= m; ++j) {
    FourierField acc(a[0].grid_ptr(), a[0].n_modes());
    double binom = 1.0;
    for (int i = 0; i <= j; ++i) {
      if (i > 0) binom = binom * (j - i + 1) / i;
      acc += binom * multiply(a[i], b[j - i], tg);
    }
    d.push_back(std::move(acc));
  }
  return JetField(std::move(d));
}

std::vector<std::vector<double>> radial_power(const RadialGrid& g, int p, int order) {
  std::vector<std::vector<double>> out(order + 1, std::vector<double>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.r()[i];
    double coef = 1.0;
    for (int j = 0; j <= order; ++j) {
      out[j][i] = coef * std::pow(r, p - j);
      coef *= (p - j);
    }
  }
  return out;
}

JetField sample_jet(const PowerField& f, std::shared_ptr<const RadialGrid> grid, int order) {
  std::vector<FourierField> d;
  PowerField cur = f;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) cur = cur.d_r();
    d.push_back(cur.sample(grid, grid->r()));
  }
  return JetField(std::move(d));
}

}  // namespace discflow
