#include "discflow/power_field.hpp"

#include <algorithm>
#include <cmath>

#include "discflow/errors.hpp"

namespace discflow {

PowerField::PowerField(int n_modes) : K_(n_modes), a_(n_modes + 1), b_(n_modes + 1) {}

void PowerField::add_term(std::vector<Terms>& t, int k, int m, double c) {
  if (c == 0.0 || k > K_) return;
  double& slot = t[k][m];
  slot += c;
  if (slot == 0.0) t[k].erase(m);
}

void PowerField::add_cos(int k, int m, double c) { add_term(a_, std::abs(k), m, c); }

void PowerField::add_sin(int k, int m, double c) {
  if (k == 0) return;
  if (k < 0) {
    k = -k;
    c = -c;
  }
  add_term(b_, k, m, c);
}

PowerField& PowerField::operator+=(const PowerField& o) {
  if (o.K_ != K_) throw Error(ErrorKind::GridMismatch, "power fields with different truncations");
  for (int k = 0; k <= K_; ++k) {
    for (auto [m, c] : o.a_[k]) add_cos(k, m, c);
    for (auto [m, c] : o.b_[k]) add_sin(k, m, c);
  }
  return *this;
}

PowerField& PowerField::operator-=(const PowerField& o) {
  PowerField neg = o;
  neg *= -1.0;
  return *this += neg;
}

PowerField& PowerField::operator*=(double c) {
  if (c == 0.0) {
    for (auto& t : a_) t.clear();
    for (auto& t : b_) t.clear();
    return *this;
  }
  for (auto& t : a_)
    for (auto& [m, v] : t) v *= c;
  for (auto& t : b_)
    for (auto& [m, v] : t) v *= c;
  return *this;
}

PowerField PowerField::d_theta() const {
  PowerField out(K_);
  for (int k = 1; k <= K_; ++k) {
    for (auto [m, c] : a_[k]) out.add_sin(k, m, -k * c);
    for (auto [m, c] : b_[k]) out.add_cos(k, m, k * c);
  }
  return out;
}

PowerField PowerField::d_r() const {
  PowerField out(K_);
  for (int k = 0; k <= K_; ++k) {
    for (auto [m, c] : a_[k]) out.add_cos(k, m + 1, -m * c);
    for (auto [m, c] : b_[k]) out.add_sin(k, m + 1, -m * c);
  }
  return out;
}

PowerField PowerField::times_r_power(int j) const {
  PowerField out(K_);
  for (int k = 0; k <= K_; ++k) {
    for (auto [m, c] : a_[k]) out.add_cos(k, m - j, c);
    for (auto [m, c] : b_[k]) out.add_sin(k, m - j, c);
  }
  return out;
}

PowerField PowerField::zero_mode() const {
  PowerField out(K_);
  out.a_[0] = a_[0];
  return out;
}

PowerField PowerField::nonzero_modes() const {
  PowerField out = *this;
  out.a_[0].clear();
  return out;
}

PowerField PowerField::theta_antiderivative() const {
  PowerField out(K_);
  for (int k = 1; k <= K_; ++k) {
    for (auto [m, c] : a_[k]) out.add_sin(k, m, c / k);
    for (auto [m, c] : b_[k]) out.add_cos(k, m, -c / k);
  }
  return out;
}

double PowerField::cos_at(int k, double r) const {
  double v = 0.0;
  for (auto [m, c] : a_.at(k)) v += c * std::pow(r, -m);
  return v;
}

double PowerField::sin_at(int k, double r) const {
  double v = 0.0;
  for (auto [m, c] : b_.at(k)) v += c * std::pow(r, -m);
  return v;
}

double PowerField::value(double theta, double r) const {
  double v = 0.0;
  for (int k = 0; k <= K_; ++k) v += cos_at(k, r) * std::cos(k * theta) + sin_at(k, r) * std::sin(k * theta);
  return v;
}

FourierField PowerField::sample(std::shared_ptr<const Grid1D> grid, const std::vector<double>& r) const {
  FourierField out(std::move(grid), K_);
  if (r.size() != out.n_points()) throw Error(ErrorKind::GridMismatch, "radius list does not match grid");
  for (int k = 0; k <= K_; ++k) {
    auto A = out.a(k), B = out.b(k);
    for (std::size_t i = 0; i < r.size(); ++i) {
      A[i] = cos_at(k, r[i]);
      B[i] = sin_at(k, r[i]);
    }
  }
  return out;
}

double PowerField::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : a_)
    for (auto [e, c] : t) m = std::max(m, std::abs(c));
  for (const auto& t : b_)
    for (auto [e, c] : t) m = std::max(m, std::abs(c));
  return m;
}

int PowerField::min_exponent() const {
  int e = 1 << 20;
  for (const auto& t : a_)
    if (!t.empty()) e = std::min(e, t.begin()->first);
  for (const auto& t : b_)
    if (!t.empty()) e = std::min(e, t.begin()->first);
  return e;
}

PowerField operator+(PowerField x, const PowerField& y) { return x += y; }
PowerField operator-(PowerField x, const PowerField& y) { return x -= y; }
PowerField operator*(double c, PowerField x) { return x *= c; }

PowerField product(const PowerField& f, const PowerField& g) {
  const int K = f.n_modes();
  PowerField out(K);
  for (int k1 = 0; k1 <= K; ++k1) {
    for (int k2 = 0; k2 <= K; ++k2) {
      const auto& fa = f.cos_terms(k1);
      const auto& fb = f.sin_terms(k1);
      const auto& ga = g.cos_terms(k2);
      const auto& gb = g.sin_terms(k2);
      for (auto [m1, c1] : fa) {
        for (auto [m2, c2] : ga) {
          out.add_cos(k1 - k2, m1 + m2, 0.5 * c1 * c2);
          out.add_cos(k1 + k2, m1 + m2, 0.5 * c1 * c2);
        }
        for (auto [m2, c2] : gb) {
          out.add_sin(k1 + k2, m1 + m2, 0.5 * c1 * c2);
          out.add_sin(k1 - k2, m1 + m2, -0.5 * c1 * c2);
        }
      }
      for (auto [m1, c1] : fb) {
        for (auto [m2, c2] : ga) {
          out.add_sin(k1 + k2, m1 + m2, 0.5 * c1 * c2);
          out.add_sin(k1 - k2, m1 + m2, 0.5 * c1 * c2);
        }
        for (auto [m2, c2] : gb) {
          out.add_cos(k1 - k2, m1 + m2, 0.5 * c1 * c2);
          out.add_cos(k1 + k2, m1 + m2, -0.5 * c1 * c2);
        }
      }
    }
  }
  return out;
}

PowerField laplacian(const PowerField& f) {
  PowerField fr = f.d_r();
  return fr.d_r() + fr.times_r_power(-1) + f.d_theta().d_theta().times_r_power(-2);
}

PowerField integrate_r_inverse_from_infinity(const PowerField& g) {
  PowerField out(g.n_modes());
  for (auto [m, c] : g.cos_terms(0)) {
    if (m <= 0) throw Error(ErrorKind::TailIntegration, "radial profile does not decay");
    out.add_cos(0, m, -c / m);
  }
  if (!g.nonzero_modes().is_zero())
    throw Error(ErrorKind::Precondition, "radial integration expects a theta-independent profile");
  return out;
}

}  // namespace discflow
