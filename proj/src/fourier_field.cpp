#include "discflow/fourier_field.hpp"

#include <algorithm>
#include <cmath>

#include "discflow/errors.hpp"

namespace discflow {

FourierField::FourierField(std::shared_ptr<const Grid1D> grid, int n_modes)
    : grid_(std::move(grid)), K_(n_modes), n_(grid_ ? grid_->size() : 0) {
  if (!grid_) throw Error(ErrorKind::Precondition, "field needs a grid");
  a_.assign(static_cast<std::size_t>(K_ + 1) * n_, 0.0);
  b_.assign(a_.size(), 0.0);
}

std::vector<std::complex<double>> FourierField::mode(int k) const {
  std::vector<std::complex<double>> z(n_);
  auto A = a(k), B = b(k);
  for (std::size_t i = 0; i < n_; ++i) z[i] = {A[i], -B[i]};
  return z;
}

void FourierField::set_mode(int k, std::span<const std::complex<double>> z) {
  auto A = a(k), B = b(k);
  for (std::size_t i = 0; i < n_; ++i) {
    A[i] = z[i].real();
    B[i] = k == 0 ? 0.0 : -z[i].imag();
  }
}

double FourierField::value(double theta, std::size_t i) const {
  double v = 0.0;
  for (int k = 0; k <= K_; ++k) v += a(k)[i] * std::cos(k * theta) + b(k)[i] * std::sin(k * theta);
  return v;
}

FourierField FourierField::zero_mode() const { return single_mode(0); }

FourierField FourierField::single_mode(int k) const {
  FourierField out(grid_, K_);
  std::copy(a(k).begin(), a(k).end(), out.a(k).begin());
  std::copy(b(k).begin(), b(k).end(), out.b(k).begin());
  return out;
}

FourierField FourierField::nonzero_modes() const {
  FourierField out = *this;
  std::fill(out.a(0).begin(), out.a(0).end(), 0.0);
  return out;
}

FourierField FourierField::high_modes() const {
  FourierField out = nonzero_modes();
  if (K_ >= 1) {
    std::fill(out.a(1).begin(), out.a(1).end(), 0.0);
    std::fill(out.b(1).begin(), out.b(1).end(), 0.0);
  }
  return out;
}

void FourierField::check_compatible(const FourierField& o) const {
  if (grid_ != o.grid_ && (!grid_ || !o.grid_ || grid_->nodes() != o.grid_->nodes()))
    throw Error(ErrorKind::GridMismatch, "fields live on different grids");
  if (K_ != o.K_) throw Error(ErrorKind::GridMismatch, "fields have different Fourier truncations");
}

FourierField& FourierField::operator+=(const FourierField& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] += o.a_[i];
    b_[i] += o.b_[i];
  }
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] -= o.a_[i];
    b_[i] -= o.b_[i];
  }
  return *this;
}

FourierField& FourierField::operator*=(double c) {
  for (auto& v : a_) v *= c;
  for (auto& v : b_) v *= c;
  return *this;
}

FourierField& FourierField::scale_radial(std::span<const double> w) {
  if (w.size() != n_) throw Error(ErrorKind::GridMismatch, "radial weight length differs from grid");
  for (int k = 0; k <= K_; ++k) {
    auto A = a(k), B = b(k);
    for (std::size_t i = 0; i < n_; ++i) {
      A[i] *= w[i];
      B[i] *= w[i];
    }
  }
  return *this;
}

double FourierField::max_coefficient() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  for (double v : b_) m = std::max(m, std::abs(v));
  return m;
}

FourierField operator+(FourierField x, const FourierField& y) { return x += y; }
FourierField operator-(FourierField x, const FourierField& y) { return x -= y; }
FourierField operator*(double c, FourierField x) { return x *= c; }

std::vector<double> to_nodal(const FourierField& f, const ThetaGrid& tg, bool padded) {
  if (f.n_modes() > tg.n_modes())
    throw Error(ErrorKind::GridMismatch, "field has more modes than the theta grid");
  const int M = padded ? tg.n_padded() : tg.n_nodes();
  const int Kt = tg.n_modes();
  const auto& ct = tg.cos_table(padded);
  const auto& st = tg.sin_table(padded);
  const std::size_t n = f.n_points();
  std::vector<double> out(static_cast<std::size_t>(M) * n, 0.0);
  for (int j = 0; j < M; ++j) {
    double* row = out.data() + static_cast<std::size_t>(j) * n;
    for (int k = 0; k <= f.n_modes(); ++k) {
      const double c = ct[static_cast<std::size_t>(j) * (Kt + 1) + k];
      const double s = st[static_cast<std::size_t>(j) * (Kt + 1) + k];
      auto A = f.a(k), B = f.b(k);
      for (std::size_t i = 0; i < n; ++i) row[i] += A[i] * c + B[i] * s;
    }
  }
  return out;
}

FourierField from_nodal(std::span<const double> values, std::shared_ptr<const Grid1D> grid,
                        const ThetaGrid& tg, bool padded) {
  const int M = padded ? tg.n_padded() : tg.n_nodes();
  const int K = tg.n_modes();
  const std::size_t n = grid->size();
  if (values.size() != static_cast<std::size_t>(M) * n)
    throw Error(ErrorKind::GridMismatch, "nodal array does not match grids");
  const auto& ct = tg.cos_table(padded);
  const auto& st = tg.sin_table(padded);
  FourierField f(std::move(grid), K);
  for (int k = 0; k <= K; ++k) {
    auto A = f.a(k), B = f.b(k);
    const double wk = (k == 0 || 2 * k == M) ? 1.0 / M : 2.0 / M;
    for (int j = 0; j < M; ++j) {
      const double c = wk * ct[static_cast<std::size_t>(j) * (K + 1) + k];
      const double s = wk * st[static_cast<std::size_t>(j) * (K + 1) + k];
      const double* row = values.data() + static_cast<std::size_t>(j) * n;
      for (std::size_t i = 0; i < n; ++i) {
        A[i] += c * row[i];
        if (k > 0) B[i] += s * row[i];
      }
    }
  }
  return f;
}

FourierField multiply(const FourierField& f, const FourierField& g, const ThetaGrid& tg) {
  f.check_compatible(g);
  auto fv = to_nodal(f, tg, true);
  auto gv = to_nodal(g, tg, true);
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] *= gv[i];
  auto out = from_nodal(fv, f.grid_ptr(), tg, true);
  if (out.n_modes() != f.n_modes()) {
    FourierField t(f.grid_ptr(), f.n_modes());
    for (int k = 0; k <= f.n_modes(); ++k) {
      std::copy(out.a(k).begin(), out.a(k).end(), t.a(k).begin());
      std::copy(out.b(k).begin(), out.b(k).end(), t.b(k).begin());
    }
    return t;
  }
  return out;
}

std::vector<double> sup_theta(const FourierField& f, const ThetaGrid& tg) {
  auto v = to_nodal(f, tg);
  const std::size_t n = f.n_points();
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < tg.n_nodes(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      out[i] = std::max(out[i], std::abs(v[static_cast<std::size_t>(j) * n + i]));
  return out;
}

double sup_norm(const FourierField& f, const ThetaGrid& tg) {
  auto s = sup_theta(f, tg);
  return s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
}

}  // namespace discflow
