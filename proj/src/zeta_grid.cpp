#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "discflow/errors.hpp"
#include "discflow/grids.hpp"

namespace discflow {

std::vector<double> matvec(const std::vector<double>& a, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> y(a.size() / n, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double* row = a.data() + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

std::shared_ptr<const ZetaGrid> ZetaGrid::chebyshev(int N, double z_max) {
  if (N < 8) throw Error(ErrorKind::Precondition, "zeta grid needs at least 8 nodes");
  if (!(z_max > 0)) throw Error(ErrorKind::Precondition, "zeta truncation must be positive");
  std::shared_ptr<ZetaGrid> g(new ZetaGrid());
  const int n = N - 1;
  const double pi = std::numbers::pi;
  std::vector<double> ang(N);
  g->x_.resize(N);
  for (int j = 0; j < N; ++j) {
    ang[j] = pi * j / n;
    g->x_[j] = z_max * std::sin(0.5 * ang[j]) * std::sin(0.5 * ang[j]);
  }
  g->x_[0] = 0.0;
  g->x_[n] = z_max;

  // Differentiation in x, then scaled: zeta = Z (1 - x) / 2.
  std::vector<double> c(N, 1.0);
  c[0] = c[n] = 2.0;
  g->d1_.assign(static_cast<std::size_t>(N) * N, 0.0);
  const double scale = -2.0 / z_max;
  for (int i = 0; i < N; ++i) {
    double diag = 0.0;
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const double dx = -2.0 * std::sin(0.5 * (ang[i] + ang[j])) * std::sin(0.5 * (ang[i] - ang[j]));
      const double sgn = ((i + j) % 2) ? -1.0 : 1.0;
      const double v = scale * (c[i] / c[j]) * sgn / dx;
      g->d1_[static_cast<std::size_t>(i) * N + j] = v;
      diag -= v;
    }
    g->d1_[static_cast<std::size_t>(i) * N + i] = diag;
  }
  g->d2_.assign(g->d1_.size(), 0.0);
  for (int i = 0; i < N; ++i) {
    double diag = 0.0;
    for (int j = 0; j < N; ++j) {
      double acc = 0.0;
      for (int k = 0; k < N; ++k)
        acc += g->d1_[static_cast<std::size_t>(i) * N + k] * g->d1_[static_cast<std::size_t>(k) * N + j];
      g->d2_[static_cast<std::size_t>(i) * N + j] = acc;
      if (i != j) diag -= acc;
    }
    g->d2_[static_cast<std::size_t>(i) * N + i] = diag;
  }

  // Cumulative integration through the Chebyshev coefficients.
  g->q_.assign(static_cast<std::size_t>(N) * N, 0.0);
  std::vector<double> a(n + 2), b(n + 2);
  for (int col = 0; col < N; ++col) {
    const double wc = (col == 0 || col == n) ? 0.5 : 1.0;
    for (int k = 0; k <= n; ++k) {
      const double t = std::cos(pi * static_cast<double>((static_cast<long>(k) * col) % (2 * n)) / n);
      a[k] = wc * t * (k == 0 || k == n ? 1.0 : 2.0) / n;
    }
    a[n + 1] = 0.0;
    std::fill(b.begin(), b.end(), 0.0);
    b[1] = a[0] - 0.5 * a[2];
    for (int k = 2; k <= n; ++k) b[k] = (a[k - 1] - (k + 1 <= n ? a[k + 1] : 0.0)) / (2.0 * k);
    double b_np1 = a[n] / (2.0 * (n + 1));
    // F(x_j) - F(1) evaluated at every node; zeta-integral is (Z/2)(F(1) - F(x_j)).
    double f1 = b_np1;
    for (int k = 1; k <= n; ++k) f1 += b[k];
    for (int j = 0; j < N; ++j) {
      double fx = b_np1 * std::cos(pi * static_cast<double>((static_cast<long>(n + 1) * j) % (2 * n)) / n);
      for (int k = 1; k <= n; ++k)
        fx += b[k] * std::cos(pi * static_cast<double>((static_cast<long>(k) * j) % (2 * n)) / n);
      g->q_[static_cast<std::size_t>(j) * N + col] = 0.5 * z_max * (f1 - fx);
    }
  }
  for (int col = 0; col < N; ++col) g->q_[col] = 0.0;

  g->bw_.resize(N);
  for (int j = 0; j < N; ++j) g->bw_[j] = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
  return g;
}

std::vector<double> ZetaGrid::derivative(std::span<const double> f, int order) const {
  if (f.size() != size()) throw Error(ErrorKind::GridMismatch, "profile length differs from grid");
  std::vector<double> out(f.begin(), f.end());
  int left = order;
  while (left >= 2) {
    out = matvec(d2_, out);
    left -= 2;
  }
  if (left == 1) out = matvec(d1_, out);
  return out;
}

std::vector<double> ZetaGrid::cumulative(std::span<const double> f) const {
  if (f.size() != size()) throw Error(ErrorKind::GridMismatch, "profile length differs from grid");
  return matvec(q_, f);
}

std::vector<double> ZetaGrid::from_right(std::span<const double> f) const {
  auto c = cumulative(f);
  const double total = c.back();
  for (auto& v : c) v = total - v;
  return c;
}

std::vector<double> ZetaGrid::interpolation_matrix(std::span<const double> at) const {
  const std::size_t N = size();
  const double Z = z_max();
  std::vector<double> m(at.size() * N, 0.0);
  std::vector<double> xn(N);
  for (std::size_t j = 0; j < N; ++j) xn[j] = 1.0 - 2.0 * x_[j] / Z;
  for (std::size_t q = 0; q < at.size(); ++q) {
    const double z = at[q];
    if (z > Z) continue;
    if (z < 0) throw Error(ErrorKind::Precondition, "negative zeta requested");
    const double x = 1.0 - 2.0 * z / Z;
    double* row = m.data() + q * N;
    bool exact = false;
    for (std::size_t j = 0; j < N; ++j) {
      if (x == xn[j] || z == x_[j]) {
        row[j] = 1.0;
        exact = true;
        break;
      }
    }
    if (exact) continue;
    double denom = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      row[j] = bw_[j] / (x - xn[j]);
      denom += row[j];
    }
    for (std::size_t j = 0; j < N; ++j) row[j] /= denom;
  }
  return m;
}

std::vector<double> ZetaGrid::interpolate(std::span<const double> f, std::span<const double> at) const {
  if (f.size() != size()) throw Error(ErrorKind::GridMismatch, "profile length differs from grid");
  for (double z : at)
    if (z < 0 || z > z_max()) throw Error(ErrorKind::Precondition, "interpolation point outside [0, Z]");
  return matvec(interpolation_matrix(at), f);
}

std::string ZetaGrid::describe() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "chebyshev(n=%zu, Z=%.17g)", size(), z_max());
  return buf;
}

}  // namespace discflow
