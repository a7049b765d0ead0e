#include <algorithm>
#include <cmath>
#include <cstdio>

#include "discflow/errors.hpp"
#include "discflow/grids.hpp"

namespace discflow {

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

constexpr int kCumPoints = 8;

// Five-point Gauss-Legendre on [0, 1].
struct Gauss5 {
  double x[5], w[5];
  Gauss5() {
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    const double t[5] = {-b, -a, 0.0, a, b};
    const double v[5] = {wb, wa, 128.0 / 225.0, wa, wb};
    for (int i = 0; i < 5; ++i) {
      x[i] = 0.5 * (1.0 + t[i]);
      w[i] = 0.5 * v[i];
    }
  }
};
const Gauss5 kGauss;

double lagrange(std::span<const double> x, int l, double t) {
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (static_cast<int>(j) != l) v *= (t - x[j]) / (x[l] - x[j]);
  return v;
}

int window_start(int i, int n, int width) {
  return std::clamp(i - (width / 2 - 1), 0, n - width);
}

}  // namespace

std::shared_ptr<const RadialGrid> RadialGrid::geometric(int n, double r_max, RadialCoordinate kind) {
  if (n < 16) throw Error(ErrorKind::Precondition, "radial grid needs at least 16 nodes");
  if (!(r_max > 1.0)) throw Error(ErrorKind::Precondition, "R_max must exceed 1");
  std::shared_ptr<RadialGrid> g(new RadialGrid());
  g->kind_ = kind;
  const double smax = std::log(r_max);
  g->h_ = smax / (n - 1);
  g->x_.resize(n);
  g->r_.resize(n);
  for (int i = 0; i < n; ++i) {
    g->x_[i] = i == n - 1 ? smax : i * g->h_;
    g->r_[i] = i == 0 ? 1.0 : std::exp(g->x_[i]);
  }
  g->r_[n - 1] = r_max;

  g->stencils_.resize(4);
  for (int m = 1; m <= 4; ++m) {
    const int w_in = (m % 2) ? m + 4 : m + 3;
    const int w_b = m + 4;
    const int half = w_in / 2;
    auto& rows = g->stencils_[m - 1];
    rows.resize(n);
    for (int i = 0; i < n; ++i) {
      int start, width;
      if (i - half >= 0 && i + half <= n - 1) {
        start = i - half;
        width = w_in;
      } else {
        width = w_b;
        start = i - half < 0 ? 0 : n - w_b;
      }
      std::span<const double> xs(g->x_.data() + start, width);
      auto w = fd_weights(g->x_[i], xs, m);
      rows[i].start = start;
      rows[i].weights = w[m];
    }
  }

  g->cum_weights_.resize(n - 1);
  g->cum_start_.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const int j0 = window_start(i, n, kCumPoints);
    std::span<const double> xs(g->x_.data() + j0, kCumPoints);
    std::vector<double> w(kCumPoints, 0.0);
    const double a = g->x_[i], b = g->x_[i + 1];
    for (int q = 0; q < 5; ++q) {
      const double t = a + (b - a) * kGauss.x[q];
      for (int l = 0; l < kCumPoints; ++l) w[l] += (b - a) * kGauss.w[q] * lagrange(xs, l, t);
    }
    g->cum_weights_[i] = std::move(w);
    g->cum_start_[i] = j0;
  }
  return g;
}

const Stencil& RadialGrid::stencil(int order, std::size_t i) const {
  return stencils_.at(order - 1).at(i);
}

std::vector<double> RadialGrid::derivative(std::span<const double> f, int order) const {
  if (f.size() != size()) throw Error(ErrorKind::GridMismatch, "profile length differs from grid");
  if (order == 0) return {f.begin(), f.end()};
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const Stencil& st = stencils_.at(order - 1)[i];
    double acc = 0.0;
    for (std::size_t l = 0; l < st.weights.size(); ++l) acc += st.weights[l] * f[st.start + l];
    out[i] = acc;
  }
  return out;
}

std::vector<double> RadialGrid::d_dr(std::span<const double> f) const {
  auto fs = derivative(f, 1);
  for (std::size_t i = 0; i < size(); ++i) fs[i] /= r_[i];
  return fs;
}

std::vector<double> RadialGrid::d2_dr2(std::span<const double> f) const {
  auto fs = derivative(f, 1);
  auto fss = derivative(f, 2);
  for (std::size_t i = 0; i < size(); ++i) fss[i] = (fss[i] - fs[i]) / (r_[i] * r_[i]);
  return fss;
}

std::vector<double> RadialGrid::cumulative(std::span<const double> f) const {
  if (f.size() != size()) throw Error(ErrorKind::GridMismatch, "profile length differs from grid");
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i + 1 < size(); ++i) {
    const auto& w = cum_weights_[i];
    const int j0 = cum_start_[i];
    double acc = 0.0;
    for (int l = 0; l < kCumPoints; ++l) acc += w[l] * f[j0 + l];
    out[i + 1] = out[i] + acc;
  }
  return out;
}

std::vector<double> RadialGrid::cumulative_r(std::span<const double> f) const {
  std::vector<double> g(f.begin(), f.end());
  for (std::size_t i = 0; i < size(); ++i) g[i] *= r_[i];
  return cumulative(g);
}

std::vector<double> RadialGrid::tail_integral_r(std::span<const double> f) const {
  auto c = cumulative_r(f);
  const std::size_t n = size();
  const double R = r_.back();
  double fmax = 0.0;
  for (double v : f) fmax = std::max(fmax, std::abs(v));

  std::size_t first = n - 1;
  while (first > 0 && r_[first - 1] >= R / 10.0) --first;
  double tail_max = 0.0;
  for (std::size_t i = first; i < n; ++i) tail_max = std::max(tail_max, std::abs(f[i]));

  double tail = 0.0;
  if (fmax > 0.0 && tail_max > 1e-14 * fmax) {
    const double sign = f[n - 1] >= 0 ? 1.0 : -1.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = first; i < n; ++i) {
      if (f[i] * sign <= 0.0)
        throw Error(ErrorKind::TailIntegration, "integrand changes sign in the last decade");
      const double lx = x_[i], ly = std::log(std::abs(f[i]));
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
      ++cnt;
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    const double logc = (sy - slope * sx) / cnt;
    const double p = -slope;
    if (p < 1.5) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "fitted tail decay r^-%.3g is too slow", p);
      throw Error(ErrorKind::TailIntegration, buf, p);
    }
    tail = sign * std::exp(logc) * std::pow(R, 1.0 - p) / (p - 1.0);
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (c[n - 1] - c[i]) + tail;
  return out;
}

std::vector<double> RadialGrid::interpolate(std::span<const double> f,
                                            std::span<const double> at) const {
  if (f.size() != size()) throw Error(ErrorKind::GridMismatch, "profile length differs from grid");
  const int n = static_cast<int>(size());
  std::vector<double> out(at.size());
  for (std::size_t q = 0; q < at.size(); ++q) {
    const double t = at[q];
    if (t < -1e-12 || t > x_.back() + 1e-12)
      throw Error(ErrorKind::Precondition, "interpolation point outside the radial grid");
    int i = std::clamp(static_cast<int>(t / h_), 0, n - 2);
    const int j0 = window_start(i, n, kCumPoints);
    std::span<const double> xs(x_.data() + j0, kCumPoints);
    double acc = 0.0;
    for (int l = 0; l < kCumPoints; ++l) acc += f[j0 + l] * lagrange(xs, l, t);
    out[q] = acc;
  }
  return out;
}

std::string RadialGrid::describe() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "geometric(n=%zu, R_max=%.17g, coordinate=%s)", size(), r_.back(),
                kind_ == RadialCoordinate::Radius ? "r" : "s");
  return buf;
}

}  // namespace discflow
